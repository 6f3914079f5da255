//! Moving between configurations and tape windows of booleans.

use super::basic::{booltype_pow, slist_cast, slist_concat, slist_head, slist_tail};
use super::step::step_p_core;
use super::{out_of_range, plain_component, tower, EncResult};
use crate::logic::plain::{compose_componentwise, make_componentwise, tensor_unpack};
use crate::logic::term::{use_proof, var, Term};
use crate::logic::{Formula, Proof};
use crate::machine::TuringMachine;

/// `ₛlist_{A^{k^{j+2}}} ⊢ ₛbool_A` with `k = s + 1`, reading digit `j` from the right.
pub fn read_proof(j: usize, s: usize, a: &Formula) -> EncResult {
    let k = s + 1;
    let input = Formula::slist_type(s, &tower(a, k, j + 2));
    let mut t = var("S");
    for i in 0..j {
        // the i-th tail lands on A^{k^{j+1-i}}
        t = use_proof(&slist_tail(s, &tower(a, k, j + 1 - i))?, vec![t]);
    }
    t = use_proof(&slist_head(s, &tower(a, k, 1))?, vec![t]);
    t = use_proof(&booltype_pow(s, k, a)?, vec![t]);
    Ok(crate::logic::term::compile(&[("S".to_string(), input)], &t)?)
}

/// `ₛbool_{A^{k^r}} ⊢ ₛbool_A` as a chain of base changes, applied to `t`.
fn lower(t: Term, n: usize, k: usize, r: usize, a: &Formula) -> Result<Term, super::EncodingError> {
    let mut t = t;
    for i in (0..r).rev() {
        t = use_proof(&booltype_pow(n, k, &tower(a, k, i))?, vec![t]);
    }
    Ok(t)
}

/// Digit `j` (from the right) of a list over `A^{k^{e+1}}`, as a boolean over `A`.
fn digit_at(j: usize, e: usize, s: usize, list: Term, a: &Formula) -> Result<Term, super::EncodingError> {
    let k = s + 1;
    let r = e - 1 - j;
    let read = read_proof(j, s, &tower(a, k, r))?;
    lower(use_proof(&read, vec![list]), s, k, r, a)
}

/// `!ₛlist_{A^{k^{a+1}}} ⊢ (!ₛbool_A)^{⊗a}`, the last `a` digits in tape order.
pub fn multiread_proof(count: usize, s: usize, a: &Formula) -> EncResult {
    if count == 0 {
        return Err(out_of_range("multiread needs at least one digit"));
    }
    let k = s + 1;
    let base = Formula::slist_type(s, &tower(a, k, count + 1));
    let mut comps = Vec::with_capacity(count);
    for j in (0..count).rev() {
        let t = digit_at(j, count, s, var("S"), a)?;
        comps.push(plain_component(std::slice::from_ref(&base), &[(0, "S".to_string())], &t)?);
    }
    Ok(make_componentwise(&comps, &[Formula::bang(&base)])?)
}

/// Component-wise plain unpacking with hypotheses `!ₛlist, !ₛlist, !ₙbool`
/// over `A^{k^{e+1}}`, `e = max(c, d)`, giving `x₁ … x_c, y₁ … y_d, q`.
pub fn unpack_core(c: usize, d: usize, m: &TuringMachine, a: &Formula) -> EncResult {
    if c == 0 || d == 0 {
        return Err(out_of_range("window sizes must be positive"));
    }
    let (s, n) = (m.alphabet(), m.states());
    let k = s + 1;
    let e = c.max(d);
    let b = tower(a, k, e + 1);
    let bases = vec![Formula::slist_type(s, &b), Formula::slist_type(s, &b), Formula::nbool_type(n, &b)];
    let mut comps = Vec::with_capacity(c + d + 1);
    for j in (0..c).rev() {
        let t = digit_at(j, e, s, var("S"), a)?;
        comps.push(plain_component(&bases, &[(0, "S".to_string())], &t)?);
    }
    // the right tape is stored reversed, so y₁ is its last digit
    for j in 0..d {
        let t = digit_at(j, e, s, var("T"), a)?;
        comps.push(plain_component(&bases, &[(1, "T".to_string())], &t)?);
    }
    let t = lower(var("q"), n, k, e + 1, a)?;
    comps.push(plain_component(&bases, &[(2, "q".to_string())], &t)?);
    let hyps: Vec<Formula> = bases.iter().map(Formula::bang).collect();
    Ok(make_componentwise(&comps, &hyps)?)
}

/// `Tur_{A^{k^{e+1}}} ⊢ (!ₛbool_A)^{⊗c} ⊗ (!ₛbool_A)^{⊗d} ⊗ !ₙbool_A`.
pub fn unpack_proof(c: usize, d: usize, m: &TuringMachine, a: &Formula) -> EncResult {
    Ok(tensor_unpack(&unpack_core(c, d, m, a)?)?)
}

fn concat_all(s: usize, items: Vec<Term>, a: &Formula) -> Result<Term, super::EncodingError> {
    let concat = slist_concat(s, a)?;
    let mut it = items.into_iter();
    let first = it.next().ok_or_else(|| out_of_range("nothing to concatenate"))?;
    Ok(it.fold(first, |acc, t| use_proof(&concat, vec![acc, t])))
}

/// `a !ₛbool_A, b !ₛbool_A, !ₙbool_A ⊢ Tur_A`.
pub fn pack_proof(na: usize, nb: usize, m: &TuringMachine, a: &Formula) -> EncResult {
    if na == 0 || nb == 0 {
        return Err(out_of_range("window sizes must be positive"));
    }
    let (s, n) = (m.alphabet(), m.states());
    let sb = Formula::nbool_type(s, a);
    let mut bases: Vec<Formula> = vec![sb; na + nb];
    bases.push(Formula::nbool_type(n, a));
    let cast = slist_cast(s, a)?;
    let xs: Vec<(usize, String)> = (0..na).map(|i| (i, format!("x{i}"))).collect();
    let ys: Vec<(usize, String)> = (0..nb).map(|i| (na + i, format!("y{i}"))).collect();
    let left = concat_all(s, xs.iter().map(|(_, v)| use_proof(&cast, vec![var(v)])).collect(), a)?;
    let right = concat_all(s, ys.iter().rev().map(|(_, v)| use_proof(&cast, vec![var(v)])).collect(), a)?;
    let comps = [
        plain_component(&bases, &xs, &left)?,
        plain_component(&bases, &ys, &right)?,
        plain_component(&bases, &[(na + nb, "q".to_string())], &var("q"))?,
    ];
    let hyps: Vec<Formula> = bases.iter().map(Formula::bang).collect();
    Ok(make_componentwise(&comps, &hyps)?)
}

/// `Γ^{a,b}_{A^{k^{p+e+1}}} ⊢ X^{c,d}_A`: pack, run `p` steps, unpack.
/// With `p = 0` this reads the packed window straight back.
pub fn boolstep_proof(na: usize, nb: usize, c: usize, d: usize, p: usize, m: &TuringMachine, a: &Formula) -> EncResult {
    let k = m.alphabet() + 1;
    let e = c.max(d);
    let pack = pack_proof(na, nb, m, &tower(a, k, p + e + 1))?;
    let unpack = unpack_core(c, d, m, a)?;
    if p == 0 {
        return Ok(compose_componentwise(&unpack, &pack)?);
    }
    let steps = step_p_core(m, p, &tower(a, k, e + 1))?;
    let run: Proof = compose_componentwise(&steps, &pack)?;
    Ok(compose_componentwise(&unpack, &run)?)
}
