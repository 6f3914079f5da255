//! Booleans, integers, s-lists and the small combinators built on them.

use super::{out_of_range, EncResult, EncodingError};
use crate::logic::term::{app, apps, compile, compile_closed, der, lam, prom, proj, tuple, use_proof, var, Term};
use crate::logic::Formula;
use crate::machine::TuringMachine;

pub(crate) fn endo_bang(a: &Formula) -> Formula {
    Formula::bang(&Formula::endo(a))
}

fn digit_names(s: usize) -> Vec<String> {
    (0..s).map(|i| format!("f{i}")).collect()
}

/// `λ f₀ … fₛ₋₁ x. body` over `!(A ⊸ A)` arguments and `x : A`.
fn slist_lam(s: usize, a: &Formula, body: Term) -> Term {
    let be = endo_bang(a);
    let inner = lam("x", a, body);
    digit_names(s).iter().rev().fold(inner, |acc, f| lam(f, &be, acc))
}

fn digit_vars(s: usize) -> Vec<Term> {
    digit_names(s).iter().map(|f| var(f)).collect()
}

/// Applies the digits of `w` to `t`, first digit innermost.
pub(crate) fn word_term(w: &[usize], t: Term) -> Term {
    w.iter().fold(t, |acc, d| app(der(var(&format!("f{d}"))), acc))
}

/// `i̲ : ⊢ ₙbool_A`, the projection onto component `i`.
pub fn nbool_proof(i: usize, n: usize, a: &Formula) -> EncResult {
    if i >= n {
        return Err(out_of_range(format!("boolean {i} of {n}")));
    }
    Ok(compile_closed(&lam("y", &Formula::power(a, n), proj(i, n, var("y"))))?)
}

pub fn bool_proof(i: usize, a: &Formula) -> EncResult {
    nbool_proof(i, 2, a)
}

/// `m̲ : ⊢ int_A`.
pub fn int_proof(m: usize, a: &Formula) -> EncResult {
    let body = (0..m).fold(var("x"), |acc, _| app(der(var("f")), acc));
    Ok(compile_closed(&lam("f", &endo_bang(a), lam("x", a, body)))?)
}

/// The s-list of a digit string.
pub fn slist_proof(s: usize, digits: &[usize], a: &Formula) -> EncResult {
    if let Some(d) = digits.iter().find(|&&d| d >= s) {
        return Err(out_of_range(format!("digit {d} in a {s}-list")));
    }
    Ok(compile_closed(&slist_lam(s, a, word_term(digits, var("x"))))?)
}

pub fn bint_proof(digits: &[usize], a: &Formula) -> EncResult {
    slist_proof(2, digits, a)
}

/// `head : ₛlist_{A^{s+1}} ⊢ ₛbool_A`, returning the last digit (blank when empty).
pub fn slist_head(s: usize, a: &Formula) -> EncResult {
    let k = s + 1;
    let b = Formula::power(a, k);
    let pis: Vec<Term> = (0..s)
        .map(|i| {
            let mut parts: Vec<Term> = (0..s).map(|j| proj(j, k, var("w"))).collect();
            parts.push(proj(i, k, var("w")));
            prom(lam("w", &b, tuple(parts)))
        })
        .collect();
    let phi = apps(var("S"), pis);
    let mut rho: Vec<Term> = (0..s).map(|j| proj(j, s, var("y"))).collect();
    rho.push(proj(0, s, var("y")));
    let t = lam("y", &Formula::power(a, s), proj(s, k, app(phi, tuple(rho))));
    Ok(compile(&[("S".to_string(), Formula::slist_type(s, &b))], &t)?)
}

pub fn head_proof(a: &Formula) -> EncResult {
    slist_head(2, a)
}

/// `tail : ₛlist_{A^{s+1}} ⊢ ₛlist_A`, dropping the last digit.
pub fn slist_tail(s: usize, a: &Formula) -> EncResult {
    let k = s + 1;
    let b = Formula::power(a, k);
    let rhos: Vec<Term> = (0..s)
        .map(|i| {
            let last = || proj(s, k, var("w"));
            let mut parts: Vec<Term> = (0..s).map(|_| last()).collect();
            parts.push(app(der(var(&format!("f{i}"))), last()));
            prom(lam("w", &b, tuple(parts)))
        })
        .collect();
    let mut args = rhos;
    args.push(tuple((0..k).map(|_| var("x")).collect()));
    let body = proj(0, k, apps(var("S"), args));
    Ok(compile(&[("S".to_string(), Formula::slist_type(s, &b))], &slist_lam(s, a, body))?)
}

pub fn tail_proof(a: &Formula) -> EncResult {
    slist_tail(2, a)
}

/// `ₙbool_{A^k} ⊢ ₙbool_A`, sending `i̲` to `i̲`.
pub fn booltype_pow(n: usize, k: usize, a: &Formula) -> EncResult {
    let parts: Vec<Term> = (0..n)
        .map(|i| tuple((0..k).map(|_| proj(i, n, var("y"))).collect()))
        .collect();
    let t = lam("y", &Formula::power(a, n), proj(0, k, app(var("b"), tuple(parts))));
    Ok(compile(&[("b".to_string(), Formula::nbool_type(n, &Formula::power(a, k)))], &t)?)
}

pub fn booltype_proof(n: usize, a: &Formula) -> EncResult {
    booltype_pow(n, 3, a)
}

/// `ₙbool_A ⊢ ₘbool_A` encoding `i ↦ f[i]`.
pub fn fn_proof(f: &[usize], m: usize, a: &Formula) -> EncResult {
    if let Some(v) = f.iter().find(|&&v| v >= m) {
        return Err(out_of_range(format!("value {v} of {m}")));
    }
    let parts: Vec<Term> = f.iter().map(|&v| proj(v, m, var("y"))).collect();
    let t = lam("y", &Formula::power(a, m), app(var("x"), tuple(parts)));
    Ok(compile(&[("x".to_string(), Formula::nbool_type(f.len(), a))], &t)?)
}

/// `₍n₁₎bool_A, ₍n₂₎bool_A ⊢ ₘbool_A` encoding a two-argument function.
pub fn fn2_proof(f: &dyn Fn(usize, usize) -> usize, n1: usize, n2: usize, m: usize, a: &Formula) -> EncResult {
    let mut rows = Vec::with_capacity(n1);
    for i in 0..n1 {
        let mut cols = Vec::with_capacity(n2);
        for j in 0..n2 {
            let v = f(i, j);
            if v >= m {
                return Err(out_of_range(format!("value {v} of {m}")));
            }
            cols.push(proj(v, m, var("z")));
        }
        rows.push(app(var("y"), tuple(cols)));
    }
    let t = lam("z", &Formula::power(a, m), app(var("x"), tuple(rows)));
    let ctx = vec![
        ("x".to_string(), Formula::nbool_type(n1, a)),
        ("y".to_string(), Formula::nbool_type(n2, a)),
    ];
    Ok(compile(&ctx, &t)?)
}

/// Arity of the boolean produced by component `i` of the transition function.
pub fn trans_arity(i: usize, m: &TuringMachine) -> usize {
    match i {
        0 => m.alphabet(),
        1 => m.states(),
        _ => m.moves(),
    }
}

/// `ₛbool_A, ₙbool_A ⊢ ₘbool_A` encoding `δᵢ`.
pub fn trans_proof(i: usize, m: &TuringMachine, a: &Formula) -> EncResult {
    if i > 2 {
        return Err(out_of_range(format!("transition component {i}")));
    }
    fn2_proof(&|s, q| m.delta_i(i, s, q), m.alphabet(), m.states(), trans_arity(i, m), a)
}

/// `ₛlist_A, ₛlist_A ⊢ ₛlist_A` encoding concatenation.
pub fn slist_concat(s: usize, a: &Formula) -> EncResult {
    let inner = apps(var("S"), digit_vars(s).into_iter().chain([var("x")]).collect());
    let body = apps(var("T"), digit_vars(s).into_iter().chain([inner]).collect());
    let l = Formula::slist_type(s, a);
    Ok(compile(&[("S".to_string(), l.clone()), ("T".to_string(), l)], &slist_lam(s, a, body))?)
}

pub fn concat_proof(a: &Formula) -> EncResult {
    slist_concat(2, a)
}

/// `ₛlist_A, ₛbool_A, ₛbool_A ⊢ ₛlist_A` encoding `(S, u, v) ↦ S W_{uv}`,
/// with `table[u * s + v] = W_{uv}`.
pub fn slist_append(s: usize, table: &[Vec<usize>], a: &Formula) -> EncResult {
    if table.len() != s * s {
        return Err(EncodingError::Unsupported(format!("append table needs {} words", s * s)));
    }
    let run = || apps(var("S"), digit_vars(s).into_iter().chain([var("x")]).collect());
    let rows: Vec<Term> = (0..s)
        .map(|u| app(var("v"), tuple((0..s).map(|v| word_term(&table[u * s + v], run())).collect())))
        .collect();
    let body = app(var("u"), tuple(rows));
    let ctx = vec![
        ("S".to_string(), Formula::slist_type(s, a)),
        ("u".to_string(), Formula::nbool_type(s, a)),
        ("v".to_string(), Formula::nbool_type(s, a)),
    ];
    Ok(compile(&ctx, &slist_lam(s, a, body))?)
}

/// Binary-integer version of [`slist_append`] with `[W₀₀, W₀₁, W₁₀, W₁₁]`.
pub fn append_proof(table: &[Vec<usize>; 4], a: &Formula) -> EncResult {
    slist_append(2, table, a)
}

fn append_table(s: usize, w: impl Fn(usize, usize) -> Vec<usize>) -> Vec<Vec<usize>> {
    (0..s).flat_map(|t| (0..s).map(move |g| (t, g))).map(|(t, g)| w(t, g)).collect()
}

/// `ₛlist_A, ₛbool_A (τ), ₛbool_A (σ), ₘbool_A (d) ⊢ ₛlist_A`.
///
/// Side 0 gives `S`, `Sστ`, `Sσ` for d = left, right, stay; side 1 gives
/// `Tτσ`, `T`, `Tτ`.
pub fn slist_recomb(side: usize, s: usize, moves: usize, a: &Formula) -> EncResult {
    if side > 1 || !(2..=3).contains(&moves) {
        return Err(out_of_range(format!("recomb side {side} with {moves} moves")));
    }
    let tables: Vec<Vec<Vec<usize>>> = (0..moves)
        .map(|d| match (side, d) {
            (0, 0) | (1, 1) => append_table(s, |_, _| vec![]),
            (0, 1) => append_table(s, |t, g| vec![g, t]),
            (0, _) => append_table(s, |_, g| vec![g]),
            (1, 0) => append_table(s, |t, g| vec![t, g]),
            _ => append_table(s, |t, _| vec![t]),
        })
        .collect();
    let mut branches = Vec::with_capacity(moves);
    for t in &tables {
        let ap = slist_append(s, t, a)?;
        let list = use_proof(&ap, vec![var("S"), var("t"), var("g")]);
        branches.push(apps(list, digit_vars(s).into_iter().chain([var("x")]).collect()));
    }
    let body = app(var("d"), tuple(branches));
    let ctx = vec![
        ("S".to_string(), Formula::slist_type(s, a)),
        ("t".to_string(), Formula::nbool_type(s, a)),
        ("g".to_string(), Formula::nbool_type(s, a)),
        ("d".to_string(), Formula::nbool_type(moves, a)),
    ];
    Ok(compile(&ctx, &slist_lam(s, a, body))?)
}

pub fn recomb_proof(side: usize, a: &Formula) -> EncResult {
    slist_recomb(side, 2, 2, a)
}

/// `ₛbool_A ⊢ ₛlist_A`, sending `i̲` to the one-digit list `i`.
pub fn slist_cast(s: usize, a: &Formula) -> EncResult {
    let parts: Vec<Term> = (0..s).map(|i| word_term(&[i], var("x"))).collect();
    let body = app(var("b"), tuple(parts));
    Ok(compile(&[("b".to_string(), Formula::nbool_type(s, a))], &slist_lam(s, a, body))?)
}

pub fn cast_proof(a: &Formula) -> EncResult {
    slist_cast(2, a)
}

/// `ₙbool, Aⁿ ⊢ A`, the evaluation map.
pub fn eval_proof(n: usize, a: &Formula) -> EncResult {
    let t = app(var("b"), var("y"));
    let ctx = vec![
        ("b".to_string(), Formula::nbool_type(n, a)),
        ("y".to_string(), Formula::power(a, n)),
    ];
    Ok(compile(&ctx, &t)?)
}

/// Discards the `n`-boolean `b` by feeding it `n` copies of `t : A`.
pub fn boolweak(t: Term, b: Term, n: usize) -> Term {
    app(b, tuple((0..n).map(|_| t.clone()).collect()))
}
