//! Steps acting directly on tapes of booleans: relative and absolute coordinates.

use super::basic::{boolweak, trans_proof};
use super::{out_of_range, plain_component, EncResult, EncodingError};
use crate::logic::plain::{make_componentwise, tensor_unpack};
use crate::logic::term::{app, lam, proj, tuple, use_proof, var, Term};
use crate::logic::{Formula, Proof};
use crate::machine::TuringMachine;

fn shift(dir: usize) -> isize {
    match dir {
        0 => -1,
        1 => 1,
        _ => 0,
    }
}

/// The proofs making up the relative step of radius `h`.
#[derive(Clone, Debug)]
pub struct RelstepFamily {
    /// Plain components for relative positions `-h-1 ..= h+1`.
    pub symbols: Vec<Proof>,
    pub state: Proof,
    /// Component-wise plain, with hypotheses `2h+1` symbols then the state.
    pub core: Proof,
    /// `!ₛbool^{⊗2h+1} ⊗ !ₙbool ⊢ !ₛbool^{⊗2h+3} ⊗ !ₙbool`.
    pub relstep: Proof,
}

pub fn relstep_bases(h: usize, m: &TuringMachine, a: &Formula) -> Vec<Formula> {
    let mut v = vec![Formula::nbool_type(m.alphabet(), a); 2 * h + 1];
    v.push(Formula::nbool_type(m.states(), a));
    v
}

enum Source {
    Blank,
    Cell(Term),
}

fn rel_symbol(mpos: isize, h: usize, m: &TuringMachine, a: &Formula, t0: &Proof, t2: &Proof) -> EncResult {
    let s = m.alphabet();
    let hi = h as isize;
    let centre = h;
    let state = 2 * h + 1;
    let mut vars: Vec<(usize, String)> = vec![(centre, "ks".into()), (state, "kq".into())];
    let sources: Vec<Source> = (0..m.moves())
        .map(|dir| {
            let p = mpos + shift(dir);
            if p == 0 {
                let (vs, vq) = (format!("hs{dir}"), format!("hq{dir}"));
                vars.push((centre, vs.clone()));
                vars.push((state, vq.clone()));
                Source::Cell(use_proof(t0, vec![var(&vs), var(&vq)]))
            } else if p.abs() <= hi {
                let v = format!("x{dir}");
                vars.push(((p + hi) as usize, v.clone()));
                Source::Cell(var(&v))
            } else {
                Source::Blank
            }
        })
        .collect();
    let branches: Vec<Term> = (0..sources.len())
        .map(|dir| {
            let mut t = match &sources[dir] {
                Source::Blank => proj(0, s, var("y")),
                Source::Cell(c) => app(c.clone(), var("y")),
            };
            for (other, src) in sources.iter().enumerate() {
                if let (true, Source::Cell(c)) = (other != dir, src) {
                    t = boolweak(t, c.clone(), s);
                }
            }
            t
        })
        .collect();
    let d = use_proof(t2, vec![var("ks"), var("kq")]);
    let body = lam("y", &Formula::power(a, s), app(d, tuple(branches)));
    plain_component(&relstep_bases(h, m, a), &vars, &body)
}

pub fn relstep_family(h: usize, m: &TuringMachine, a: &Formula) -> Result<RelstepFamily, EncodingError> {
    let t0 = trans_proof(0, m, a)?;
    let t1 = trans_proof(1, m, a)?;
    let t2 = trans_proof(2, m, a)?;
    let hi = h as isize;
    let symbols = (-hi - 1..=hi + 1)
        .map(|p| rel_symbol(p, h, m, a, &t0, &t2))
        .collect::<Result<Vec<_>, _>>()?;
    let bases = relstep_bases(h, m, a);
    let state = plain_component(
        &bases,
        &[(h, "s".to_string()), (2 * h + 1, "q".to_string())],
        &use_proof(&t1, vec![var("s"), var("q")]),
    )?;
    let mut comps = symbols.clone();
    comps.push(state.clone());
    let hyps: Vec<Formula> = bases.iter().map(Formula::bang).collect();
    let core = make_componentwise(&comps, &hyps)?;
    let relstep = tensor_unpack(&core)?;
    Ok(RelstepFamily {
        symbols,
        state,
        core,
        relstep,
    })
}

/// The proofs making up the absolute step on `h` cells.
#[derive(Clone, Debug)]
pub struct AbsstepFamily {
    pub symbols: Vec<Proof>,
    pub state: Proof,
    pub tapehead: Proof,
    /// Component-wise plain, with hypotheses `h` symbols, the state, the head.
    pub core: Proof,
    /// `!ₛbool^{⊗h} ⊗ !ₙbool ⊗ !ₕbool ⊢` the same type.
    pub absstep: Proof,
}

pub fn absstep_bases(h: usize, m: &TuringMachine, a: &Formula) -> Vec<Formula> {
    let mut v = vec![Formula::nbool_type(m.alphabet(), a); h];
    v.push(Formula::nbool_type(m.states(), a));
    v.push(Formula::nbool_type(h, a));
    v
}

/// Discards every tape cell except `keep` from `t`.
fn weaken_cells(mut t: Term, h: usize, keep: usize, s: usize) -> Term {
    for j in (0..h).filter(|&j| j != keep) {
        t = boolweak(t, var(&format!("s{j}")), s);
    }
    t
}

pub fn absstep_family(h: usize, m: &TuringMachine, a: &Formula) -> Result<AbsstepFamily, EncodingError> {
    if h == 0 {
        return Err(out_of_range("absolute tapes need at least one cell"));
    }
    let (s, n) = (m.alphabet(), m.states());
    let t0 = trans_proof(0, m, a)?;
    let t1 = trans_proof(1, m, a)?;
    let t2 = trans_proof(2, m, a)?;
    let bases = absstep_bases(h, m, a);
    let (sq, si) = (h, h + 1);

    let mut symbols = Vec::with_capacity(h);
    for mm in 0..h {
        let branches: Vec<Term> = (0..h)
            .map(|k| {
                if k == mm {
                    app(use_proof(&t0, vec![var("s"), var("q")]), var("y"))
                } else {
                    boolweak(app(var("s"), var("y")), var("q"), n)
                }
            })
            .collect();
        let body = lam("y", &Formula::power(a, s), app(var("i"), tuple(branches)));
        let vars = vec![(mm, "s".to_string()), (sq, "q".to_string()), (si, "i".to_string())];
        symbols.push(plain_component(&bases, &vars, &body)?);
    }

    let cell_vars = || (0..h).map(|j| (j, format!("s{j}"))).collect::<Vec<_>>();

    let branches: Vec<Term> = (0..h)
        .map(|k| {
            let t = app(use_proof(&t1, vec![var(&format!("s{k}")), var("q")]), var("y"));
            weaken_cells(t, h, k, s)
        })
        .collect();
    let body = lam("y", &Formula::power(a, n), app(var("i"), tuple(branches)));
    let mut vars = cell_vars();
    vars.push((sq, "q".into()));
    vars.push((si, "i".into()));
    let state = plain_component(&bases, &vars, &body)?;

    let moved = |dir: usize| -> Term {
        let parts: Vec<Term> = (0..h)
            .map(|k| {
                let src = (k as isize + shift(dir)).rem_euclid(h as isize) as usize;
                proj(src, h, var("y"))
            })
            .collect();
        app(var("i"), tuple(parts))
    };
    let branches: Vec<Term> = (0..h)
        .map(|l| {
            let d = use_proof(&t2, vec![var(&format!("s{l}")), var("q")]);
            let t = app(d, tuple((0..m.moves()).map(moved).collect()));
            weaken_cells(t, h, l, s)
        })
        .collect();
    let body = lam("y", &Formula::power(a, h), app(var("j"), tuple(branches)));
    let mut vars = cell_vars();
    vars.push((sq, "q".into()));
    vars.push((si, "i".into()));
    vars.push((si, "j".into()));
    let tapehead = plain_component(&bases, &vars, &body)?;

    let mut comps = symbols.clone();
    comps.push(state.clone());
    comps.push(tapehead.clone());
    let hyps: Vec<Formula> = bases.iter().map(Formula::bang).collect();
    let core = make_componentwise(&comps, &hyps)?;
    let absstep = tensor_unpack(&core)?;
    Ok(AbsstepFamily {
        symbols,
        state,
        tapehead,
        core,
        absstep,
    })
}
