//! One transition step on configurations `!ₛlist ⊗ !ₛlist ⊗ !ₙbool`.

use super::basic::{booltype_pow, slist_head, slist_recomb, slist_tail, trans_proof};
use super::{plain_component, EncResult};
use crate::logic::plain::{compose_componentwise, make_componentwise, tensor_unpack};
use crate::logic::term::{use_proof, var, Term};
use crate::logic::Formula;
use crate::machine::TuringMachine;

/// Power used for one step: `s + 1` copies of the base.
pub fn step_power(m: &TuringMachine) -> usize {
    m.alphabet() + 1
}

/// Unbanged hypothesis bases `ₛlist_B, ₛlist_B, ₙbool_B` with `B = A^{s+1}`.
pub fn step_bases(m: &TuringMachine, a: &Formula) -> Vec<Formula> {
    let b = Formula::power(a, step_power(m));
    let l = Formula::slist_type(m.alphabet(), &b);
    vec![l.clone(), l, Formula::nbool_type(m.states(), &b)]
}

struct Parts {
    head: crate::logic::Proof,
    tail: crate::logic::Proof,
    booltype: crate::logic::Proof,
    trans: [crate::logic::Proof; 3],
}

impl Parts {
    fn new(m: &TuringMachine, a: &Formula) -> Result<Parts, super::EncodingError> {
        let s = m.alphabet();
        Ok(Parts {
            head: slist_head(s, a)?,
            tail: slist_tail(s, a)?,
            booltype: booltype_pow(m.states(), s + 1, a)?,
            trans: [trans_proof(0, m, a)?, trans_proof(1, m, a)?, trans_proof(2, m, a)?],
        })
    }

    fn trans(&self, i: usize, list: &str, q: &str) -> Term {
        let sym = use_proof(&self.head, vec![var(list)]);
        let st = use_proof(&self.booltype, vec![var(q)]);
        use_proof(&self.trans[i], vec![sym, st])
    }
}

fn vars(spec: &[(usize, &str)]) -> Vec<(usize, String)> {
    spec.iter().map(|(g, n)| (*g, n.to_string())).collect()
}

/// Plain proof `3 !ₛlist, !ₛlist, 2 !ₙbool ⊢ ₛlist_A` computing the new left tape.
pub fn left_proof(m: &TuringMachine, a: &Formula) -> EncResult {
    let p = Parts::new(m, a)?;
    let recomb = slist_recomb(0, m.alphabet(), m.moves(), a)?;
    let t = use_proof(
        &recomb,
        vec![
            use_proof(&p.tail, vec![var("s1")]),
            use_proof(&p.head, vec![var("t1")]),
            p.trans(0, "s2", "q1"),
            p.trans(2, "s3", "q2"),
        ],
    );
    let v = vars(&[(0, "s1"), (0, "s2"), (0, "s3"), (1, "t1"), (2, "q1"), (2, "q2")]);
    plain_component(&step_bases(m, a), &v, &t)
}

/// Plain proof `2 !ₛlist, 2 !ₛlist, 2 !ₙbool ⊢ ₛlist_A` computing the new right tape.
pub fn right_proof(m: &TuringMachine, a: &Formula) -> EncResult {
    let p = Parts::new(m, a)?;
    let recomb = slist_recomb(1, m.alphabet(), m.moves(), a)?;
    let t = use_proof(
        &recomb,
        vec![
            use_proof(&p.tail, vec![var("t2")]),
            use_proof(&p.head, vec![var("t1")]),
            p.trans(0, "s1", "q1"),
            p.trans(2, "s2", "q2"),
        ],
    );
    let v = vars(&[(0, "s1"), (0, "s2"), (1, "t1"), (1, "t2"), (2, "q1"), (2, "q2")]);
    plain_component(&step_bases(m, a), &v, &t)
}

/// Plain proof `!ₛlist, !ₛlist, !ₙbool ⊢ ₙbool_A` computing the new state.
pub fn state_proof(m: &TuringMachine, a: &Formula) -> EncResult {
    let p = Parts::new(m, a)?;
    let v = vars(&[(0, "s1"), (2, "q1")]);
    plain_component(&step_bases(m, a), &v, &p.trans(1, "s1", "q1"))
}

/// The component-wise plain step with hypotheses `!ₛlist_B, !ₛlist_B, !ₙbool_B`.
pub fn step_core(m: &TuringMachine, a: &Formula) -> EncResult {
    let comps = [left_proof(m, a)?, right_proof(m, a)?, state_proof(m, a)?];
    let hyps: Vec<Formula> = step_bases(m, a).iter().map(Formula::bang).collect();
    Ok(make_componentwise(&comps, &hyps)?)
}

/// `Tur_{A^{s+1}} ⊢ Tur_A`.
pub fn step_proof(m: &TuringMachine, a: &Formula) -> EncResult {
    Ok(tensor_unpack(&step_core(m, a)?)?)
}

/// `p` steps as an iterated component-wise cut of [`step_core`].
pub fn step_p_core(m: &TuringMachine, p: usize, a: &Formula) -> EncResult {
    if p == 0 {
        return Err(super::out_of_range("step count must be positive"));
    }
    let one = step_core(m, a)?;
    if p == 1 {
        return Ok(one);
    }
    let rest = step_p_core(m, p - 1, &Formula::power(a, step_power(m)))?;
    Ok(compose_componentwise(&one, &rest)?)
}

/// `Tur_{A^{(s+1)^p}} ⊢ Tur_A`.
pub fn step_p_proof(m: &TuringMachine, p: usize, a: &Formula) -> EncResult {
    Ok(tensor_unpack(&step_p_core(m, p, a)?)?)
}

/// Step for a machine over an `s`-symbol alphabet.
pub fn step_sigma_proof(m: &TuringMachine, a: &Formula) -> EncResult {
    step_proof(m, a)
}

/// Step for a machine whose head may stay still; directions are 3-booleans.
pub fn stay_variant(m: &TuringMachine, a: &Formula) -> EncResult {
    if !m.allow_stay() {
        return Err(super::EncodingError::Unsupported("machine does not allow stay moves".into()));
    }
    step_proof(m, a)
}
