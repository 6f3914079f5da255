//! Closed forms and extracted polynomials against the evaluator.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{err, par_map, rng, Check, VerifyOptions};
use crate::encodings::{absstep_family, left_proof, relstep_family, right_proof, state_proof, tower};
use crate::linalg::random_rational;
use crate::logic::{Formula, Proof};
use crate::machine::TuringMachine;
use crate::polyform::{
    closed_absstep, closed_left, closed_relstep, closed_right, closed_state, commutes, contract_c, eval_on_dists,
    extract_g, f_psi, indices, left_oracle, right_oracle, state_oracle, words_up_to, BodyOracle, CommPoly, DistVec,
    Label, LabelKind, Slot,
};
use crate::semantics::{Dims, Sampler};

/// A distribution with random rational weights on 1 to `max` distinct labels.
fn random_dist(labels: &[Label], max: usize, r: &mut ChaCha8Rng) -> DistVec {
    let k = r.random_range(1..=max.min(labels.len()));
    let picks = sample(r, labels.len(), k);
    DistVec::from_pairs(picks.into_iter().map(|i| (labels[i].clone(), random_rational(r))))
}

fn agree(psi: &Proof, slots: &[Slot], omegas: &[DistVec], want: &DistVec, kind: LabelKind, sampler: &Sampler) -> Result<bool, String> {
    let a = Formula::atom("A");
    let got = eval_on_dists(psi, slots, omegas).map_err(err)?;
    let want = want.denote(kind, &a).map_err(err)?;
    sampler.equal(&got, &want, psi.concl()).map_err(err)
}

fn show(ws: &[DistVec]) -> String {
    let parts: Vec<String> = ws.iter().map(|w| format!("{{{}}}", w.to_string().replace('\n', ", "))).collect();
    parts.join(" ")
}

const TUPLES: u64 = 24;

/// Left, right and state tapes at `dim⟦A⟧ = 3`, which exceeds half of the
/// longest output word (5).
fn step_tuple(idx: u64, seed: u64) -> Vec<(String, Result<bool, String>, String)> {
    let mut r = rng(seed, 5000 + idx);
    let s = 2 + (idx as usize % 2);
    let n = 1 + (idx as usize % 3);
    let stay = idx % 4 >= 2;
    let m = TuringMachine::random(s, n, stay, &mut r);
    let a = Formula::atom("A");
    let b = tower(&a, s + 1, 1);
    let words = words_up_to(s, 3);
    let alpha = random_dist(&words, 3, &mut r);
    let beta = random_dist(&words, 3, &mut r);
    let gamma = random_dist(&indices(n), 3, &mut r);
    let slots = vec![
        Slot::new(LabelKind::Word(s), &b, vec![]),
        Slot::new(LabelKind::Word(s), &b, vec![]),
        Slot::new(LabelKind::Bool(n), &b, vec![]),
    ];
    let om = [alpha.clone(), beta.clone(), gamma.clone()];
    let sampler = Sampler::new(Dims::uniform(3), seed, 2);
    let what = format!("{} on {}", m.to_json(), show(&om));
    let mut out = Vec::new();
    let cases: [(&str, Result<Proof, _>, DistVec, LabelKind); 3] = [
        ("left", left_proof(&m, &a), closed_left(&alpha, &beta, &gamma, &m), LabelKind::Word(s)),
        ("right", right_proof(&m, &a), closed_right(&alpha, &beta, &gamma, &m), LabelKind::Word(s)),
        ("state", state_proof(&m, &a), closed_state(&alpha, &gamma, &m), LabelKind::Bool(n)),
    ];
    for (name, p, want, kind) in cases {
        let res = p.map_err(err).and_then(|p| agree(&p, &slots, &om, &want, kind, &sampler));
        out.push((name.to_string(), res, what.clone()));
    }
    out
}

fn bool_slots(kinds: &[LabelKind], a: &Formula) -> Vec<Slot> {
    kinds.iter().map(|&k| Slot::new(k, a, vec![])).collect()
}

fn bool_labels(k: LabelKind) -> Vec<Label> {
    match k {
        LabelKind::Bool(n) => indices(n),
        LabelKind::Word(_) => unreachable!("direct steps act on booleans"),
    }
}

/// Relative and absolute steps at `dim⟦A⟧ = 1`, where boolean labels are independent.
fn direct_tuple(idx: u64, seed: u64) -> Vec<(String, Result<bool, String>, String)> {
    let mut r = rng(seed, 6000 + idx);
    let s = 2 + (idx as usize % 2);
    let n = 1 + (idx as usize % 3);
    let stay = idx % 4 >= 2;
    let m = TuringMachine::random(s, n, stay, &mut r);
    let a = Formula::atom("A");
    let sampler = Sampler::new(Dims::uniform(1), seed, 2);
    let mut out = Vec::new();

    let h = idx as usize % 3;
    let mut kinds = vec![LabelKind::Bool(s); 2 * h + 1];
    kinds.push(LabelKind::Bool(n));
    let om: Vec<DistVec> = kinds.iter().map(|&k| random_dist(&bool_labels(k), 3, &mut r)).collect();
    let what = format!("{} h={h} on {}", m.to_json(), show(&om));
    let slots = bool_slots(&kinds, &a);
    match relstep_family(h, &m, &a) {
        Ok(fam) => {
            let (theta, mu) = closed_relstep(h, &om[..2 * h + 1], &om[2 * h + 1], &m);
            let mut res = Ok(true);
            for (p, want) in fam.symbols.iter().zip(&theta) {
                res = res.and_then(|ok| Ok(ok && agree(p, &slots, &om, want, LabelKind::Bool(s), &sampler)?));
            }
            out.push(("relstep symbols".to_string(), res, what.clone()));
            let res = agree(&fam.state, &slots, &om, &mu, LabelKind::Bool(n), &sampler);
            out.push(("relstep state".to_string(), res, what));
        }
        Err(e) => out.push(("relstep".to_string(), Err(err(e)), what)),
    }

    let h = 1 + idx as usize % 3;
    let mut kinds = vec![LabelKind::Bool(s); h];
    kinds.push(LabelKind::Bool(n));
    kinds.push(LabelKind::Bool(h));
    let om: Vec<DistVec> = kinds.iter().map(|&k| random_dist(&bool_labels(k), 3, &mut r)).collect();
    let what = format!("{} h={h} on {}", m.to_json(), show(&om));
    let slots = bool_slots(&kinds, &a);
    match absstep_family(h, &m, &a) {
        Ok(fam) => {
            let (syms, state, head) = closed_absstep(h, &om[..h], &om[h], &om[h + 1], &m);
            let mut res = Ok(true);
            for (p, want) in fam.symbols.iter().zip(&syms) {
                res = res.and_then(|ok| Ok(ok && agree(p, &slots, &om, want, LabelKind::Bool(s), &sampler)?));
            }
            out.push(("absstep symbols".to_string(), res, what.clone()));
            let res = agree(&fam.state, &slots, &om, &state, LabelKind::Bool(n), &sampler);
            out.push(("absstep state".to_string(), res, what.clone()));
            let res = agree(&fam.tapehead, &slots, &om, &head, LabelKind::Bool(h), &sampler);
            out.push(("absstep head".to_string(), res, what));
        }
        Err(e) => out.push(("absstep".to_string(), Err(err(e)), what)),
    }
    out
}

/// Groups per-case results into one check per component name, in first-seen order.
fn collect(prefix: &str, results: Vec<Vec<(String, Result<bool, String>, String)>>) -> Vec<Check> {
    let mut order: Vec<String> = Vec::new();
    let mut checks: BTreeMap<String, Check> = BTreeMap::new();
    for (name, res, what) in results.into_iter().flatten() {
        if !checks.contains_key(&name) {
            order.push(name.clone());
            checks.insert(name.clone(), Check::new(format!("{prefix} {name}")));
        }
        checks.get_mut(&name).expect("inserted").case(res, || what);
    }
    order.into_iter().map(|n| checks.remove(&n).expect("present")).collect()
}

pub fn criterion_closed(opts: &VerifyOptions) -> Vec<Check> {
    let seed = opts.seed;
    let mut checks = collect(
        "closed form vs evaluator, dim 3:",
        par_map(opts.jobs, (0..TUPLES).collect(), |i| step_tuple(i, seed)),
    );
    checks.extend(collect(
        "closed form vs evaluator, dim 1:",
        par_map(opts.jobs, (0..TUPLES).collect(), |i| direct_tuple(i, seed)),
    ));
    checks
}

/// `C(g) = f` and `F_ψ` commutation for one component, with each input slot
/// carrying at most three labels.
fn poly_case(idx: u64, seed: u64) -> Vec<(String, Result<bool, String>, String)> {
    let mut r = rng(seed, 7000 + idx);
    let n = 1 + idx as usize % 3;
    let m = TuringMachine::random(2, n, idx % 2 == 1, &mut r);
    let a = Formula::atom("A");
    let b = tower(&a, 3, 1);
    let short = words_up_to(2, 2);
    let pick = |r: &mut ChaCha8Rng, pool: &[Label]| -> Vec<Label> {
        let k = r.random_range(1..=3.min(pool.len()));
        let mut v: Vec<Label> = sample(r, pool.len(), k).into_iter().map(|i| pool[i].clone()).collect();
        v.sort();
        v
    };
    let ins = vec![pick(&mut r, &short), pick(&mut r, &short), pick(&mut r, &indices(n))];
    let kinds = [LabelKind::Word(2), LabelKind::Word(2), LabelKind::Bool(n)];
    let slots: Vec<Slot> = ins.iter().zip(kinds).map(|(l, k)| Slot::new(k, &b, l.clone())).collect();
    let sampler = Sampler::new(Dims::uniform(2), seed, 3);
    let omegas: Vec<Vec<DistVec>> = (0..3)
        .map(|_| ins.iter().map(|l| random_dist(l, 3, &mut r)).collect())
        .collect();
    let what = format!("{} labels {ins:?}", m.to_json());
    let cases: [(&str, Result<Proof, _>, BodyOracle, Slot); 3] = [
        ("state", state_proof(&m, &a), state_oracle(&m), Slot::new(LabelKind::Bool(n), &a, indices(n))),
        ("left", left_proof(&m, &a), left_oracle(&m), Slot::new(LabelKind::Word(2), &a, words_up_to(2, 3))),
        ("right", right_proof(&m, &a), right_oracle(&m), Slot::new(LabelKind::Word(2), &a, words_up_to(2, 3))),
    ];
    let mut out = Vec::new();
    for (name, p, oracle, output) in cases {
        let run = || -> Result<(bool, bool), String> {
            let p = p.map_err(err)?;
            let g = extract_g(&oracle, &ins, &output.labels).map_err(err)?;
            let cg: BTreeMap<Label, CommPoly> = g.iter().map(|(k, v)| (k.clone(), contract_c(v))).collect();
            let f = f_psi(&p, &slots, &output, &sampler).map_err(err)?;
            let same = f.bound_met && cg == f.polys;
            let mut comm = true;
            for om in &omegas {
                comm &= commutes(&p, &cg, &slots, &output, om, &sampler).map_err(err)?;
            }
            Ok((same, comm))
        };
        match run() {
            Ok((same, comm)) => {
                out.push((format!("{name}: C(g) = f"), Ok(same), what.clone()));
                out.push((format!("{name}: F commutes"), Ok(comm), what.clone()));
            }
            Err(e) => {
                out.push((format!("{name}: C(g) = f"), Err(e.clone()), what.clone()));
                out.push((format!("{name}: F commutes"), Err(e), what.clone()));
            }
        }
    }
    out
}

const POLY_CASES: u64 = 8;

pub fn criterion_polynomials(opts: &VerifyOptions) -> Vec<Check> {
    let seed = opts.seed;
    collect(
        "label sets <= 3, dim 2,",
        par_map(opts.jobs, (0..POLY_CASES).collect(), |i| poly_case(i, seed)),
    )
}
