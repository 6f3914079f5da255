use std::collections::{BTreeMap, BTreeSet};

use lltm_core::encodings::{state_proof, tower};
use lltm_core::linalg::random_rational;
use lltm_core::machine::TuringMachine;
use lltm_core::polyform::{
    absstep_state_oracle, absstep_symbol_oracle, absstep_tapehead_oracle, big_f_psi, closed_absstep, closed_left,
    closed_relstep, closed_right, closed_state, commutes, contract_c, extract_g, f_psi, indices, left_oracle,
    relstep_state_oracle, relstep_symbol_oracle, right_oracle, state_oracle, words_up_to, BodyOracle, CommPoly,
    DistVec, Label, LabelKind, Slot,
};
use lltm_core::semantics::{Dims, Sampler};
use lltm_core::{Formula, Q};
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random weights on up to three labels; a probability distribution when `normalized`.
fn dist(labels: &[Label], normalized: bool, r: &mut ChaCha8Rng) -> DistVec {
    let k = r.random_range(1..=3.min(labels.len()));
    let picks = sample(r, labels.len(), k);
    let mut pairs: Vec<(Label, Q)> = picks
        .into_iter()
        .map(|i| {
            let w = if normalized { Q::from_integer(r.random_range(1..=9).into()) } else { random_rational(r) };
            (labels[i].clone(), w)
        })
        .collect();
    if normalized {
        let total: Q = pairs.iter().map(|(_, w)| w.clone()).sum();
        for (_, w) in &mut pairs {
            *w = &*w / &total;
        }
    }
    DistVec::from_pairs(pairs)
}

fn same(x: &DistVec, y: &DistVec) -> bool {
    let labels: BTreeSet<Label> = x.support().into_iter().chain(y.support()).collect();
    labels.iter().all(|l| x.coeff(l) == y.coeff(l))
}

fn one() -> Q {
    Q::from_integer(1.into())
}

/// `F_ψ` built from the body oracle, evaluated on `omegas`.
fn from_polys(body: &BodyOracle, omegas: &[DistVec], outputs: &[Label]) -> DistVec {
    let ins: Vec<Vec<Label>> = omegas.iter().map(DistVec::support).collect();
    let g = extract_g(body, &ins, outputs).unwrap();
    let c: BTreeMap<Label, CommPoly> = g.iter().map(|(k, v)| (k.clone(), contract_c(v))).collect();
    big_f_psi(&c, omegas)
}

fn machine(seed: u64) -> TuringMachine {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let s = r.random_range(2..=3);
    let n = r.random_range(1..=3);
    let stay = r.random_bool(0.5);
    TuringMachine::random(s, n, stay, &mut r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tape_closed_forms_match_their_polynomials(seed in any::<u64>()) {
        let m = machine(seed);
        let (s, n) = (m.alphabet(), m.states());
        let mut r = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let words = words_up_to(s, 2);
        let om = [dist(&words, false, &mut r), dist(&words, false, &mut r), dist(&indices(n), false, &mut r)];
        let outs = words_up_to(s, 3);
        let left = closed_left(&om[0], &om[1], &om[2], &m);
        prop_assert!(same(&left, &from_polys(&left_oracle(&m), &om, &outs)));
        let right = closed_right(&om[0], &om[1], &om[2], &m);
        prop_assert!(same(&right, &from_polys(&right_oracle(&m), &om, &outs)));
        let state = closed_state(&om[0], &om[2], &m);
        prop_assert!(same(&state, &from_polys(&state_oracle(&m), &om, &indices(n))));
    }

    #[test]
    fn relative_closed_forms_match_their_polynomials(seed in any::<u64>(), h in 0usize..3) {
        let m = machine(seed);
        let mut r = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let syms = indices(m.alphabet());
        let mut om: Vec<DistVec> = (0..2 * h + 1).map(|_| dist(&syms, false, &mut r)).collect();
        om.push(dist(&indices(m.states()), false, &mut r));
        let (theta, mu) = closed_relstep(h, &om[..2 * h + 1], &om[2 * h + 1], &m);
        let hi = h as isize;
        for (i, pos) in (-hi - 1..=hi + 1).enumerate() {
            prop_assert!(same(&theta[i], &from_polys(&relstep_symbol_oracle(h, pos, &m), &om, &syms)), "pos {}", pos);
        }
        prop_assert!(same(&mu, &from_polys(&relstep_state_oracle(h, &m), &om, &indices(m.states()))));
    }

    #[test]
    fn absolute_closed_forms_match_their_polynomials(seed in any::<u64>(), h in 1usize..4) {
        let m = machine(seed);
        let mut r = ChaCha8Rng::seed_from_u64(seed ^ 3);
        let syms = indices(m.alphabet());
        let mut om: Vec<DistVec> = (0..h).map(|_| dist(&syms, false, &mut r)).collect();
        om.push(dist(&indices(m.states()), false, &mut r));
        om.push(dist(&indices(h), false, &mut r));
        let (cells, state, head) = closed_absstep(h, &om[..h], &om[h], &om[h + 1], &m);
        for (pos, cell) in cells.iter().enumerate() {
            prop_assert!(same(cell, &from_polys(&absstep_symbol_oracle(h, pos, &m), &om, &syms)), "cell {}", pos);
        }
        prop_assert!(same(&state, &from_polys(&absstep_state_oracle(h, &m), &om, &indices(m.states()))));
        prop_assert!(same(&head, &from_polys(&absstep_tapehead_oracle(h, &m), &om, &indices(h))));
    }

    #[test]
    fn closed_forms_conserve_probability(seed in any::<u64>(), h in 1usize..3) {
        let m = machine(seed);
        let (s, n) = (m.alphabet(), m.states());
        let mut r = ChaCha8Rng::seed_from_u64(seed ^ 4);
        let words = words_up_to(s, 3);
        let (alpha, beta, gamma) = (dist(&words, true, &mut r), dist(&words, true, &mut r), dist(&indices(n), true, &mut r));
        prop_assert_eq!(closed_left(&alpha, &beta, &gamma, &m).mass(), one());
        prop_assert_eq!(closed_right(&alpha, &beta, &gamma, &m).mass(), one());
        prop_assert_eq!(closed_state(&alpha, &gamma, &m).mass(), one());
        let syms = indices(s);
        let cells: Vec<DistVec> = (0..2 * h + 1).map(|_| dist(&syms, true, &mut r)).collect();
        let (theta, mu) = closed_relstep(h, &cells, &gamma, &m);
        prop_assert!(theta.iter().all(|t| t.mass() == one()));
        prop_assert_eq!(mu.mass(), one());
        let head = dist(&indices(h + 1), true, &mut r);
        let (abs, q, i) = closed_absstep(h + 1, &cells[..h + 1], &gamma, &head, &m);
        prop_assert!(abs.iter().all(|t| t.mass() == one()));
        prop_assert_eq!(q.mass(), one());
        prop_assert_eq!(i.mass(), one());
    }

    #[test]
    fn classical_inputs_give_classical_outputs(seed in any::<u64>()) {
        let m = machine(seed);
        let mut r = ChaCha8Rng::seed_from_u64(seed ^ 5);
        let words = words_up_to(m.alphabet(), 3);
        let (x, y) = (words[r.random_range(0..words.len())].clone(), words[r.random_range(0..words.len())].clone());
        let q = r.random_range(0..m.states());
        let out = closed_state(&DistVec::singleton(x.clone()), &DistVec::singleton(vec![q]), &m);
        let next = lltm_core::machine::step_config(&m, &lltm_core::machine::Configuration::new(x.clone(), y.clone(), q));
        prop_assert_eq!(out, DistVec::singleton(vec![next.state]));
        let left = closed_left(&DistVec::singleton(x), &DistVec::singleton(y), &DistVec::singleton(vec![q]), &m);
        prop_assert_eq!(left, DistVec::singleton(next.left));
    }
}

#[test]
fn state_polynomials_agree_with_the_evaluator() {
    let m = TuringMachine::random(2, 2, true, &mut ChaCha8Rng::seed_from_u64(17));
    let a = Formula::atom("A");
    let b = tower(&a, 3, 1);
    let ins = vec![vec![vec![], vec![1], vec![0, 1]], vec![], indices(2)];
    let kinds = [LabelKind::Word(2), LabelKind::Word(2), LabelKind::Bool(2)];
    let slots: Vec<Slot> = ins.iter().zip(kinds).map(|(l, k)| Slot::new(k, &b, l.clone())).collect();
    let output = Slot::new(LabelKind::Bool(2), &a, indices(2));
    let sampler = Sampler::new(Dims::uniform(2), 0, 3);
    let p = state_proof(&m, &a).unwrap();
    let g = extract_g(&state_oracle(&m), &ins, &output.labels).unwrap();
    let cg: BTreeMap<Label, CommPoly> = g.iter().map(|(k, v)| (k.clone(), contract_c(v))).collect();
    let f = f_psi(&p, &slots, &output, &sampler).unwrap();
    assert!(f.bound_met);
    assert_eq!(f.polys, cg);
    let mut r = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let om = [dist(&ins[0], false, &mut r), DistVec::new(), dist(&ins[2], false, &mut r)];
        assert!(commutes(&p, &cg, &slots, &output, &om, &sampler).unwrap());
    }
}
