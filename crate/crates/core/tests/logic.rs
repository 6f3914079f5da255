use lltm_core::encodings::{
    bint_proof, boolstep_proof, cast_proof, concat_proof, head_proof, int_proof, nbool_proof, relstep_family,
    slist_proof, step_core, step_p_proof, step_proof, tail_proof, tower,
};
use lltm_core::logic::plain::{
    compose_componentwise, make_plain, plain_contract, plain_shape, plain_weaken, tensor_unpack,
};
use lltm_core::logic::sexpr::{parse_formula, parse_proof, print_proof};
use lltm_core::logic::term::{app, compile, lam, var};
use lltm_core::machine::{Move, TuringMachine};
use lltm_core::{check, Formula, LogicError, Proof, Sequent};
use proptest::prelude::*;

fn a() -> Formula {
    Formula::atom("A")
}

fn shuttle() -> TuringMachine {
    TuringMachine::new(2, 2, false, |s, q| match (s, q) {
        (0, 0) => (1, 1, Move::Right),
        (0, 1) => (0, 0, Move::Left),
        (1, 0) => (1, 0, Move::Left),
        _ => (1, 1, Move::Right),
    })
    .unwrap()
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just(Formula::atom("A")), Just(Formula::atom("B")), Just(Formula::atom("C1"))];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Formula::tensor(&x, &y)),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Formula::with(&x, &y)),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Formula::lolli(&x, &y)),
            inner.prop_map(|x| Formula::bang(&x)),
        ]
    })
}

/// `f₁ (f₂ (… (fₙ a)))` over `n` hypotheses `A ⊸ A`.
fn chain(n: usize) -> Proof {
    let e = Formula::endo(&a());
    let ctx: Vec<(String, Formula)> = (0..n).map(|i| (format!("f{i}"), e.clone())).collect();
    let body = (0..n).rev().fold(var("x"), |acc, i| app(var(&format!("f{i}")), acc));
    compile(&ctx, &lam("x", &a(), body)).unwrap()
}

fn sequent(hyps: &[Formula], concl: Formula) -> Sequent {
    Sequent::new(hyps.to_vec(), concl)
}

/// Every constructor paired with the sequent it must conclude.
fn constructed() -> Vec<(String, Proof, Sequent)> {
    let a = a();
    let m = shuttle();
    let b = tower(&a, 3, 1);
    let tur = |x: &Formula| Formula::tur_sigma_type(2, 2, x);
    let bint = Formula::bint_type(&a);
    let mut out = vec![
        ("nbool".into(), nbool_proof(1, 3, &a).unwrap(), sequent(&[], Formula::nbool_type(3, &a))),
        ("int".into(), int_proof(3, &a).unwrap(), sequent(&[], Formula::int_type(&a))),
        ("bint".into(), bint_proof(&[0, 1, 1], &a).unwrap(), sequent(&[], bint.clone())),
        ("slist".into(), slist_proof(3, &[2, 0], &a).unwrap(), sequent(&[], Formula::slist_type(3, &a))),
        (
            "head".into(),
            head_proof(&a).unwrap(),
            sequent(&[Formula::bint_type(&Formula::power(&a, 3))], Formula::bool_type(&a)),
        ),
        (
            "tail".into(),
            tail_proof(&a).unwrap(),
            sequent(&[Formula::bint_type(&Formula::power(&a, 3))], bint.clone()),
        ),
        (
            "concat".into(),
            concat_proof(&a).unwrap(),
            sequent(&[bint.clone(), bint.clone()], bint.clone()),
        ),
        (
            "cast".into(),
            cast_proof(&a).unwrap(),
            sequent(&[Formula::bool_type(&a)], bint.clone()),
        ),
        ("step".into(), step_proof(&m, &a).unwrap(), sequent(&[tur(&b)], tur(&a))),
        (
            "step^2".into(),
            step_p_proof(&m, 2, &a).unwrap(),
            sequent(&[tur(&tower(&a, 3, 2))], tur(&a)),
        ),
    ];
    let bs = boolstep_proof(1, 1, 1, 1, 1, &m, &a).unwrap();
    let want = bs.conclusion().clone();
    out.push(("boolstep".into(), bs, want));
    let fam = relstep_family(1, &m, &a).unwrap();
    let want = fam.relstep.conclusion().clone();
    out.push(("relstep".into(), fam.relstep, want));
    out
}

#[test]
fn constructors_conclude_their_sequents() {
    for (name, p, want) in constructed() {
        let got = check(&p).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(got, want, "{name}");
        assert_eq!(&got, p.conclusion(), "{name}");
        assert_eq!(check(&p).unwrap(), got, "{name}: check is not idempotent");
    }
}

#[test]
fn serialized_proofs_round_trip() {
    for (name, p, _) in constructed() {
        let text = print_proof(&p);
        let back = parse_proof(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(print_proof(&back), text, "{name}");
        assert_eq!(check(&back).unwrap(), check(&p).unwrap(), "{name}");
    }
}

#[test]
fn tampered_conclusions_are_rejected() {
    let p = step_proof(&shuttle(), &a()).unwrap();
    let wrong = Sequent::new(p.hyps().to_vec(), Formula::atom("A"));
    let forged = Proof::from_parts(p.rule().clone(), p.premises().to_vec(), wrong);
    assert!(check(&forged).is_err());
    let inner = Proof::from_parts(Proof::axiom(&a()).rule().clone(), vec![], sequent(&[a()], Formula::atom("B")));
    let outer = Proof::lolli_r(inner).unwrap();
    assert!(check(&outer).is_err(), "a forged axiom below a valid rule");
}

#[test]
fn componentwise_cut_is_associative() {
    let m = shuttle();
    let (a, k) = (a(), 3);
    let b = tower(&a, k, 1);
    let c = tower(&b, k, 1);
    let (phi, psi, chi) = (step_core(&m, &a).unwrap(), step_core(&m, &b).unwrap(), step_core(&m, &c).unwrap());
    let left = compose_componentwise(&compose_componentwise(&phi, &psi).unwrap(), &chi).unwrap();
    let right = compose_componentwise(&phi, &compose_componentwise(&psi, &chi).unwrap()).unwrap();
    assert_eq!(check(&left).unwrap(), check(&right).unwrap());
    let unpacked = tensor_unpack(&left).unwrap();
    assert_eq!(check(&unpacked).unwrap(), check(&step_p_proof(&m, 3, &a).unwrap()).unwrap());
}

#[test]
fn mismatched_cuts_are_rejected() {
    let m = shuttle();
    let phi = step_core(&m, &a()).unwrap();
    assert!(matches!(compose_componentwise(&phi, &phi), Err(LogicError::ShapeMismatch(_))));
}

proptest! {
    #[test]
    fn formulas_round_trip(f in formula()) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn plain_proofs_are_stable(d1 in 0usize..4, d2 in 0usize..4) {
        let e = Formula::endo(&a());
        let p = make_plain(&chain(d1 + d2), &[(e.clone(), d1), (e.clone(), d2)]).unwrap();
        prop_assert_eq!(plain_shape(&p).unwrap().0, vec![d1, d2]);
        let c = plain_contract(&p, 0, 1).unwrap();
        prop_assert_eq!(plain_shape(&c).unwrap().0, vec![d1 + d2]);
        let w = plain_weaken(&c, &Formula::atom("B")).unwrap();
        prop_assert_eq!(plain_shape(&w).unwrap().0, vec![d1 + d2, 0]);
        let want = sequent(&[Formula::bang(&e), Formula::bang(&Formula::atom("B"))], Formula::endo(&a()));
        prop_assert_eq!(check(&w).unwrap(), want);
    }
}
