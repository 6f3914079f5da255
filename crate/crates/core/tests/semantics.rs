use lltm_core::encodings::{bint_proof, cast_proof, head_proof, nbool_proof, slist_proof, step_core, tower};
use lltm_core::linalg::random_rational;
use lltm_core::logic::plain::{compose_componentwise, make_plain, tensor_unpack};
use lltm_core::logic::term::{app, compile, lam, var};
use lltm_core::machine::{Move, TuringMachine};
use lltm_core::semantics::ket::{project_left, project_right};
use lltm_core::semantics::{apply, comultiply, counit, denote, dereliction, lin_comb, Dims, Ket, Sampler, Value};
use lltm_core::{Formula, Proof, Q};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn a() -> Formula {
    Formula::atom("A")
}

fn vector(r: &mut ChaCha8Rng, dim: usize) -> Value {
    Value::vector((0..dim).map(|_| random_rational(r)).collect())
}

/// A random combination of up to three kets of length at most 3 over `A` at dim 2.
fn random_kets(seed: u64) -> Value {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let n = 1 + (seed % 3) as usize;
    let terms: Vec<(Q, Ket)> = (0..n)
        .map(|i| {
            let len = (seed as usize / 3 + i) % 4;
            let entries = (0..len).map(|_| vector(&mut r, 2)).collect();
            (random_rational(&mut r), Ket { point: vector(&mut r, 2), entries })
        })
        .collect();
    Value::kets(terms)
}

fn tensor_terms(z: &Value) -> Vec<(Q, Value, Value)> {
    match z {
        Value::Tensor(ts) => ts.to_vec(),
        Value::Zero => Vec::new(),
        _ => panic!("expected a tensor"),
    }
}

fn map_factor(z: &Value, left: bool, f: impl Fn(&Value) -> Value) -> Value {
    let terms = tensor_terms(z)
        .into_iter()
        .map(|(c, x, y)| (c, if left { Value::tensor(f(&x), y) } else { Value::tensor(x, f(&y)) }))
        .collect();
    lin_comb(terms).unwrap()
}

fn reassociate(z: &Value) -> Value {
    let mut out = Vec::new();
    for (c0, l, r) in tensor_terms(z) {
        for (c1, x, y) in tensor_terms(&l) {
            out.push((&c0 * &c1, Value::tensor(x, Value::tensor(y, r.clone()))));
        }
    }
    lin_comb(out).unwrap()
}

fn sampler(dim: usize) -> Sampler {
    Sampler::new(Dims::uniform(dim), 11, 2)
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

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn comultiplication_is_coassociative(seed in any::<u64>()) {
        let x = random_kets(seed);
        let d = comultiply(&x).unwrap();
        let lhs = reassociate(&map_factor(&d, true, |v| comultiply(v).unwrap()));
        let rhs = map_factor(&d, false, |v| comultiply(v).unwrap());
        let ba = Formula::bang(&a());
        let triple = Formula::tensor(&ba, &Formula::tensor(&ba, &ba));
        prop_assert!(sampler(2).equal(&lhs, &rhs, &triple).unwrap());
    }

    #[test]
    fn counit_laws_hold(seed in any::<u64>()) {
        let x = random_kets(seed);
        let d = comultiply(&x).unwrap();
        let ba = Formula::bang(&a());
        prop_assert!(sampler(2).equal(&project_left(&d).unwrap(), &x, &ba).unwrap());
        prop_assert!(sampler(2).equal(&project_right(&d).unwrap(), &x, &ba).unwrap());
    }

    #[test]
    fn dereliction_undoes_the_vacuum(seed in any::<u64>(), dim in 1usize..4) {
        let p = vector(&mut ChaCha8Rng::seed_from_u64(seed), dim);
        let v = Value::vacuum(p.clone());
        prop_assert!(sampler(dim).equal(&dereliction(&v).unwrap(), &p, &a()).unwrap());
        prop_assert_eq!(counit(&v).unwrap(), Q::from_integer(1.into()));
    }

    #[test]
    fn cuts_denote_composites(word in proptest::collection::vec(0usize..2, 0..4), dim in 1usize..3) {
        let a3 = Formula::power(&a(), 3);
        let (head, cast) = (head_proof(&a()).unwrap(), cast_proof(&a()).unwrap());
        let cut = Proof::cut(head.clone(), cast.clone()).unwrap();
        let x = denote(&bint_proof(&word, &a3).unwrap()).unwrap();
        let lhs = apply(&denote(&cut).unwrap(), &x).unwrap();
        let rhs = apply(&denote(&cast).unwrap(), &apply(&denote(&head).unwrap(), &x).unwrap()).unwrap();
        let bint = Formula::bint_type(&a());
        let s = sampler(dim);
        prop_assert!(s.equal(&lhs, &rhs, &bint).unwrap());
        let last = word.last().copied().unwrap_or(0);
        let want = denote(&bint_proof(&[last], &a()).unwrap()).unwrap();
        prop_assert!(s.equal(&lhs, &want, &bint).unwrap());
    }
}

#[test]
fn promotion_is_natural_on_vacua() {
    let e = Formula::endo(&a());
    let ctx = vec![("f".to_string(), e.clone()), ("g".to_string(), e.clone())];
    let twice = compile(&ctx, &lam("x", &a(), app(var("f"), app(var("g"), var("x"))))).unwrap();
    let pi = make_plain(&twice, &[(e.clone(), 2)]).unwrap();
    let prom = Proof::promotion(pi.clone()).unwrap();
    let s = sampler(3);
    let mut r = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..8 {
        let x = Value::vacuum(s.random_value(&e, &mut r).unwrap());
        let lhs = dereliction(&apply(&denote(&prom).unwrap(), &x).unwrap()).unwrap();
        let rhs = apply(&denote(&pi).unwrap(), &x).unwrap();
        assert!(s.equal(&lhs, &rhs, &e).unwrap());
    }
}

#[test]
fn plain_denotations_square_their_argument() {
    let e = Formula::endo(&a());
    let ctx = vec![("f".to_string(), e.clone()), ("g".to_string(), e.clone())];
    let twice = compile(&ctx, &lam("x", &a(), app(var("f"), app(var("g"), var("x"))))).unwrap();
    let pi = denote(&make_plain(&twice, &[(e.clone(), 2)]).unwrap()).unwrap();
    let s = sampler(2);
    let mut r = ChaCha8Rng::seed_from_u64(9);
    let f = s.random_value(&e, &mut r).unwrap();
    let v = vector(&mut r, 2);
    let got = apply(&apply(&pi, &Value::vacuum(f.clone())).unwrap(), &v).unwrap();
    let want = apply(&f, &apply(&f, &v).unwrap()).unwrap();
    assert!(s.equal(&got, &want, &a()).unwrap());
}

#[test]
fn componentwise_cuts_denote_composites() {
    let m = shuttle();
    let a = a();
    let b = tower(&a, 3, 1);
    let phi = step_core(&m, &a).unwrap();
    let psi = step_core(&m, &b).unwrap();
    let cut = denote(&tensor_unpack(&compose_componentwise(&phi, &psi).unwrap()).unwrap()).unwrap();
    let (fphi, fpsi) = (
        denote(&tensor_unpack(&phi).unwrap()).unwrap(),
        denote(&tensor_unpack(&psi).unwrap()).unwrap(),
    );
    let base = tower(&a, 3, 2);
    let word = |w: &[usize]| Value::vacuum(denote(&slist_proof(2, w, &base).unwrap()).unwrap());
    let state = |q: usize| Value::vacuum(denote(&nbool_proof(q, 2, &base).unwrap()).unwrap());
    let cod = Formula::tur_sigma_type(2, 2, &a);
    let s = sampler(1);
    let mut r = ChaCha8Rng::seed_from_u64(3);
    for (l, t, q) in [(vec![0, 1], vec![1], 0), (vec![], vec![], 1), (vec![1, 1], vec![0, 1], 1)] {
        let mix = |x: Value, y: Value, r: &mut ChaCha8Rng| {
            let pts = [x, y].map(|v| match &v {
                Value::Kets(ks) => ks[0].1.point.clone(),
                _ => unreachable!(),
            });
            let combo = lin_comb(pts.into_iter().map(|p| (random_rational(r), p)).collect()).unwrap();
            Value::vacuum(combo)
        };
        let x = Value::tensor_all(vec![
            mix(word(&l), word(&t), &mut r),
            word(&t),
            mix(state(q), state(1 - q), &mut r),
        ]);
        let lhs = apply(&cut, &x).unwrap();
        let rhs = apply(&fphi, &apply(&fpsi, &x).unwrap()).unwrap();
        assert!(s.equal(&lhs, &rhs, &cod).unwrap());
    }
}
