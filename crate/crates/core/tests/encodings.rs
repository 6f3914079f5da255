use lltm_core::encodings::{
    bint_proof, boolstep_proof, cast_proof, concat_proof, head_proof, nbool_proof, slist_proof, stay_variant,
    step_p_proof, step_proof, tail_proof, tower,
};
use lltm_core::logic::term::{compile, der, let_pair, var};
use lltm_core::machine::{config_of, run, window_of, Configuration, Move, TuringMachine};
use lltm_core::semantics::{apply, denote, eval, Dims, Sampler, Value};
use lltm_core::{check, Formula, Proof};
use proptest::prelude::*;

fn a() -> Formula {
    Formula::atom("A")
}

fn vacuum(p: &Proof) -> Value {
    Value::vacuum(denote(p).unwrap())
}

fn config_value(m: &TuringMachine, c: &Configuration, base: &Formula) -> Value {
    let s = m.alphabet();
    Value::tensor_all(vec![
        vacuum(&slist_proof(s, &c.left, base).unwrap()),
        vacuum(&slist_proof(s, &c.right, base).unwrap()),
        vacuum(&nbool_proof(c.state, m.states(), base).unwrap()),
    ])
}

/// Three symbols, two states, every move kind.
fn ternary() -> TuringMachine {
    TuringMachine::new(3, 2, true, |s, q| {
        let d = [Move::Left, Move::Stay, Move::Right][(s + q) % 3];
        ((s + 2 * q + 1) % 3, (s + q) % 2, d)
    })
    .unwrap()
}

fn flipper() -> TuringMachine {
    TuringMachine::new(2, 1, false, |s, _| (1 - s, 0, if s == 0 { Move::Right } else { Move::Left })).unwrap()
}

fn agrees(m: &TuringMachine, p: usize, dim: usize, configs: &[Configuration]) {
    let a = a();
    let proof = if p == 1 { step_proof(m, &a) } else { step_p_proof(m, p, &a) }.unwrap();
    let f = denote(&proof).unwrap();
    let base = tower(&a, m.alphabet() + 1, p);
    let cod = Formula::tur_sigma_type(m.alphabet(), m.states(), &a);
    let sampler = Sampler::new(Dims::uniform(dim), 1, 2);
    for c in configs {
        let got = apply(&f, &config_value(m, c, &base)).unwrap();
        let want = config_value(m, &run(m, c, p), &a);
        assert!(sampler.equal(&got, &want, &cod).unwrap(), "p={p} dim={dim} from {c}");
    }
}

#[test]
fn ternary_machine_with_stay_moves_at_dim_1() {
    let m = ternary();
    let mut configs = Vec::new();
    for l in [vec![], vec![2], vec![0, 1], vec![1, 2, 0]] {
        for r in [vec![], vec![1], vec![2, 2]] {
            for q in 0..2 {
                configs.push(Configuration::new(l.clone(), r.clone(), q));
            }
        }
    }
    agrees(&m, 1, 1, &configs);
    agrees(&m, 2, 1, &configs[..8]);
}

#[test]
fn step_agrees_at_dim_2() {
    let configs = [
        Configuration::new(vec![0, 1], vec![1], 0),
        Configuration::new(vec![], vec![], 0),
        Configuration::new(vec![1], vec![0, 0, 1], 0),
    ];
    agrees(&flipper(), 1, 2, &configs);
}

#[test]
fn stay_variant_needs_stay_moves() {
    assert!(stay_variant(&flipper(), &a()).is_err());
    let p = stay_variant(&ternary(), &a()).unwrap();
    assert_eq!(check(&p).unwrap(), check(&step_proof(&ternary(), &a()).unwrap()).unwrap());
}

#[test]
fn zero_steps_are_rejected() {
    assert!(step_p_proof(&flipper(), 0, &a()).is_err());
}

/// `X^{c,d} ⊢ ₛbool_A` keeping factor `i` of `n` and weakening the rest.
fn keep(i: usize, n: usize, factors: &[Formula]) -> Proof {
    let names: Vec<String> = (0..n).map(|j| format!("z{j}")).collect();
    let mut body = der(var(&names[i]));
    for j in (0..n - 1).rev() {
        let rest = if j + 1 == n - 1 { names[n - 1].clone() } else { format!("r{}", j + 1) };
        let src = if j == 0 { "x".to_string() } else { format!("r{j}") };
        body = let_pair(&names[j], &rest, var(&src), body);
    }
    let ctx = vec![("x".to_string(), Formula::tensor_all(factors))];
    compile(&ctx, &body).unwrap()
}

#[test]
fn boolstep_components_are_recoverable() {
    let m = flipper();
    let (na, nb, c, d, p) = (2, 1, 2, 2, 1);
    let a = a();
    let bs = boolstep_proof(na, nb, c, d, p, &m, &a).unwrap();
    let n = c + d + 1;
    let factors = bs.concl().tensor_factors(n).unwrap();
    let base = tower(&a, 3, p + c.max(d) + 1);
    let sampler = Sampler::new(Dims::uniform(1), 2, 2);
    for i in 0..n {
        let part = Proof::cut(bs.clone(), keep(i, n, &factors)).unwrap();
        check(&part).unwrap();
        for (x, y, q) in [(vec![0, 1], vec![1], 0), (vec![1, 1], vec![0], 0)] {
            let cf = run(&m, &config_of(&x, &y, q), p);
            let (wx, wy) = window_of(&cf, c, d);
            let mut digits: Vec<(usize, usize)> = [wx, wy].concat().into_iter().map(|v| (v, 2)).collect();
            digits.push((cf.state, m.states()));
            let mut inputs: Vec<Value> = [x.clone(), y.clone()]
                .concat()
                .iter()
                .map(|&v| vacuum(&nbool_proof(v, 2, &base).unwrap()))
                .collect();
            inputs.push(vacuum(&nbool_proof(q, m.states(), &base).unwrap()));
            let got = eval(&part, &inputs).unwrap();
            let (v, k) = digits[i];
            let want = denote(&nbool_proof(v, k, &a).unwrap()).unwrap();
            assert!(sampler.equal(&got, &want, part.concl()).unwrap(), "factor {i} from {x:?} {y:?}");
        }
    }
}

/// Whether `concat(tail w, cast(head w))` denotes `want`.
fn tail_then_head(word: &[usize], want: &[usize], dim: usize) -> bool {
    let a = a();
    let x = denote(&bint_proof(word, &Formula::power(&a, 3)).unwrap()).unwrap();
    let tail = apply(&denote(&tail_proof(&a).unwrap()).unwrap(), &x).unwrap();
    let head = apply(&denote(&head_proof(&a).unwrap()).unwrap(), &x).unwrap();
    let cast = apply(&denote(&cast_proof(&a).unwrap()).unwrap(), &head).unwrap();
    let concat = denote(&concat_proof(&a).unwrap()).unwrap();
    let joined = apply(&apply(&concat, &tail).unwrap(), &cast).unwrap();
    let want = denote(&bint_proof(want, &a).unwrap()).unwrap();
    Sampler::new(Dims::uniform(dim), 4, 2).equal(&joined, &want, &Formula::bint_type(&a)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn head_and_tail_factor_a_list(word in proptest::collection::vec(0usize..2, 1..5), dim in 1usize..3) {
        prop_assert!(tail_then_head(&word, &word, dim));
    }

    #[test]
    fn lists_denote_distinct_vacua(u in proptest::collection::vec(0usize..3, 0..4), v in proptest::collection::vec(0usize..3, 0..4)) {
        let a = a();
        let x = denote(&slist_proof(3, &u, &a).unwrap()).unwrap();
        let y = denote(&slist_proof(3, &v, &a).unwrap()).unwrap();
        let same = Sampler::new(Dims::uniform(2), 0, 2).equal(&x, &y, &Formula::slist_type(3, &a)).unwrap();
        prop_assert_eq!(same, u == v);
    }
}

#[test]
fn empty_list_has_blank_head() {
    assert!(tail_then_head(&[], &[0], 2));
    assert!(!tail_then_head(&[], &[], 2));
}
