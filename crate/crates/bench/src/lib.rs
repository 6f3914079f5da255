//! Fixtures shared by the benchmarks.

use lltm_core::encodings::{nbool_proof, slist_proof, step_p_proof, step_proof, tower};
use lltm_core::machine::{Configuration, Move, TuringMachine};
use lltm_core::semantics::{denote, Dims, Sampler};
use lltm_core::{Formula, Value};

/// Two states, binary alphabet, moving in both directions.
pub fn shuttle() -> TuringMachine {
    TuringMachine::new(2, 2, false, |s, q| match (s, q) {
        (0, 0) => (1, 1, Move::Right),
        (0, 1) => (0, 0, Move::Left),
        (1, 0) => (1, 0, Move::Left),
        _ => (1, 1, Move::Right),
    })
    .expect("valid machine")
}

/// A denoted `p`-step proof with its vacuum-embedded input and output type.
pub struct StepFixture {
    pub step: Value,
    pub input: Value,
    pub output: Formula,
    pub sampler: Sampler,
}

pub fn step_fixture(m: &TuringMachine, p: usize, c: &Configuration, dim: usize) -> StepFixture {
    let a = Formula::atom("A");
    let proof = if p == 1 { step_proof(m, &a) } else { step_p_proof(m, p, &a) }.expect("step proof");
    let base = tower(&a, m.alphabet() + 1, p);
    let vacuum = |pr| Value::vacuum(denote(&pr).expect("denotes"));
    let input = Value::tensor_all(vec![
        vacuum(slist_proof(m.alphabet(), &c.left, &base).expect("list")),
        vacuum(slist_proof(m.alphabet(), &c.right, &base).expect("list")),
        vacuum(nbool_proof(c.state, m.states(), &base).expect("state")),
    ]);
    StepFixture {
        step: denote(&proof).expect("denotes"),
        input,
        output: Formula::tur_sigma_type(m.alphabet(), m.states(), &a),
        sampler: Sampler::new(Dims::uniform(dim), 0, 2),
    }
}
