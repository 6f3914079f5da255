//! Encodings of Turing machines as intuitionistic linear logic proofs,
//! an exact evaluator for their vector space semantics, and the oracles
//! used to validate both.

pub mod linalg;
pub mod logic;
pub mod machine;
pub mod polyform;
pub mod bint_algebra;
pub mod encodings;
pub mod semantics;
pub mod verify;

pub use linalg::{RatMatrix, Q};
pub use logic::{check, Formula, LogicError, Proof, Rule, Sequent};
pub use semantics::{Dims, EvalError, Sampler, SpaceExpr, Value};
