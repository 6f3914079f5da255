//! Formulas, sequent calculus proofs, and the plain normal forms.

pub mod formula;
pub mod plain;
pub mod proof;
pub mod sexpr;
pub mod term;

pub use formula::{Formula, Node};
pub use proof::{check, LogicError, Proof, Rule, Sequent};
