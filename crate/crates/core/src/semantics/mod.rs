//! Vector space semantics: spaces, kets, and the proof interpreter.

pub mod eval;
pub mod ket;
pub mod print;
pub mod sample;
pub mod space;
pub mod value;

pub use eval::{apply, apply_all, curry, denote, eval};
pub use ket::{comultiply, counit, dereliction, pair_grouplike, pair_primitive};
pub use sample::{op_equal_on_samples, Fingerprint, Sampler};
pub use space::{space_of, Dims, SpaceExpr};
pub use value::{lin_comb, EvalError, Ket, Lazy, Op, Value};
