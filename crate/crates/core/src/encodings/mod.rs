//! Proofs encoding booleans, integers, s-lists and Turing machine steps.
//!
//! Every constructor is written in the linear term language of
//! [`crate::logic::term`] and compiled to a checked proof. Strings act by
//! composing the supplied endomorphisms with the first digit innermost.

mod basic;
mod boolstep;
mod direct;
mod step;

pub use basic::*;
pub use boolstep::*;
pub use direct::*;
pub use step::*;

use thiserror::Error;

use crate::logic::term::{compile, Term};
use crate::logic::{Formula, LogicError, Proof};
use crate::logic::plain::make_plain;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EncodingError {
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

pub type EncResult = Result<Proof, EncodingError>;

fn out_of_range(msg: impl Into<String>) -> EncodingError {
    EncodingError::IndexOutOfRange(msg.into())
}

/// `B^(k^p)`: `p` rounds of substituting `B^k` for `B`.
pub fn tower(a: &Formula, k: usize, p: usize) -> Formula {
    (0..p).fold(a.clone(), |acc, _| Formula::power(&acc, k))
}

/// Compiles `t` in a context of linear variables, each attached to one of
/// the unbanged `bases`, and wraps the body into plain form over `!bases`.
fn plain_component(bases: &[Formula], vars: &[(usize, String)], t: &Term) -> EncResult {
    let mut sorted: Vec<&(usize, String)> = vars.iter().collect();
    sorted.sort_by_key(|(g, _)| *g);
    let ctx: Vec<(String, Formula)> = sorted.iter().map(|(g, n)| (n.clone(), bases[*g].clone())).collect();
    let body = compile(&ctx, t)?;
    let groups: Vec<(Formula, usize)> = bases
        .iter()
        .enumerate()
        .map(|(g, b)| (b.clone(), vars.iter().filter(|(h, _)| *h == g).count()))
        .collect();
    Ok(make_plain(&body, &groups)?)
}
