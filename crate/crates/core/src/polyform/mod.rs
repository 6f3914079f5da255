//! Polynomial view of plain proofs on distributions over data labels.
//!
//! A label is a word over the tape alphabet, or a one-element word naming a
//! symbol, state or head position. A [`DistVec`] is a formal rational
//! combination of labels; its semantic image is the same combination of the
//! denotations of the encoded labels.

mod closed;
mod extract;
mod poly;

pub use closed::*;
pub use extract::*;
pub use poly::*;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::encodings::{nbool_proof, slist_proof, EncodingError};
use crate::linalg::{fmt_q, Q};
use crate::logic::{Formula, LogicError};
use crate::machine::show_word;
use crate::semantics::{denote, lin_comb, EvalError, Value};

pub type Label = Vec<usize>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("oracle output {0} is not among the output labels")]
    OutputNotInQ(String),
    #[error("output denotations are not certified independent: {0}")]
    IndependenceUnverified(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// How labels of one slot are turned into proofs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelKind {
    /// Words over an `s`-symbol alphabet, encoded as `ₛlist`.
    Word(usize),
    /// One-element labels `[i]` with `i < n`, encoded as `ₙbool`.
    Bool(usize),
}

impl LabelKind {
    pub fn formula(self, a: &Formula) -> Formula {
        match self {
            LabelKind::Word(s) => Formula::slist_type(s, a),
            LabelKind::Bool(n) => Formula::nbool_type(n, a),
        }
    }

    pub fn denote(self, label: &[usize], a: &Formula) -> Result<Value, PolyError> {
        let p = match self {
            LabelKind::Word(s) => slist_proof(s, label, a)?,
            LabelKind::Bool(n) => match label {
                [i] => nbool_proof(*i, n, a)?,
                _ => return Err(PolyError::Malformed(format!("boolean label {}", show_word(label)))),
            },
        };
        Ok(denote(&p)?)
    }
}

/// Finite rational combination of labels; zero coefficients are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DistVec {
    coeffs: BTreeMap<Label, Q>,
}

impl DistVec {
    pub fn new() -> DistVec {
        DistVec::default()
    }

    pub fn singleton(label: Label) -> DistVec {
        let mut d = DistVec::new();
        d.add_term(label, Q::from_integer(1.into()));
        d
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Label, Q)>) -> DistVec {
        let mut d = DistVec::new();
        for (l, c) in pairs {
            d.add_term(l, c);
        }
        d
    }

    pub fn add_term(&mut self, label: Label, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(label.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&label);
        }
    }

    pub fn add(&mut self, other: &DistVec, scale: &Q) {
        for (l, c) in &other.coeffs {
            self.add_term(l.clone(), c * scale);
        }
    }

    pub fn coeff(&self, label: &[usize]) -> Q {
        self.coeffs.get(label).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &Q)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> Vec<Label> {
        self.coeffs.keys().cloned().collect()
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> Q {
        self.coeffs.values().fold(Q::zero(), |acc, c| acc + c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `Σ λ_ρ ⟦ρ⟧` for labels of the given kind over base `a`.
    pub fn denote(&self, kind: LabelKind, a: &Formula) -> Result<Value, PolyError> {
        let terms = self
            .coeffs
            .iter()
            .map(|(l, c)| Ok((c.clone(), kind.denote(l, a)?)))
            .collect::<Result<Vec<_>, PolyError>>()?;
        Ok(lin_comb(terms)?)
    }
}

/// One `coeff * "label"` line per label.
impl fmt::Display for DistVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (l, c) in &self.coeffs {
            writeln!(f, "{} * \"{}\"", fmt_q(c), show_word(l))?;
        }
        Ok(())
    }
}

/// All words of length at most `len` over `s` symbols, shortest first.
pub fn words_up_to(s: usize, len: usize) -> Vec<Label> {
    let mut out: Vec<Label> = vec![Vec::new()];
    let mut layer: Vec<Label> = vec![Vec::new()];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..s).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// The one-element labels `[0] … [n-1]`.
pub fn indices(n: usize) -> Vec<Label> {
    (0..n).map(|i| vec![i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qf;

    #[test]
    fn distvec_cancels_and_sums() {
        let mut d = DistVec::from_pairs([(vec![0], qf(1, 2)), (vec![1], qf(1, 2))]);
        assert_eq!(d.mass(), qf(1, 1));
        d.add_term(vec![0], qf(-1, 2));
        assert_eq!(d.support(), vec![vec![1]]);
        assert_eq!(d.to_string(), "1/2 * \"1\"\n");
    }

    #[test]
    fn word_enumeration() {
        assert_eq!(words_up_to(2, 2).len(), 7);
        assert_eq!(words_up_to(3, 1), vec![vec![], vec![0], vec![1], vec![2]]);
    }
}
