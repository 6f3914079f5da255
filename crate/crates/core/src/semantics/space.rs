//! Semantic spaces of formulas and the coordinates of Bang-free vectors.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::eval::apply;
use super::value::{lin_comb, shape, EvalError, Value};
use crate::linalg::{RatMatrix, Q};
use crate::logic::{Formula, Node};

/// Dimensions assigned to atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Dims {
    atoms: BTreeMap<String, usize>,
    fallback: Option<usize>,
}

impl Dims {
    /// Every atom gets dimension `d`.
    pub fn uniform(d: usize) -> Dims {
        Dims {
            atoms: BTreeMap::new(),
            fallback: Some(d),
        }
    }

    pub fn with(mut self, atom: &str, d: usize) -> Dims {
        self.atoms.insert(atom.to_string(), d);
        self
    }

    pub fn get(&self, atom: &str) -> Option<usize> {
        self.atoms.get(atom).copied().or(self.fallback)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpaceExpr {
    Base(usize),
    TensorS(Box<SpaceExpr>, Box<SpaceExpr>),
    SumS(Box<SpaceExpr>, Box<SpaceExpr>),
    HomS(Box<SpaceExpr>, Box<SpaceExpr>),
    BangS(Box<SpaceExpr>),
}

impl SpaceExpr {
    /// Finite dimension, or `None` when a Bang occurs.
    pub fn dim(&self) -> Option<usize> {
        match self {
            SpaceExpr::Base(d) => Some(*d),
            SpaceExpr::SumS(a, b) => Some(a.dim()? + b.dim()?),
            SpaceExpr::TensorS(a, b) | SpaceExpr::HomS(a, b) => Some(a.dim()? * b.dim()?),
            SpaceExpr::BangS(_) => None,
        }
    }
}

pub fn space_of(f: &Formula, dims: &Dims) -> Result<SpaceExpr, EvalError> {
    let b = |g: &Formula| space_of(g, dims).map(Box::new);
    Ok(match f.node() {
        Node::Atom(n) => SpaceExpr::Base(dims.get(n).ok_or_else(|| EvalError::DimensionMismatch(format!("no dimension for atom {n}")))?),
        Node::Tensor(x, y) => SpaceExpr::TensorS(b(x)?, b(y)?),
        Node::With(x, y) => SpaceExpr::SumS(b(x)?, b(y)?),
        Node::Lollipop(x, y) => SpaceExpr::HomS(b(x)?, b(y)?),
        Node::Bang(x) => SpaceExpr::BangS(b(x)?),
    })
}

fn finite(s: &SpaceExpr) -> Result<usize, EvalError> {
    s.dim().ok_or_else(|| EvalError::DimensionMismatch("space is not finite dimensional".into()))
}

/// The `i`-th basis vector of a Bang-free space.
pub fn basis(s: &SpaceExpr, i: usize) -> Result<Value, EvalError> {
    Ok(match s {
        SpaceExpr::Base(d) => Value::basis(*d, i),
        SpaceExpr::SumS(a, b) => {
            let da = finite(a)?;
            if i < da {
                Value::pair(basis(a, i)?, Value::Zero)
            } else {
                Value::pair(Value::Zero, basis(b, i - da)?)
            }
        }
        SpaceExpr::TensorS(a, b) => {
            let db = finite(b)?;
            Value::tensor(basis(a, i / db)?, basis(b, i % db)?)
        }
        SpaceExpr::HomS(a, b) => {
            let (da, db) = (finite(a)?, finite(b)?);
            let mut m = RatMatrix::zeros(db, da);
            m.set(i / da, i % da, Q::one());
            Value::Op(super::value::Op::Matrix {
                dom: (**a).clone(),
                cod: (**b).clone(),
                m: Arc::new(m),
            })
        }
        SpaceExpr::BangS(_) => return Err(EvalError::DimensionMismatch("no basis for a Bang space".into())),
    })
}

/// Coordinates of a vector in a Bang-free space.
pub fn flatten(v: &Value, s: &SpaceExpr) -> Result<Vec<Q>, EvalError> {
    let n = finite(s)?;
    if v.is_zero() {
        return Ok(vec![Q::zero(); n]);
    }
    match s {
        SpaceExpr::Base(d) => {
            let x = v.as_vector().ok_or_else(|| shape("expected a base vector"))?;
            if x.len() != *d {
                return Err(EvalError::DimensionMismatch(format!("{} vs {d}", x.len())));
            }
            Ok(x.to_vec())
        }
        SpaceExpr::SumS(a, b) => {
            let mut out = flatten(&v.project(0, 2)?, a)?;
            out.extend(flatten(&v.project(1, 2)?, b)?);
            Ok(out)
        }
        SpaceExpr::TensorS(a, b) => {
            let Value::Tensor(ts) = v else {
                return Err(shape("expected a tensor"));
            };
            let db = finite(b)?;
            let mut out = vec![Q::zero(); n];
            for (c, x, y) in ts.iter() {
                let fx = flatten(x, a)?;
                let fy = flatten(y, b)?;
                for (i, xi) in fx.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    for (j, yj) in fy.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                        out[i * db + j] += c * xi * yj;
                    }
                }
            }
            Ok(out)
        }
        SpaceExpr::HomS(a, b) => {
            let (da, db) = (finite(a)?, finite(b)?);
            let mut m = RatMatrix::zeros(db, da);
            for j in 0..da {
                let col = flatten(&apply(v, &basis(a, j)?)?, b)?;
                for (i, x) in col.into_iter().enumerate() {
                    m.set(i, j, x);
                }
            }
            Ok(m.data().to_vec())
        }
        SpaceExpr::BangS(_) => unreachable!(),
    }
}

/// The vector with the given coordinates.
pub fn unflatten(x: &[Q], s: &SpaceExpr) -> Result<Value, EvalError> {
    let n = finite(s)?;
    if x.len() != n {
        return Err(EvalError::DimensionMismatch(format!("{} coordinates for dimension {n}", x.len())));
    }
    if x.iter().all(Zero::is_zero) {
        return Ok(Value::Zero);
    }
    match s {
        SpaceExpr::Base(_) => Ok(Value::vector(x.to_vec())),
        SpaceExpr::SumS(a, b) => {
            let da = finite(a)?;
            Ok(Value::pair(unflatten(&x[..da], a)?, unflatten(&x[da..], b)?))
        }
        SpaceExpr::TensorS(a, b) => {
            let db = finite(b)?;
            let mut terms = Vec::new();
            for (k, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                terms.push((c.clone(), Value::tensor(basis(a, k / db)?, basis(b, k % db)?)));
            }
            lin_comb(terms)
        }
        SpaceExpr::HomS(a, b) => {
            let (da, db) = (finite(a)?, finite(b)?);
            Ok(Value::Op(super::value::Op::Matrix {
                dom: (**a).clone(),
                cod: (**b).clone(),
                m: Arc::new(RatMatrix::from_data(db, da, x.to_vec())),
            }))
        }
        SpaceExpr::BangS(_) => unreachable!(),
    }
}
