//! Vectors in the semantic spaces and their linear structure.

use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{RatMatrix, Q};
use super::space::SpaceExpr;
use crate::linalg::fmt_q;
use crate::logic::Proof;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("promotion applied to a non-vacuum ket")]
    UnsupportedKet,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a group-like element")]
    NotGroupLike,
    #[error("value of the wrong shape: {0}")]
    Shape(String),
    #[error("cannot sample {0}")]
    Sampling(String),
}

pub(crate) fn shape(msg: impl Into<String>) -> EvalError {
    EvalError::Shape(msg.into())
}

type Thunk = Box<dyn FnOnce() -> Result<Value, EvalError> + Send>;

/// A value computed on first use and cached.
pub struct Lazy {
    cell: OnceLock<Result<Value, EvalError>>,
    thunk: Mutex<Option<Thunk>>,
}

impl Lazy {
    pub fn ready(v: Value) -> Lazy {
        let cell = OnceLock::new();
        let _ = cell.set(Ok(v));
        Lazy {
            cell,
            thunk: Mutex::new(None),
        }
    }

    pub fn new(f: impl FnOnce() -> Result<Value, EvalError> + Send + 'static) -> Lazy {
        Lazy {
            cell: OnceLock::new(),
            thunk: Mutex::new(Some(Box::new(f))),
        }
    }

    pub fn force(&self) -> Result<Value, EvalError> {
        self.cell
            .get_or_init(|| {
                let f = self.thunk.lock().expect("lazy thunk lock").take();
                f.expect("lazy value forced twice")()
            })
            .clone()
    }
}

/// One symmetric tensor `|v₁,…,vₛ⟩_P`.
#[derive(Clone)]
pub struct Ket {
    pub point: Value,
    pub entries: Vec<Value>,
}

impl Ket {
    pub fn vacuum(point: Value) -> Ket {
        Ket {
            point,
            entries: Vec::new(),
        }
    }

    pub fn is_vacuum(&self) -> bool {
        self.entries.is_empty()
    }
}

pub type NativeFn = dyn Fn(&Value) -> Result<Value, EvalError> + Send + Sync;

/// A linear map between semantic spaces.
#[derive(Clone)]
pub enum Op {
    /// A matrix acting on flattened Bang-free vectors.
    Matrix {
        dom: SpaceExpr,
        cod: SpaceExpr,
        m: Arc<RatMatrix>,
    },
    /// The denotation of a proof with its last hypothesis left open.
    Closure { body: Proof, env: Arc<Vec<Value>> },
    Lin(Arc<Vec<(Q, Op)>>),
    Native { name: String, f: Arc<NativeFn> },
}

#[derive(Clone)]
pub enum Value {
    Zero,
    Vector(Arc<Vec<Q>>),
    With(Arc<(Lazy, Lazy)>),
    Tensor(Arc<Vec<(Q, Value, Value)>>),
    Kets(Arc<Vec<(Q, Ket)>>),
    Op(Op),
}

impl Value {
    pub fn vector(v: Vec<Q>) -> Value {
        Value::Vector(Arc::new(v))
    }

    pub fn basis(dim: usize, i: usize) -> Value {
        let mut v = vec![Q::zero(); dim];
        v[i] = Q::one();
        Value::vector(v)
    }

    pub fn pair(a: Value, b: Value) -> Value {
        Value::With(Arc::new((Lazy::ready(a), Lazy::ready(b))))
    }

    pub fn lazy_pair(a: Lazy, b: Lazy) -> Value {
        Value::With(Arc::new((a, b)))
    }

    /// Right-nested `&` tuple.
    pub fn tuple(mut parts: Vec<Value>) -> Value {
        let last = parts.pop().expect("tuple needs a component");
        parts.into_iter().rev().fold(last, |acc, v| Value::pair(v, acc))
    }

    pub fn tensor(a: Value, b: Value) -> Value {
        if a.is_zero() || b.is_zero() {
            return Value::Zero;
        }
        Value::Tensor(Arc::new(vec![(Q::one(), a, b)]))
    }

    /// Right-nested `⊗` of the given factors.
    pub fn tensor_all(mut parts: Vec<Value>) -> Value {
        let last = parts.pop().expect("tensor needs a factor");
        parts.into_iter().rev().fold(last, |acc, v| Value::tensor(v, acc))
    }

    pub fn vacuum(point: Value) -> Value {
        Value::Kets(Arc::new(vec![(Q::one(), Ket::vacuum(point))]))
    }

    pub fn ket(point: Value, entries: Vec<Value>) -> Value {
        if entries.iter().any(Value::is_zero) {
            return Value::Zero;
        }
        Value::Kets(Arc::new(vec![(Q::one(), Ket { point, entries })]))
    }

    pub fn kets(terms: Vec<(Q, Ket)>) -> Value {
        lin_comb(terms.into_iter().map(|(c, k)| (c, Value::Kets(Arc::new(vec![(Q::one(), k)])))).collect())
            .expect("kets are summable")
    }

    pub fn matrix(dom: &SpaceExpr, cod: &SpaceExpr, m: RatMatrix) -> Value {
        Value::Op(Op::Matrix {
            dom: dom.clone(),
            cod: cod.clone(),
            m: Arc::new(m),
        })
    }

    pub fn native(name: &str, f: impl Fn(&Value) -> Result<Value, EvalError> + Send + Sync + 'static) -> Value {
        Value::Op(Op::Native {
            name: name.to_string(),
            f: Arc::new(f),
        })
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Value::Zero)
    }

    pub fn as_vector(&self) -> Option<&[Q]> {
        match self {
            Value::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_kets(&self) -> Option<&[(Q, Ket)]> {
        match self {
            Value::Kets(k) => Some(k),
            _ => None,
        }
    }

    /// Component `i` of an `n`-fold right-nested `&`.
    pub fn project(&self, i: usize, n: usize) -> Result<Value, EvalError> {
        let mut cur = self.clone();
        for step in 0..n - 1 {
            let pair = match &cur {
                Value::Zero => return Ok(Value::Zero),
                Value::With(p) => p.clone(),
                _ => return Err(shape(format!("projection {i}/{n} from a non-pair"))),
            };
            if step == i {
                return pair.0.force();
            }
            cur = pair.1.force()?;
        }
        Ok(cur)
    }

    pub fn scale(&self, c: &Q) -> Value {
        lin_comb(vec![(c.clone(), self.clone())]).expect("scaling never fails")
    }

    pub fn add(&self, other: &Value) -> Result<Value, EvalError> {
        lin_comb(vec![(Q::one(), self.clone()), (Q::one(), other.clone())])
    }

    /// Syntactic identity: exact for vectors and matrices, by pointer for closures.
    pub fn identical(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Zero, Value::Zero) => true,
            (Value::Vector(a), Value::Vector(b)) => a == b,
            (Value::With(a), Value::With(b)) => Arc::ptr_eq(a, b),
            (Value::Tensor(a), Value::Tensor(b)) => {
                Arc::ptr_eq(a, b)
                    || (a.len() == b.len()
                        && a.iter().zip(b.iter()).all(|(x, y)| x.0 == y.0 && x.1.identical(&y.1) && x.2.identical(&y.2)))
            }
            (Value::Kets(a), Value::Kets(b)) => {
                Arc::ptr_eq(a, b)
                    || (a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| x.0 == y.0 && x.1.identical(&y.1)))
            }
            (Value::Op(a), Value::Op(b)) => a.identical(b),
            _ => false,
        }
    }
}

impl Ket {
    pub fn identical(&self, other: &Ket) -> bool {
        self.point.identical(&other.point)
            && self.entries.len() == other.entries.len()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| a.identical(b))
    }
}

impl Op {
    pub fn identical(&self, other: &Op) -> bool {
        match (self, other) {
            (Op::Matrix { dom: d1, cod: c1, m: m1 }, Op::Matrix { dom: d2, cod: c2, m: m2 }) => {
                d1 == d2 && c1 == c2 && m1 == m2
            }
            (Op::Closure { body: b1, env: e1 }, Op::Closure { body: b2, env: e2 }) => {
                b1.ptr_id() == b2.ptr_id()
                    && (Arc::ptr_eq(e1, e2) || (e1.len() == e2.len() && e1.iter().zip(e2.iter()).all(|(x, y)| x.identical(y))))
            }
            (Op::Lin(a), Op::Lin(b)) => Arc::ptr_eq(a, b),
            (Op::Native { f: a, .. }, Op::Native { f: b, .. }) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

/// The linear combination `Σ cᵢ vᵢ` of values of one space.
pub fn lin_comb(terms: Vec<(Q, Value)>) -> Result<Value, EvalError> {
    let terms: Vec<(Q, Value)> = terms
        .into_iter()
        .filter(|(c, v)| !c.is_zero() && !v.is_zero())
        .collect();
    if terms.is_empty() {
        return Ok(Value::Zero);
    }
    if terms.len() == 1 && terms[0].0.is_one() {
        return Ok(terms.into_iter().next().unwrap().1);
    }
    match &terms[0].1 {
        Value::Zero => unreachable!(),
        Value::Vector(first) => {
            let mut acc = vec![Q::zero(); first.len()];
            for (c, v) in &terms {
                let Value::Vector(v) = v else {
                    return Err(shape("adding a vector to a non-vector"));
                };
                if v.len() != acc.len() {
                    return Err(EvalError::DimensionMismatch(format!("{} vs {}", v.len(), acc.len())));
                }
                for (a, x) in acc.iter_mut().zip(v.iter()) {
                    if !x.is_zero() {
                        *a += c * x;
                    }
                }
            }
            if acc.iter().all(Zero::is_zero) {
                return Ok(Value::Zero);
            }
            Ok(Value::vector(acc))
        }
        Value::With(_) => {
            let mut pairs = Vec::with_capacity(terms.len());
            for (c, v) in terms {
                let Value::With(p) = v else {
                    return Err(shape("adding a pair to a non-pair"));
                };
                pairs.push((c, p));
            }
            let pairs = Arc::new(pairs);
            let left = pairs.clone();
            let right = pairs;
            Ok(Value::lazy_pair(
                Lazy::new(move || {
                    let parts = left.iter().map(|(c, p)| Ok((c.clone(), p.0.force()?))).collect::<Result<_, EvalError>>()?;
                    lin_comb(parts)
                }),
                Lazy::new(move || {
                    let parts = right.iter().map(|(c, p)| Ok((c.clone(), p.1.force()?))).collect::<Result<_, EvalError>>()?;
                    lin_comb(parts)
                }),
            ))
        }
        Value::Tensor(_) => {
            let mut out = Vec::new();
            for (c, v) in &terms {
                let Value::Tensor(ts) = v else {
                    return Err(shape("adding a tensor to a non-tensor"));
                };
                out.extend(ts.iter().map(|(d, a, b)| (c * d, a.clone(), b.clone())));
            }
            Ok(Value::Tensor(Arc::new(out)))
        }
        Value::Kets(_) => {
            let mut out: Vec<(Q, Ket)> = Vec::new();
            for (c, v) in &terms {
                let Value::Kets(ks) = v else {
                    return Err(shape("adding kets to a non-ket"));
                };
                for (d, k) in ks.iter() {
                    let coef = c * d;
                    match out.iter_mut().find(|(_, o)| o.identical(k)) {
                        Some(slot) => slot.0 += coef,
                        None => out.push((coef, k.clone())),
                    }
                }
            }
            out.retain(|(c, _)| !c.is_zero());
            if out.is_empty() {
                return Ok(Value::Zero);
            }
            Ok(Value::Kets(Arc::new(out)))
        }
        Value::Op(_) => {
            let mut out = Vec::new();
            for (c, v) in terms {
                let Value::Op(o) = v else {
                    return Err(shape("adding an operator to a non-operator"));
                };
                out.push((c, o));
            }
            Ok(Value::Op(Op::Lin(Arc::new(out))))
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Zero => write!(f, "0"),
            Value::Vector(v) => {
                let parts: Vec<String> = v.iter().map(fmt_q).collect();
                write!(f, "({})", parts.join(", "))
            }
            Value::With(_) => write!(f, "<pair>"),
            Value::Tensor(ts) => write!(f, "<tensor of {} terms>", ts.len()),
            Value::Kets(ks) => write!(f, "<{} kets>", ks.len()),
            Value::Op(o) => write!(f, "{o:?}"),
        }
    }
}

impl fmt::Debug for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Matrix { m, .. } => write!(f, "<matrix {}x{}>", m.rows(), m.cols()),
            Op::Closure { .. } => write!(f, "<closure>"),
            Op::Lin(ts) => write!(f, "<combination of {} operators>", ts.len()),
            Op::Native { name, .. } => write!(f, "<{name}>"),
        }
    }
}
