//! The rule-by-rule interpreter of proofs as multilinear maps.

use std::sync::Arc;

use num_traits::One;

use super::ket::{counit, dereliction, split_ket};
use super::space::{flatten, unflatten};
use super::value::{lin_comb, shape, EvalError, Ket, Lazy, Op, Value};
use crate::linalg::Q;
use crate::logic::{Proof, Rule};

/// Applies an operator value to an argument.
pub fn apply(f: &Value, x: &Value) -> Result<Value, EvalError> {
    match f {
        Value::Zero => Ok(Value::Zero),
        Value::Op(op) => apply_op(op, x),
        _ => Err(shape("applying a non-operator")),
    }
}

pub fn apply_op(op: &Op, x: &Value) -> Result<Value, EvalError> {
    if x.is_zero() {
        return Ok(Value::Zero);
    }
    match op {
        Op::Matrix { dom, cod, m } => unflatten(&m.apply(&flatten(x, dom)?), cod),
        Op::Closure { body, env } => {
            let mut inputs = Vec::with_capacity(env.len() + 1);
            inputs.extend_from_slice(env);
            inputs.push(x.clone());
            eval_owned(body, inputs)
        }
        Op::Lin(terms) => {
            let parts = terms
                .iter()
                .map(|(c, o)| Ok((c.clone(), apply_op(o, x)?)))
                .collect::<Result<Vec<_>, EvalError>>()?;
            lin_comb(parts)
        }
        Op::Native { f, .. } => f(x),
    }
}

/// Applies a curried operator to several arguments in turn.
pub fn apply_all(f: &Value, args: &[Value]) -> Result<Value, EvalError> {
    args.iter().try_fold(f.clone(), |acc, a| apply(&acc, a))
}

fn kets_of(x: &Value) -> Result<&[(Q, Ket)], EvalError> {
    x.as_kets().ok_or_else(|| shape("expected kets at a Bang hypothesis"))
}

fn ket_value(k: Ket) -> Value {
    Value::ket(k.point, k.entries)
}

/// `front` followed by clones of `rest`, in one allocation.
fn with_front(front: [Value; 2], rest: &[Value]) -> Vec<Value> {
    let mut v = Vec::with_capacity(rest.len() + 2);
    v.extend(front);
    v.extend_from_slice(rest);
    v
}

/// Evaluates the denotation of `p` on one vector per hypothesis.
pub fn eval(p: &Proof, inputs: &[Value]) -> Result<Value, EvalError> {
    eval_owned(p, inputs.to_vec())
}

/// [`eval`] on an owned input list, which the single-premise rules update in place.
fn eval_owned(p: &Proof, mut inputs: Vec<Value>) -> Result<Value, EvalError> {
    let n = p.hyps().len();
    if inputs.len() != n {
        return Err(EvalError::DimensionMismatch(format!("{} inputs for {n} hypotheses", inputs.len())));
    }
    if inputs.iter().any(Value::is_zero) {
        return Ok(Value::Zero);
    }
    let prem = p.premises();
    match p.rule() {
        Rule::Axiom => Ok(inputs.swap_remove(0)),
        Rule::Cut => {
            let k = prem[0].hyps().len();
            let mut rest = inputs.split_off(k);
            let v = eval_owned(&prem[0], inputs)?;
            rest.insert(0, v);
            eval_owned(&prem[1], rest)
        }
        Rule::TensorR => {
            let k = prem[0].hyps().len();
            let rest = inputs.split_off(k);
            let a = eval_owned(&prem[0], inputs)?;
            let b = eval_owned(&prem[1], rest)?;
            Ok(Value::tensor(a, b))
        }
        Rule::TensorL => {
            let Value::Tensor(ts) = &inputs[0] else {
                return Err(shape("expected a tensor at a left tensor rule"));
            };
            let mut out = Vec::with_capacity(ts.len());
            for (c, a, b) in ts.iter() {
                out.push((c.clone(), eval_owned(&prem[0], with_front([a.clone(), b.clone()], &inputs[1..]))?));
            }
            lin_comb(out)
        }
        Rule::WithR => {
            let env = Arc::new(inputs);
            let (p0, p1) = (prem[0].clone(), prem[1].clone());
            let (e0, e1) = (env.clone(), env);
            Ok(Value::lazy_pair(
                Lazy::new(move || eval(&p0, &e0)),
                Lazy::new(move || eval(&p1, &e1)),
            ))
        }
        Rule::WithL { index, arity } => {
            inputs[0] = inputs[0].project(*index, *arity)?;
            eval_owned(&prem[0], inputs)
        }
        Rule::LolliR => Ok(Value::Op(Op::Closure {
            body: prem[0].clone(),
            env: Arc::new(inputs),
        })),
        Rule::LolliL => {
            let k = prem[0].hyps().len();
            let mut rest = inputs.split_off(1 + k);
            let f = inputs.remove(0);
            let a = eval_owned(&prem[0], inputs)?;
            rest.insert(0, apply(&f, &a)?);
            eval_owned(&prem[1], rest)
        }
        Rule::Dereliction => {
            inputs[0] = dereliction(&inputs[0])?;
            eval_owned(&prem[0], inputs)
        }
        Rule::Promotion => promote(&prem[0], &inputs),
        Rule::Contraction => {
            let mut out = Vec::new();
            for (c, k) in kets_of(&inputs[0])? {
                for (l, r) in split_ket(k) {
                    let v = eval_owned(&prem[0], with_front([ket_value(l), ket_value(r)], &inputs[1..]))?;
                    out.push((c.clone(), v));
                }
            }
            lin_comb(out)
        }
        Rule::Weakening => {
            let e = counit(&inputs[0])?;
            inputs.remove(0);
            Ok(eval_owned(&prem[0], inputs)?.scale(&e))
        }
        Rule::Exchange(perm) => {
            let mut old = vec![Value::Zero; n];
            for (j, &i) in perm.iter().enumerate() {
                old[i] = std::mem::replace(&mut inputs[j], Value::Zero);
            }
            eval_owned(&prem[0], old)
        }
    }
}

/// Promotion on sums of vacuum kets: each tensor of vacua `⊗ᵢ|∅⟩_{Pᵢ}` goes to
/// the vacuum over the premise's value at those vacua.
fn promote(premise: &Proof, inputs: &[Value]) -> Result<Value, EvalError> {
    let mut choices: Vec<(Q, Vec<Value>)> = vec![(Q::one(), Vec::new())];
    for x in inputs {
        let ks = kets_of(x)?;
        if ks.iter().any(|(_, k)| !k.is_vacuum()) {
            return Err(EvalError::UnsupportedKet);
        }
        let mut next = Vec::with_capacity(choices.len() * ks.len());
        for (c, pts) in &choices {
            for (d, k) in ks {
                let mut pts = pts.clone();
                pts.push(Value::vacuum(k.point.clone()));
                next.push((c * d, pts));
            }
        }
        choices = next;
    }
    let mut out = Vec::with_capacity(choices.len());
    for (c, vacua) in choices {
        let point = eval_owned(premise, vacua)?;
        if !point.is_zero() {
            out.push((c, Ket::vacuum(point)));
        }
    }
    Ok(Value::kets(out))
}

/// Curries every hypothesis, giving a closed proof of `A₁ ⊸ … ⊸ Aₙ ⊸ B`.
pub fn curry(p: &Proof) -> Proof {
    let mut q = p.clone();
    for _ in 0..p.hyps().len() {
        q = Proof::lolli_r(q).expect("abstraction is always valid");
    }
    q
}

/// The denotation of a proof as a value of its curried conclusion.
pub fn denote(p: &Proof) -> Result<Value, EvalError> {
    eval(&curry(p), &[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::logic::term::{compile_closed, lam, proj, var};
    use crate::logic::Formula;

    #[test]
    fn bool_denotes_projection() {
        let a = Formula::atom("A");
        let a2 = Formula::power(&a, 2);
        for i in 0..2 {
            let p = compile_closed(&lam("x", &a2, proj(i, 2, var("x")))).unwrap();
            let f = denote(&p).unwrap();
            let x = Value::pair(Value::vector(vec![q(3)]), Value::vector(vec![q(5)]));
            let y = apply(&f, &x).unwrap();
            assert_eq!(y.as_vector().unwrap(), &[q([3, 5][i])]);
        }
    }
}
