//! The coalgebra structure of `!V` on finite sums of kets.

use num_traits::{One, Zero};

use super::value::{lin_comb, shape, EvalError, Ket, Value};
use crate::linalg::Q;

fn ket_terms(x: &Value) -> Result<Vec<(Q, Ket)>, EvalError> {
    match x {
        Value::Zero => Ok(Vec::new()),
        Value::Kets(ks) => Ok(ks.to_vec()),
        _ => Err(shape("expected a sum of kets")),
    }
}

/// `d|∅⟩_P = P`, `d|v⟩_P = v`, and zero on longer kets.
pub fn dereliction(x: &Value) -> Result<Value, EvalError> {
    let mut out = Vec::new();
    for (c, k) in ket_terms(x)? {
        match k.entries.len() {
            0 => out.push((c, k.point)),
            1 => out.push((c, k.entries[0].clone())),
            _ => {}
        }
    }
    lin_comb(out)
}

/// All splittings `|v_I⟩_P ⊗ |v_{I^c}⟩_P` of one ket, as (left, right) pairs.
pub fn split_ket(k: &Ket) -> Vec<(Ket, Ket)> {
    let s = k.entries.len();
    (0..1usize << s)
        .map(|mask| {
            let pick = |inside: bool| Ket {
                point: k.point.clone(),
                entries: (0..s)
                    .filter(|i| ((mask >> i) & 1 == 1) == inside)
                    .map(|i| k.entries[i].clone())
                    .collect(),
            };
            (pick(true), pick(false))
        })
        .collect()
}

/// The coproduct `Δ`, as a tensor in `!V ⊗ !V`.
pub fn comultiply(x: &Value) -> Result<Value, EvalError> {
    let mut out = Vec::new();
    for (c, k) in ket_terms(x)? {
        for (l, r) in split_ket(&k) {
            out.push((c.clone(), Value::tensor(Value::ket(l.point, l.entries), Value::ket(r.point, r.entries))));
        }
    }
    lin_comb(out)
}

/// The counit: vacuum kets go to 1, longer kets to 0.
pub fn counit(x: &Value) -> Result<Q, EvalError> {
    Ok(ket_terms(x)?
        .into_iter()
        .filter(|(_, k)| k.is_vacuum())
        .fold(Q::zero(), |acc, (c, _)| acc + c))
}

fn single_vacuum(x: &Value) -> Result<Value, EvalError> {
    match x {
        Value::Kets(ks) if ks.len() == 1 && ks[0].0.is_one() && ks[0].1.is_vacuum() => Ok(ks[0].1.point.clone()),
        _ => Err(EvalError::NotGroupLike),
    }
}

/// The pairing of two group-like elements into the product coalgebra.
pub fn pair_grouplike(c: &Value, d: &Value) -> Result<Value, EvalError> {
    single_vacuum(c)?;
    single_vacuum(d)?;
    Ok(Value::tensor(c.clone(), d.clone()))
}

fn single_primitive(x: &Value) -> Result<Value, EvalError> {
    match x {
        Value::Kets(ks) if ks.len() == 1 && ks[0].1.entries.len() == 1 => Ok(Value::vacuum(ks[0].1.point.clone())),
        _ => Err(shape("expected a primitive element |v>_P")),
    }
}

/// The pairing of primitives `x` over `c` and `y` over `d`: `c ⊗ y + x ⊗ d`.
pub fn pair_primitive(x: &Value, y: &Value) -> Result<Value, EvalError> {
    let c = single_primitive(x)?;
    let d = single_primitive(y)?;
    lin_comb(vec![(Q::one(), Value::tensor(c, y.clone())), (Q::one(), Value::tensor(x.clone(), d))])
}

fn tensor_terms(z: &Value) -> Result<Vec<(Q, Value, Value)>, EvalError> {
    match z {
        Value::Zero => Ok(Vec::new()),
        Value::Tensor(ts) => Ok(ts.to_vec()),
        _ => Err(shape("expected a tensor")),
    }
}

/// The projection `id ⊗ ε` from the product coalgebra onto its first factor.
pub fn project_left(z: &Value) -> Result<Value, EvalError> {
    let mut out = Vec::new();
    for (c, a, b) in tensor_terms(z)? {
        out.push((c * counit(&b)?, a));
    }
    lin_comb(out)
}

/// The projection `ε ⊗ id` onto the second factor.
pub fn project_right(z: &Value) -> Result<Value, EvalError> {
    let mut out = Vec::new();
    for (c, a, b) in tensor_terms(z)? {
        out.push((c * counit(&a)?, b));
    }
    lin_comb(out)
}

/// The coproduct of the product coalgebra `!C ⊗ !D`, valued in `(!C ⊗ !D) ⊗ (!C ⊗ !D)`.
pub fn comultiply_product(z: &Value) -> Result<Value, EvalError> {
    let ket = |k: Ket| Value::ket(k.point, k.entries);
    let mut out = Vec::new();
    for (c, a, b) in tensor_terms(z)? {
        for (ca, ka) in ket_terms(&a)? {
            for (cb, kb) in ket_terms(&b)? {
                for (a1, a2) in split_ket(&ka) {
                    for (b1, b2) in split_ket(&kb) {
                        let left = Value::tensor(ket(a1.clone()), ket(b1));
                        let right = Value::tensor(ket(a2.clone()), ket(b2));
                        out.push((&c * &ca * &cb, Value::tensor(left, right)));
                    }
                }
            }
        }
    }
    lin_comb(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn pt(x: i64) -> Value {
        Value::vector(vec![q(x), q(1)])
    }

    #[test]
    fn dereliction_table() {
        assert!(dereliction(&Value::vacuum(pt(3))).unwrap().identical(&pt(3)));
        assert!(dereliction(&Value::ket(pt(3), vec![pt(5)])).unwrap().identical(&pt(5)));
        assert!(dereliction(&Value::ket(pt(3), vec![pt(5), pt(7)])).unwrap().is_zero());
    }

    #[test]
    fn counit_is_linear() {
        let x = lin_comb(vec![(q(3), Value::vacuum(pt(1))), (q(-2), Value::vacuum(pt(2)))]).unwrap();
        assert_eq!(counit(&x).unwrap(), q(1));
        assert_eq!(counit(&Value::ket(pt(1), vec![pt(2)])).unwrap(), q(0));
    }

    #[test]
    fn comultiply_counts_subsets() {
        let k = Value::ket(pt(0), vec![pt(1), pt(2)]);
        match comultiply(&k).unwrap() {
            Value::Tensor(ts) => assert_eq!(ts.len(), 4),
            other => panic!("unexpected {other:?}"),
        }
    }
}
