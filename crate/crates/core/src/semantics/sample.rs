//! Sample-based equality of semantic vectors.
//!
//! Every vector is reduced to a canonical sparse coordinate map, its
//! fingerprint. On Bang-free spaces this is its exact coordinate vector.
//! A Hom value is fingerprinted by its images of a fixed probe family:
//! the whole basis when the domain is Bang-free, and vacuum kets over
//! pseudorandom points otherwise. A sum of kets is fingerprinted linearly,
//! keyed by the fingerprints of base points and entries.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::eval::apply;
use super::space::{basis, space_of, unflatten, Dims, SpaceExpr};
use super::value::{EvalError, Value};
use crate::linalg::{fmt_q, random_rational, Q};
use crate::logic::{Formula, Node};

pub type Fingerprint = BTreeMap<String, Q>;

fn has_bang(f: &Formula) -> bool {
    match f.node() {
        Node::Atom(_) => false,
        Node::Bang(_) => true,
        Node::Tensor(a, b) | Node::With(a, b) | Node::Lollipop(a, b) => has_bang(a) || has_bang(b),
    }
}

fn stable_hash(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn add_into(acc: &mut Fingerprint, key: String, c: Q) {
    if c.is_zero() {
        return;
    }
    let slot = acc.entry(key.clone()).or_insert_with(Q::zero);
    *slot += c;
    if slot.is_zero() {
        acc.remove(&key);
    }
}

pub fn render_fingerprint(fp: &Fingerprint) -> String {
    let parts: Vec<String> = fp.iter().map(|(k, v)| format!("{k}={}", fmt_q(v))).collect();
    format!("{{{}}}", parts.join(","))
}

struct Inner {
    dims: Dims,
    seed: u64,
    points: usize,
    probes: Mutex<HashMap<Formula, Arc<Vec<Value>>>>,
}

/// Deterministic probe families for comparing vectors of given formulas.
#[derive(Clone)]
pub struct Sampler(Arc<Inner>);

impl Sampler {
    /// `points` is the number of random base points used per Bang domain.
    pub fn new(dims: Dims, seed: u64, points: usize) -> Sampler {
        Sampler(Arc::new(Inner {
            dims,
            seed,
            points,
            probes: Mutex::new(HashMap::new()),
        }))
    }

    pub fn dims(&self) -> &Dims {
        &self.0.dims
    }

    pub fn seed(&self) -> u64 {
        self.0.seed
    }

    fn rng_for(&self, f: &Formula, salt: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0.seed ^ stable_hash(&format!("{salt}:{f}")))
    }

    /// A pseudorandom vector of a formula whose Hom spaces have Bang-free domains.
    pub fn random_value(&self, f: &Formula, rng: &mut ChaCha8Rng) -> Result<Value, EvalError> {
        if !has_bang(f) {
            let s = space_of(f, &self.0.dims)?;
            let n = s.dim().expect("Bang-free");
            let coords: Vec<Q> = (0..n).map(|_| random_rational(rng)).collect();
            return unflatten(&coords, &s);
        }
        Ok(match f.node() {
            Node::Atom(_) => unreachable!(),
            Node::Bang(a) => Value::vacuum(self.random_value(a, rng)?),
            Node::Tensor(a, b) => Value::tensor(self.random_value(a, rng)?, self.random_value(b, rng)?),
            Node::With(a, b) => Value::pair(self.random_value(a, rng)?, self.random_value(b, rng)?),
            Node::Lollipop(..) => return Err(EvalError::Sampling(format!("random operators on {f}"))),
        })
    }

    /// The probe family of a Hom domain.
    pub fn probes(&self, dom: &Formula) -> Result<Arc<Vec<Value>>, EvalError> {
        if let Some(p) = self.0.probes.lock().expect("probe cache").get(dom) {
            return Ok(p.clone());
        }
        let ps = Arc::new(self.make_probes(dom)?);
        self.0.probes.lock().expect("probe cache").insert(dom.clone(), ps.clone());
        Ok(ps)
    }

    fn make_probes(&self, dom: &Formula) -> Result<Vec<Value>, EvalError> {
        if !has_bang(dom) {
            let s = space_of(dom, &self.0.dims)?;
            return (0..s.dim().expect("Bang-free")).map(|i| basis(&s, i)).collect();
        }
        match dom.node() {
            Node::Atom(_) => unreachable!(),
            Node::Bang(a) => {
                let mut rng = self.rng_for(a, "point");
                (0..self.0.points)
                    .map(|_| Ok(Value::vacuum(self.random_value(a, &mut rng)?)))
                    .collect()
            }
            Node::Tensor(a, b) => {
                let (pa, pb) = (self.probes(a)?, self.probes(b)?);
                Ok(pa
                    .iter()
                    .flat_map(|x| pb.iter().map(move |y| Value::tensor(x.clone(), y.clone())))
                    .collect())
            }
            Node::With(a, b) => {
                let mut out: Vec<Value> = self.probes(a)?.iter().map(|x| Value::pair(x.clone(), Value::Zero)).collect();
                out.extend(self.probes(b)?.iter().map(|y| Value::pair(Value::Zero, y.clone())));
                Ok(out)
            }
            Node::Lollipop(..) => {
                let mut rng = self.rng_for(dom, "op");
                (0..self.0.points).map(|_| self.random_value(dom, &mut rng)).collect()
            }
        }
    }

    /// The canonical coordinate map of a vector of formula `f`.
    pub fn fingerprint(&self, v: &Value, f: &Formula) -> Result<Fingerprint, EvalError> {
        let mut out = Fingerprint::new();
        if v.is_zero() {
            return Ok(out);
        }
        match f.node() {
            Node::Atom(_) => {
                let x = v.as_vector().ok_or_else(|| EvalError::Shape(format!("expected a vector of {f}")))?;
                for (i, c) in x.iter().enumerate() {
                    add_into(&mut out, i.to_string(), c.clone());
                }
            }
            Node::With(a, b) => {
                for (k, c) in self.fingerprint(&v.project(0, 2)?, a)? {
                    out.insert(format!("l{k}"), c);
                }
                for (k, c) in self.fingerprint(&v.project(1, 2)?, b)? {
                    out.insert(format!("r{k}"), c);
                }
            }
            Node::Tensor(a, b) => {
                let Value::Tensor(ts) = v else {
                    return Err(EvalError::Shape(format!("expected a tensor of {f}")));
                };
                for (c, x, y) in ts.iter() {
                    let fx = self.fingerprint(x, a)?;
                    let fy = self.fingerprint(y, b)?;
                    for (kx, cx) in &fx {
                        for (ky, cy) in &fy {
                            add_into(&mut out, format!("({kx})({ky})"), c * cx * cy);
                        }
                    }
                }
            }
            Node::Lollipop(a, b) => {
                for (j, probe) in self.probes(a)?.iter().enumerate() {
                    for (k, c) in self.fingerprint(&apply(v, probe)?, b)? {
                        out.insert(format!("{j}:{k}"), c);
                    }
                }
            }
            Node::Bang(a) => {
                let ks = v.as_kets().ok_or_else(|| EvalError::Shape(format!("expected kets of {f}")))?;
                for (c, k) in ks {
                    let pk = render_fingerprint(&self.fingerprint(&k.point, a)?);
                    let mut partial: Vec<(Vec<String>, Q)> = vec![(Vec::new(), c.clone())];
                    for e in &k.entries {
                        let fe = self.fingerprint(e, a)?;
                        let mut next = Vec::new();
                        for (keys, coef) in &partial {
                            for (ke, ce) in &fe {
                                let mut keys = keys.clone();
                                keys.push(ke.clone());
                                next.push((keys, coef * ce));
                            }
                        }
                        partial = next;
                    }
                    for (mut keys, coef) in partial {
                        keys.sort();
                        add_into(&mut out, format!("{pk}[{}]", keys.join(";")), coef);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Equality of two vectors of `f` on the probe families.
    pub fn equal(&self, a: &Value, b: &Value, f: &Formula) -> Result<bool, EvalError> {
        Ok(self.fingerprint(a, f)? == self.fingerprint(b, f)?)
    }

    pub fn space(&self, f: &Formula) -> Result<SpaceExpr, EvalError> {
        space_of(f, &self.0.dims)
    }
}

/// True iff `f` and `g` agree exactly on every sample, compared in `cod`.
pub fn op_equal_on_samples(
    f: &Value,
    g: &Value,
    samples: &[Value],
    cod: &Formula,
    sampler: &Sampler,
) -> Result<bool, EvalError> {
    for s in samples {
        if !sampler.equal(&apply(f, s)?, &apply(g, s)?, cod)? {
            return Ok(false);
        }
    }
    Ok(true)
}
