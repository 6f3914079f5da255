//! The polynomials `g_π^τ` from a machine oracle and `f_ψ^τ` from the evaluator.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{CommPoly, Var};
use super::{DistVec, Label, LabelKind, PolyError};
use crate::linalg::{q, RatMatrix, Q};
use crate::logic::plain::plain_shape;
use crate::logic::{Formula, Proof};
use crate::machine::{show_word, Move, TuringMachine};
use crate::semantics::{eval, Fingerprint, Sampler, Value};

type OracleFn = dyn Fn(&[Vec<Label>]) -> Label + Send + Sync;

/// The body of a plain proof as a function on labels: one tuple of
/// `degrees[i]` labels per slot, in the body's hypothesis order.
pub struct BodyOracle {
    pub degrees: Vec<usize>,
    f: Box<OracleFn>,
}

impl BodyOracle {
    pub fn new(degrees: Vec<usize>, f: impl Fn(&[Vec<Label>]) -> Label + Send + Sync + 'static) -> BodyOracle {
        BodyOracle { degrees, f: Box::new(f) }
    }

    pub fn call(&self, args: &[Vec<Label>]) -> Label {
        (self.f)(args)
    }
}

fn head(w: &[usize]) -> usize {
    w.last().copied().unwrap_or(0)
}

fn tail(w: &[usize]) -> Label {
    w[..w.len().saturating_sub(1)].to_vec()
}

pub(crate) fn shift(d: Move) -> isize {
    match d {
        Move::Left => -1,
        Move::Right => 1,
        Move::Stay => 0,
    }
}

/// Left tape body: copies `S,S,S | T | q,q`.
pub fn left_oracle(m: &TuringMachine) -> BodyOracle {
    let m = m.clone();
    BodyOracle::new(vec![3, 1, 2], move |x| {
        let (s, t, q) = (&x[0], &x[1], &x[2]);
        let new = m.delta(head(&s[1]), q[0][0]).0;
        let dir = m.delta(head(&s[2]), q[1][0]).2;
        let mut out = tail(&s[0]);
        match dir {
            Move::Left => {}
            Move::Right => out.extend([new, head(&t[0])]),
            Move::Stay => out.push(new),
        }
        out
    })
}

/// Right tape body: copies `S,S | T,T | q,q`.
pub fn right_oracle(m: &TuringMachine) -> BodyOracle {
    let m = m.clone();
    BodyOracle::new(vec![2, 2, 2], move |x| {
        let (s, t, q) = (&x[0], &x[1], &x[2]);
        let new = m.delta(head(&s[0]), q[0][0]).0;
        let dir = m.delta(head(&s[1]), q[1][0]).2;
        let mut out = tail(&t[1]);
        match dir {
            Move::Left => out.extend([head(&t[0]), new]),
            Move::Right => {}
            Move::Stay => out.push(head(&t[0])),
        }
        out
    })
}

/// State body: copies `S | | q`.
pub fn state_oracle(m: &TuringMachine) -> BodyOracle {
    let m = m.clone();
    BodyOracle::new(vec![1, 0, 1], move |x| vec![m.delta(head(&x[0][0]), x[2][0][0]).1])
}

/// Body of the relative symbol at position `pos`; slots are the `2h+1`
/// cells then the state. The centre and state slots hold the selector
/// copy first, then the copy feeding the new symbol if one is read.
pub fn relstep_symbol_oracle(h: usize, pos: isize, m: &TuringMachine) -> BodyOracle {
    let hi = h as isize;
    let mut degrees = vec![0; 2 * h + 2];
    degrees[h] += 1;
    degrees[2 * h + 1] += 1;
    for d in (0..m.moves()).filter_map(Move::from_index) {
        let p = pos + shift(d);
        if p == 0 {
            degrees[h] += 1;
            degrees[2 * h + 1] += 1;
        } else if p.abs() <= hi {
            degrees[(p + hi) as usize] += 1;
        }
    }
    let m = m.clone();
    BodyOracle::new(degrees, move |x| {
        let (centre, state) = (&x[h], &x[2 * h + 1]);
        let p = pos + shift(m.delta(centre[0][0], state[0][0]).2);
        let sym = if p == 0 {
            m.delta(centre[1][0], state[1][0]).0
        } else if p.abs() <= hi {
            x[(p + hi) as usize][0][0]
        } else {
            0
        };
        vec![sym]
    })
}

pub fn relstep_state_oracle(h: usize, m: &TuringMachine) -> BodyOracle {
    let mut degrees = vec![0; 2 * h + 2];
    degrees[h] = 1;
    degrees[2 * h + 1] = 1;
    let m = m.clone();
    BodyOracle::new(degrees, move |x| vec![m.delta(x[h][0][0], x[2 * h + 1][0][0]).1])
}

/// Absolute symbol `pos`; slots are `h` cells, the state, the head.
pub fn absstep_symbol_oracle(h: usize, pos: usize, m: &TuringMachine) -> BodyOracle {
    let mut degrees = vec![0; h + 2];
    degrees[pos] = 1;
    degrees[h] = 1;
    degrees[h + 1] = 1;
    let m = m.clone();
    BodyOracle::new(degrees, move |x| {
        let (s, q, i) = (x[pos][0][0], x[h][0][0], x[h + 1][0][0]);
        vec![if i == pos { m.delta(s, q).0 } else { s }]
    })
}

pub fn absstep_state_oracle(h: usize, m: &TuringMachine) -> BodyOracle {
    let degrees = vec![1; h + 2];
    let m = m.clone();
    BodyOracle::new(degrees, move |x| {
        let i = x[h + 1][0][0];
        vec![m.delta(x[i][0][0], x[h][0][0]).1]
    })
}

/// Head body; the head slot holds the position copy, then the selector copy.
pub fn absstep_tapehead_oracle(h: usize, m: &TuringMachine) -> BodyOracle {
    let mut degrees = vec![1; h + 2];
    degrees[h + 1] = 2;
    let m = m.clone();
    BodyOracle::new(degrees, move |x| {
        let (i, j) = (x[h + 1][0][0], x[h + 1][1][0]);
        let d = shift(m.delta(x[j][0][0], x[h][0][0]).2);
        vec![(i as isize + d).rem_euclid(h as isize) as usize]
    })
}

fn check_slots(degrees: &[usize], inputs: &[Vec<Label>]) -> Result<(), PolyError> {
    if degrees.len() != inputs.len() {
        return Err(PolyError::Malformed(format!("{} label sets for {} slots", inputs.len(), degrees.len())));
    }
    Ok(())
}

/// `g_π^τ` for every `τ` in `outputs`, by enumerating all copy assignments.
pub fn extract_g(
    body: &BodyOracle,
    inputs: &[Vec<Label>],
    outputs: &[Label],
) -> Result<BTreeMap<Label, CommPoly>, PolyError> {
    check_slots(&body.degrees, inputs)?;
    let mut out: BTreeMap<Label, CommPoly> = outputs.iter().map(|t| (t.clone(), CommPoly::zero())).collect();
    // one digit per copy, slot-major
    let radices: Vec<usize> = body
        .degrees
        .iter()
        .enumerate()
        .flat_map(|(i, &n)| std::iter::repeat_n(inputs[i].len(), n))
        .collect();
    if radices.contains(&0) {
        return Ok(out);
    }
    let mut digits = vec![0usize; radices.len()];
    loop {
        let mut args: Vec<Vec<Label>> = Vec::with_capacity(inputs.len());
        let mut vars = Vec::with_capacity(digits.len());
        let mut pos = 0;
        for (i, &n) in body.degrees.iter().enumerate() {
            let tuple: Vec<Label> = (0..n)
                .map(|j| {
                    let l = inputs[i][digits[pos + j]].clone();
                    vars.push(Var::copy(i, j, l.clone()));
                    l
                })
                .collect();
            pos += n;
            args.push(tuple);
        }
        let tau = body.call(&args);
        let slot = out
            .get_mut(&tau)
            .ok_or_else(|| PolyError::OutputNotInQ(format!("\"{}\"", show_word(&tau))))?;
        *slot = slot.add(&CommPoly::monomial(vars));
        // odometer
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(out);
            }
            digits[k] += 1;
            if digits[k] < radices[k] {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// Labels of one hypothesis or of the conclusion, with the base `A` of
/// `ₛlist_A` or `ₙbool_A`.
#[derive(Clone, Debug)]
pub struct Slot {
    pub kind: LabelKind,
    pub base: Formula,
    pub labels: Vec<Label>,
}

impl Slot {
    pub fn new(kind: LabelKind, base: &Formula, labels: Vec<Label>) -> Slot {
        Slot {
            kind,
            base: base.clone(),
            labels,
        }
    }

    pub fn formula(&self) -> Formula {
        self.kind.formula(&self.base)
    }

    fn denotations(&self) -> Result<Vec<Value>, PolyError> {
        self.labels.iter().map(|l| self.kind.denote(l, &self.base)).collect()
    }
}

/// Coordinates of vectors in the span of fixed denotations, read off fingerprints.
pub struct LabelBasis {
    labels: Vec<Label>,
    keys: BTreeMap<String, usize>,
    matrix: RatMatrix,
    formula: Formula,
    sampler: Sampler,
}

impl LabelBasis {
    /// Fails unless the denotations have independent fingerprints.
    pub fn new(slot: &Slot, sampler: &Sampler) -> Result<LabelBasis, PolyError> {
        let formula = slot.formula();
        let fps: Vec<Fingerprint> = slot
            .denotations()?
            .iter()
            .map(|v| sampler.fingerprint(v, &formula))
            .collect::<Result<_, _>>()?;
        let mut keys = BTreeMap::new();
        for fp in &fps {
            for k in fp.keys() {
                let n = keys.len();
                keys.entry(k.clone()).or_insert(n);
            }
        }
        let mut matrix = RatMatrix::zeros(keys.len(), fps.len());
        for (c, fp) in fps.iter().enumerate() {
            for (k, v) in fp {
                matrix.set(keys[k], c, v.clone());
            }
        }
        if matrix.rank() < fps.len() {
            return Err(PolyError::IndependenceUnverified(format!(
                "{} labels of {formula} have rank {} on the samples",
                fps.len(),
                matrix.rank()
            )));
        }
        Ok(LabelBasis {
            labels: slot.labels.clone(),
            keys,
            matrix,
            formula,
            sampler: sampler.clone(),
        })
    }

    /// The unique coefficients expressing `v` in the basis.
    pub fn coords(&self, v: &Value) -> Result<Vec<Q>, PolyError> {
        let fp = self.sampler.fingerprint(v, &self.formula)?;
        let mut b = vec![Q::zero(); self.keys.len()];
        for (k, c) in fp {
            let i = self
                .keys
                .get(&k)
                .ok_or_else(|| PolyError::OutputNotInQ("value outside the span of the output labels".into()))?;
            b[*i] = c;
        }
        self.matrix
            .solve(&b)
            .ok_or_else(|| PolyError::OutputNotInQ("value outside the span of the output labels".into()))
    }

    pub fn distvec(&self, v: &Value) -> Result<DistVec, PolyError> {
        let c = self.coords(v)?;
        Ok(DistVec::from_pairs(self.labels.iter().cloned().zip(c)))
    }
}

/// The polynomials `f_ψ^τ` recovered from the evaluator.
#[derive(Clone, Debug)]
pub struct FPsi {
    pub degrees: Vec<usize>,
    pub polys: BTreeMap<Label, CommPoly>,
    /// Whether `dim⟦A⟧` exceeds half the longest output word, which
    /// guarantees independence of the output denotations.
    pub bound_met: bool,
}

/// Multisets of size `n` over `0..p`, as sorted index lists.
fn multisets(p: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in multisets(p, n - 1) {
        let lo = rest.last().copied().unwrap_or(0);
        for i in lo..p {
            let mut v = rest.clone();
            v.push(i);
            out.push(v);
        }
    }
    out
}

fn monomial_value(point: &[Q], mono: &[usize]) -> Q {
    mono.iter().fold(Q::one(), |acc, &i| acc * &point[i])
}

/// Interpolation nodes for homogeneous polynomials of degree `n` in `p`
/// variables, with the inverse of their evaluation matrix.
fn nodes(p: usize, n: usize, rng: &mut ChaCha8Rng) -> (Vec<Vec<Q>>, RatMatrix) {
    let monos = multisets(p, n);
    loop {
        let pts: Vec<Vec<Q>> = monos
            .iter()
            .map(|_| (0..p).map(|_| q(rng.random_range(-4..=4))).collect())
            .collect();
        let rows: Vec<Vec<Q>> = pts.iter().map(|x| monos.iter().map(|m| monomial_value(x, m)).collect()).collect();
        if let Some(inv) = RatMatrix::from_rows(rows).inverse() {
            return (pts, inv);
        }
    }
}

/// Multiplies every fiber of a row-major tensor along `axis` by `m`.
fn mode_product(data: &[Q], shape: &[usize], axis: usize, m: &RatMatrix) -> Vec<Q> {
    let inner: usize = shape[axis + 1..].iter().product();
    let n = shape[axis];
    let outer = data.len() / (n * inner);
    let mut out = vec![Q::zero(); data.len()];
    for o in 0..outer {
        for i in 0..inner {
            for r in 0..n {
                let mut acc = Q::zero();
                for c in 0..n {
                    let x = &data[(o * n + c) * inner + i];
                    if !x.is_zero() {
                        acc += m.get(r, c) * x;
                    }
                }
                out[(o * n + r) * inner + i] = acc;
            }
        }
    }
    out
}

fn check_psi(psi: &Proof, inputs: &[Slot], output: &Slot) -> Result<(), PolyError> {
    let want: Vec<Formula> = inputs.iter().map(|s| Formula::bang(&s.formula())).collect();
    if psi.hyps() != want.as_slice() || *psi.concl() != output.formula() {
        return Err(PolyError::Malformed("proof does not match the label slots".into()));
    }
    Ok(())
}

/// `⟦ψ⟧(ι(ω⃗))` on vacuums over the given distributions.
pub fn eval_on_dists(psi: &Proof, inputs: &[Slot], omegas: &[DistVec]) -> Result<Value, PolyError> {
    if inputs.len() != omegas.len() {
        return Err(PolyError::Malformed("one distribution per slot".into()));
    }
    let args = inputs
        .iter()
        .zip(omegas)
        .map(|(s, w)| Ok(Value::vacuum(w.denote(s.kind, &s.base)?)))
        .collect::<Result<Vec<_>, PolyError>>()?;
    Ok(eval(psi, &args)?)
}

/// Recovers `f_ψ^τ` by interpolating the evaluator on vacuums, for the
/// plain proof `ψ : !A₁ … !A_r ⊢ B`.
pub fn f_psi(psi: &Proof, inputs: &[Slot], output: &Slot, sampler: &Sampler) -> Result<FPsi, PolyError> {
    check_psi(psi, inputs, output)?;
    let (degrees, _) = plain_shape(psi)?;
    let basis = LabelBasis::new(output, sampler)?;
    let bound_met = match output.kind {
        LabelKind::Bool(_) => true,
        LabelKind::Word(_) => {
            let dim = sampler.space(&output.base)?.dim().unwrap_or(0);
            let maxlen = output.labels.iter().map(Vec::len).max().unwrap_or(0);
            2 * dim > maxlen
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(sampler.seed());
    let per_slot: Vec<(Vec<Vec<Q>>, RatMatrix)> = inputs
        .iter()
        .zip(&degrees)
        .map(|(s, &n)| nodes(s.labels.len(), n, &mut rng))
        .collect();
    let shape: Vec<usize> = per_slot.iter().map(|(p, _)| p.len()).collect();
    let total: usize = shape.iter().product();
    let dens: Vec<Vec<Value>> = inputs.iter().map(Slot::denotations).collect::<Result<_, _>>()?;
    let ntau = output.labels.len();
    let mut data: Vec<Vec<Q>> = vec![vec![Q::zero(); total]; ntau];
    for flat in 0..total {
        let mut rem = flat;
        let mut idx = vec![0; shape.len()];
        for a in (0..shape.len()).rev() {
            idx[a] = rem % shape[a];
            rem /= shape[a];
        }
        let args = (0..inputs.len())
            .map(|i| {
                let pt = &per_slot[i].0[idx[i]];
                let terms = pt.iter().cloned().zip(dens[i].iter().cloned()).collect();
                Ok(Value::vacuum(crate::semantics::lin_comb(terms)?))
            })
            .collect::<Result<Vec<_>, PolyError>>()?;
        let c = basis.coords(&eval(psi, &args)?)?;
        for (t, v) in c.into_iter().enumerate() {
            data[t][flat] = v;
        }
    }
    let mut polys = BTreeMap::new();
    for (t, tau) in output.labels.iter().enumerate() {
        let mut coeffs = std::mem::take(&mut data[t]);
        for (a, (_, inv)) in per_slot.iter().enumerate() {
            coeffs = mode_product(&coeffs, &shape, a, inv);
        }
        let monos: Vec<Vec<Vec<usize>>> = inputs
            .iter()
            .zip(&degrees)
            .map(|(s, &n)| multisets(s.labels.len(), n))
            .collect();
        let mut poly = CommPoly::zero();
        for (flat, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut rem = flat;
            let mut vars = Vec::new();
            for a in (0..shape.len()).rev() {
                let k = rem % shape[a];
                rem /= shape[a];
                vars.extend(monos[a][k].iter().map(|&l| Var::collapsed(a, inputs[a].labels[l].clone())));
            }
            poly = poly.add(&CommPoly::monomial(vars).scale(&c));
        }
        polys.insert(tau.clone(), poly);
    }
    Ok(FPsi {
        degrees,
        polys,
        bound_met,
    })
}

/// `F_ψ(ω⃗)_τ = f_ψ^τ(x^i_ρ = ω_i(ρ))`.
pub fn big_f_psi(polys: &BTreeMap<Label, CommPoly>, omegas: &[DistVec]) -> DistVec {
    let at = |v: &Var| omegas.get(v.slot).map(|w| w.coeff(&v.label)).unwrap_or_else(Q::zero);
    DistVec::from_pairs(polys.iter().map(|(t, p)| (t.clone(), p.eval(&at))))
}

/// Whether `⟦F_ψ(ω⃗)⟧ = ⟦ψ⟧(ι(ω⃗))` on the samples.
pub fn commutes(
    psi: &Proof,
    polys: &BTreeMap<Label, CommPoly>,
    inputs: &[Slot],
    output: &Slot,
    omegas: &[DistVec],
    sampler: &Sampler,
) -> Result<bool, PolyError> {
    let lhs = big_f_psi(polys, omegas).denote(output.kind, &output.base)?;
    let rhs = eval_on_dists(psi, inputs, omegas)?;
    Ok(sampler.equal(&lhs, &rhs, &output.formula())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_body_gives_single_variable() {
        let body = BodyOracle::new(vec![1], |x| x[0][0].clone());
        let labels = vec![vec![0], vec![1]];
        let g = extract_g(&body, std::slice::from_ref(&labels), &labels).unwrap();
        assert_eq!(g[&vec![1]], CommPoly::var(Var::copy(0, 0, vec![1])));
    }

    #[test]
    fn output_outside_q_is_rejected() {
        let body = BodyOracle::new(vec![1], |_| vec![7]);
        let r = extract_g(&body, &[vec![vec![0]]], &[vec![0]]);
        assert!(matches!(r, Err(PolyError::OutputNotInQ(_))));
    }

    #[test]
    fn multisets_count() {
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(multisets(3, 0), vec![Vec::<usize>::new()]);
    }
}
