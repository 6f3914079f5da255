//! Binary integers as noncommutative words in two matrices: evaluation on
//! kets, vacuum reduction, polynomial identities and independence checks.
//!
//! A digit string acts with its first digit innermost, so the word of
//! `t₁ … tₙ` is the matrix product `Γₙ ⋯ Γ₁`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{fmt_q, q, RatMatrix, RowEchelon, Q};
use crate::machine::show_word;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BintError {
    #[error("strings have different digit counts: {0}")]
    MixedDigitCounts(String),
    #[error("free group matrices need dimension at least 2, got {0}")]
    DimTooSmall(usize),
    #[error("{0} coefficients for {1} strings")]
    LengthMismatch(usize, usize),
}

/// Rational combination of words over symbols `0 … k-1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NcPoly {
    terms: BTreeMap<Vec<usize>, Q>,
}

impl NcPoly {
    pub fn zero() -> NcPoly {
        NcPoly::default()
    }

    pub fn word(w: Vec<usize>) -> NcPoly {
        let mut p = NcPoly::zero();
        p.add_term(w, Q::one());
        p
    }

    pub fn add_term(&mut self, w: Vec<usize>, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term([a.as_slice(), b.as_slice()].concat(), ca * cb);
            }
        }
        out
    }

    /// Replaces symbol `i` by `subs[i]`.
    pub fn substitute(&self, subs: &[NcPoly]) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            let mut acc = NcPoly::zero();
            acc.add_term(Vec::new(), c.clone());
            for &x in w {
                acc = acc.mul(&subs[x]);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Evaluates with symbol `i` ↦ `xs[i]`, reading words left to right as products.
    pub fn eval(&self, xs: &[RatMatrix]) -> RatMatrix {
        let n = xs.first().map(RatMatrix::rows).unwrap_or(0);
        let mut acc = RatMatrix::zeros(n, n);
        for (w, c) in &self.terms {
            let m = w.iter().fold(RatMatrix::identity(n), |p, &x| p.mul(&xs[x]));
            acc = acc.add(&m.scale(c));
        }
        acc
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let neg = c < &Q::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let word: Vec<String> = w.iter().map(|x| format!("x{}", x + 1)).collect();
            let word = if word.is_empty() { "1".to_string() } else { word.join("") };
            if abs.is_one() {
                write!(f, "{word}")?;
            } else {
                write!(f, "{}*{word}", fmt_q(&abs))?;
            }
        }
        Ok(())
    }
}

/// All permutations of `0..n` with their signs, in lexicographic order.
pub fn permutations(n: usize) -> Vec<(i64, Vec<usize>)> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out.into_iter()
        .map(|p| {
            let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            (if inv % 2 == 0 { 1 } else { -1 }, p)
        })
        .collect()
}

/// `s_n = Σ_σ sgn(σ) x_{σ(1)} ⋯ x_{σ(n)}`.
pub fn standard_poly(n: usize) -> NcPoly {
    let mut p = NcPoly::zero();
    for (sign, perm) in permutations(n) {
        p.add_term(perm, q(sign));
    }
    p
}

/// `t_n(x, y) = s_{2n}(x, xy, …, xy^{2n-1})` in the symbols `x = 0`, `y = 1`.
pub fn t_poly(n: usize) -> NcPoly {
    let subs: Vec<NcPoly> = (0..2 * n)
        .map(|i| {
            let mut w = vec![0];
            w.extend(std::iter::repeat_n(1, i));
            NcPoly::word(w)
        })
        .collect();
    standard_poly(2 * n).substitute(&subs)
}

/// Signed strings `R_{σ(2n)} ⋯ R_{σ(1)}` with `Rᵢ = 1^{i-1}0`.
pub fn al_witness(n: usize) -> Vec<(i64, Vec<usize>)> {
    let r = |i: usize| -> Vec<usize> {
        let mut w = vec![1; i];
        w.push(0);
        w
    };
    permutations(2 * n)
        .into_iter()
        .map(|(sign, p)| (sign, p.iter().rev().flat_map(|&i| r(i)).collect()))
        .collect()
}

/// The composite of `t` with `0 ↦ alpha`, `1 ↦ beta`, first digit innermost.
pub fn word_matrix(t: &[usize], alpha: &RatMatrix, beta: &RatMatrix) -> RatMatrix {
    t.iter()
        .fold(RatMatrix::identity(alpha.rows()), |acc, &d| if d == 0 { alpha } else { beta }.mul(&acc))
}

fn digit_positions(t: &[usize], d: usize) -> Vec<usize> {
    (0..t.len()).filter(|&i| t[i] == d).collect()
}

/// Injections `[k] → positions`, as image lists.
fn injections(k: usize, positions: &[usize]) -> Vec<Vec<usize>> {
    fn go(k: usize, positions: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for &p in positions {
            if !cur.contains(&p) {
                cur.push(p);
                go(k, positions, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(k, positions, &mut Vec::new(), &mut out);
    out
}

/// `⟦T⟧(|α₁…α_k⟩_γ ⊗ |β₁…β_l⟩_δ)` as a sum over injections of the kets
/// into the zero and one positions; zero when a ket is longer than its digit count.
pub fn eval_on_kets(
    t: &[usize],
    alphas: &[RatMatrix],
    gamma: &RatMatrix,
    betas: &[RatMatrix],
    delta: &RatMatrix,
) -> RatMatrix {
    let n = gamma.rows();
    let mut acc = RatMatrix::zeros(n, n);
    let (zeros, ones) = (digit_positions(t, 0), digit_positions(t, 1));
    for f in injections(alphas.len(), &zeros) {
        for g in injections(betas.len(), &ones) {
            let mut m = RatMatrix::identity(n);
            for i in 0..t.len() {
                let gi = if let Some(j) = f.iter().position(|&p| p == i) {
                    &alphas[j]
                } else if let Some(j) = g.iter().position(|&p| p == i) {
                    &betas[j]
                } else if t[i] == 0 {
                    gamma
                } else {
                    delta
                };
                m = gi.mul(&m);
            }
            acc = acc.add(&m);
        }
    }
    acc
}

fn factorial(n: usize) -> Q {
    (1..=n).fold(Q::one(), |acc, i| acc * q(i as i64))
}

fn subset_sum(ms: &[RatMatrix], mask: usize, n: usize) -> RatMatrix {
    ms.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .fold(RatMatrix::zeros(n, n), |acc, (_, m)| acc.add(m))
}

/// The same value as [`eval_on_kets`] through vacuum evaluations only:
/// a signed sum over subsets, with the kets padded by their base points.
pub fn inclusion_exclusion_eval(
    t: &[usize],
    alphas: &[RatMatrix],
    gamma: &RatMatrix,
    betas: &[RatMatrix],
    delta: &RatMatrix,
) -> RatMatrix {
    let n = gamma.rows();
    let (m0, n1) = (digit_positions(t, 0).len(), digit_positions(t, 1).len());
    let (k, l) = (alphas.len(), betas.len());
    if k > m0 || l > n1 {
        return RatMatrix::zeros(n, n);
    }
    let mut pa = alphas.to_vec();
    pa.resize(m0, gamma.clone());
    let mut pb = betas.to_vec();
    pb.resize(n1, delta.clone());
    let mut acc = RatMatrix::zeros(n, n);
    for i in 0..1usize << m0 {
        let a = subset_sum(&pa, i, n);
        for j in 0..1usize << n1 {
            let b = subset_sum(&pb, j, n);
            let sign = if (m0 - i.count_ones() as usize + n1 - j.count_ones() as usize).is_multiple_of(2) { 1 } else { -1 };
            acc = acc.add(&word_matrix(t, &a, &b).scale(&q(sign)));
        }
    }
    acc.scale(&(Q::one() / (factorial(m0 - k) * factorial(n1 - l))))
}

fn digit_counts(t: &[usize]) -> (usize, usize) {
    (digit_positions(t, 0).len(), digit_positions(t, 1).len())
}

fn rng_for(seed: u64, dim: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (dim as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Whether `Σ c_s word(T_s)(α, β)` vanishes at `trials` random matrix pairs,
/// which for strings sharing digit counts witnesses `Σ c_s ⟦T_s⟧ = 0`.
pub fn vacuum_reduction_check(
    ts: &[Vec<usize>],
    cs: &[Q],
    dim: usize,
    trials: usize,
    seed: u64,
) -> Result<bool, BintError> {
    if ts.len() != cs.len() {
        return Err(BintError::LengthMismatch(cs.len(), ts.len()));
    }
    if let Some(first) = ts.first() {
        let c0 = digit_counts(first);
        if let Some(bad) = ts.iter().find(|t| digit_counts(t) != c0) {
            return Err(BintError::MixedDigitCounts(format!("{} vs {}", show_word(first), show_word(bad))));
        }
    }
    let mut rng = rng_for(seed, dim);
    for _ in 0..trials {
        let (a, b) = (RatMatrix::random(&mut rng, dim), RatMatrix::random(&mut rng, dim));
        let sum = ts
            .iter()
            .zip(cs)
            .fold(RatMatrix::zeros(dim, dim), |acc, (t, c)| acc.add(&word_matrix(t, &a, &b).scale(c)));
        if !sum.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The generators `[[1,2],[0,1]]` and `[[1,0],[2,1]]` of a free group.
pub fn free_group_matrices() -> (RatMatrix, RatMatrix) {
    (RatMatrix::from_ints(&[&[1, 2], &[0, 1]]), RatMatrix::from_ints(&[&[1, 0], &[2, 1]]))
}

fn free_pair(dim: usize) -> Result<(RatMatrix, RatMatrix), BintError> {
    if dim < 2 {
        return Err(BintError::DimTooSmall(dim));
    }
    let (a, b) = free_group_matrices();
    Ok((a.embed(dim), b.embed(dim)))
}

/// Whether the free-group words of `s` and `t` differ.
pub fn injectivity_check(s: &[usize], t: &[usize], dim: usize) -> Result<bool, BintError> {
    let (a, b) = free_pair(dim)?;
    Ok(word_matrix(s, &a, &b) != word_matrix(t, &a, &b))
}

/// Whether `word(S)·word(T)⁻¹` is non-scalar in the free group, which rules
/// out `a⟦S⟧ + b⟦T⟧ = 0` with `ab ≠ 0`.
pub fn pair_independence_check(s: &[usize], t: &[usize], dim: usize) -> Result<bool, BintError> {
    let (a, b) = free_pair(dim)?;
    let inv = word_matrix(t, &a, &b).inverse().expect("free group elements are invertible");
    Ok(!word_matrix(s, &a, &b).mul(&inv).is_scalar())
}

/// One random matrix pair, entries rendered as rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplePair {
    pub alpha: Vec<Vec<String>>,
    pub beta: Vec<Vec<String>>,
}

fn render(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| fmt_q(m.get(i, j))).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub seed: u64,
    pub dim: usize,
    pub samples: Vec<SamplePair>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Independent(Certificate),
    DependentCandidate { rank: usize },
    Unknown { rank: usize },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Independent(c) => write!(f, "Independent (rank {})", c.rank),
            Verdict::DependentCandidate { rank } => write!(f, "DependentCandidate (rank {rank})"),
            Verdict::Unknown { rank } => write!(f, "Unknown (rank {rank})"),
        }
    }
}

/// Rank of the vacuum evaluations `word(T_s)(α, β)` over random pairs.
/// Full column rank certifies independence of the `⟦T_s⟧`; otherwise the
/// strings are reported as a dependence candidate, or as unknown when the
/// samples have fewer coordinates than strings.
pub fn independence_check(ts: &[Vec<usize>], dim: usize, trials: usize, seed: u64) -> Verdict {
    if ts.is_empty() {
        return Verdict::Independent(Certificate {
            seed,
            dim,
            samples: Vec::new(),
            rank: 0,
        });
    }
    let mut rng = rng_for(seed, dim);
    let mut echelon = RowEchelon::new();
    let mut nrows = 0;
    let mut samples = Vec::new();
    for _ in 0..trials {
        let (a, b) = (RatMatrix::random(&mut rng, dim), RatMatrix::random(&mut rng, dim));
        let words: Vec<RatMatrix> = ts.iter().map(|t| word_matrix(t, &a, &b)).collect();
        for i in 0..dim {
            for j in 0..dim {
                echelon.insert(words.iter().map(|w| w.get(i, j).clone()).collect());
                nrows += 1;
            }
        }
        samples.push(SamplePair {
            alpha: render(&a),
            beta: render(&b),
        });
        if echelon.rank() == ts.len() {
            return Verdict::Independent(Certificate {
                seed,
                dim,
                samples,
                rank: ts.len(),
            });
        }
    }
    let rank = echelon.rank();
    if nrows < ts.len() {
        Verdict::Unknown { rank }
    } else {
        Verdict::DependentCandidate { rank }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s2_is_the_commutator() {
        assert_eq!(standard_poly(2).to_string(), "x1x2 - x2x1");
    }

    #[test]
    fn words_compose_first_digit_innermost() {
        let (a, b) = free_group_matrices();
        assert_eq!(word_matrix(&[0, 1], &a, &b), b.mul(&a));
    }

    #[test]
    fn al_witness_digit_counts() {
        let w = al_witness(2);
        assert_eq!(w.len(), 24);
        assert!(w.iter().all(|(_, t)| digit_counts(t) == (4, 6)));
    }
}
