//! Exact rational scalars and dense rational matrices.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// A random rational with numerator in [−9, 9] and denominator in [1, 9].
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Q {
    qf(rng.random_range(-9..=9), rng.random_range(1..=9))
}

/// Like [`random_rational`] but never zero.
pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Q {
    loop {
        let x = random_rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Renders a rational as `n` or `n/d`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Q::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Q) -> RatMatrix {
        RatMatrix::identity(n).scale(c)
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> RatMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    /// Builds a matrix from row-major data.
    pub fn from_data(rows: usize, cols: usize, data: Vec<Q>) -> RatMatrix {
        assert_eq!(data.len(), rows * cols, "data length");
        RatMatrix { rows, cols, data }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> RatMatrix {
        RatMatrix::random_rect(rng, n, n)
    }

    pub fn random_rect<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> RatMatrix {
        RatMatrix {
            rows,
            cols,
            data: (0..rows * cols).map(|_| random_rational(rng)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Q] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = Q::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// True when the matrix is a multiple of the identity.
    pub fn is_scalar(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let c = if self.rows == 0 { Q::zero() } else { self.get(0, 0).clone() };
        (0..self.rows).all(|i| (0..self.cols).all(|j| *self.get(i, j) == if i == j { c.clone() } else { Q::zero() }))
    }

    /// Places this matrix in the top-left corner of an `n × n` identity.
    pub fn embed(&self, n: usize) -> RatMatrix {
        assert!(n >= self.rows && n >= self.cols, "embedding into a smaller matrix");
        let mut m = RatMatrix::identity(n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r * cols + c].is_zero()) else {
                continue;
            };
            for k in 0..cols {
                m.swap(rank * cols + k, p * cols + k);
            }
            let pivot = m[rank * cols + c].clone();
            for r in 0..rows {
                if r != rank && !m[r * cols + c].is_zero() {
                    let f = &m[r * cols + c] / &pivot;
                    for k in c..cols {
                        let delta = &f * &m[rank * cols + k];
                        m[r * cols + k] -= delta;
                    }
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            for k in 0..n {
                a.data.swap(c * n + k, p * n + k);
                inv.data.swap(c * n + k, p * n + k);
            }
            let pivot = a.get(c, c).clone();
            for k in 0..n {
                a.data[c * n + k] /= &pivot;
                inv.data[c * n + k] /= &pivot;
            }
            for r in 0..n {
                if r != c && !a.get(r, c).is_zero() {
                    let f = a.get(r, c).clone();
                    for k in 0..n {
                        let da = &f * a.get(c, k);
                        let di = &f * inv.get(c, k);
                        a.data[r * n + k] -= da;
                        inv.data[r * n + k] -= di;
                    }
                }
            }
        }
        Some(inv)
    }

    /// The unique `x` with `self · x = b`, or `None` when the columns are
    /// dependent or `b` is outside the column space.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let (rows, cols) = (self.rows, self.cols);
        let w = cols + 1;
        let mut m: Vec<Q> = Vec::with_capacity(rows * w);
        for r in 0..rows {
            m.extend_from_slice(&self.data[r * cols..(r + 1) * cols]);
            m.push(b[r].clone());
        }
        for c in 0..cols {
            let p = (c..rows).find(|&r| !m[r * w + c].is_zero())?;
            for k in 0..w {
                m.swap(c * w + k, p * w + k);
            }
            let pivot = m[c * w + c].clone();
            for k in c..w {
                m[c * w + k] /= &pivot;
            }
            for r in 0..rows {
                if r != c && !m[r * w + c].is_zero() {
                    let f = m[r * w + c].clone();
                    for k in c..w {
                        let d = &f * &m[c * w + k];
                        m[r * w + k] -= d;
                    }
                }
            }
        }
        if (cols..rows).any(|r| !m[r * w + cols].is_zero()) {
            return None;
        }
        Some((0..cols).map(|c| m[c * w + cols].clone()).collect())
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn max_abs(&self) -> Q {
        self.data.iter().map(Signed::abs).max().unwrap_or_else(Q::zero)
    }
}

/// Rows reduced against each other as they arrive, for incremental rank.
#[derive(Clone, Debug, Default)]
pub struct RowEchelon {
    rows: Vec<(usize, Vec<Q>)>,
}

impl RowEchelon {
    pub fn new() -> RowEchelon {
        RowEchelon::default()
    }

    /// Adds a row; true when it was independent of the earlier ones.
    pub fn insert(&mut self, mut v: Vec<Q>) -> bool {
        for (p, r) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let pivot = v[p].clone();
        for x in v.iter_mut() {
            *x /= &pivot;
        }
        self.rows.push((p, v));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Row-major rendering, one row per line.
impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| fmt_q(self.get(i, j))).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_round_trip() {
        let m = RatMatrix::from_ints(&[&[1, 2], &[0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
        assert!(RatMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn rank_counts_independent_rows() {
        assert_eq!(RatMatrix::from_ints(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(RatMatrix::from_ints(&[&[1, 2, 3], &[0, 1, 1]]).rank(), 2);
        assert_eq!(RatMatrix::zeros(3, 2).rank(), 0);
    }

    #[test]
    fn multiplication_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let a = RatMatrix::random(&mut rng, 3);
            let b = RatMatrix::random(&mut rng, 3);
            let c = RatMatrix::random(&mut rng, 3);
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }

    #[test]
    fn echelon_rank_matches_batch_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = RatMatrix::random_rect(&mut rng, 2, 4);
        let mut rows: Vec<Vec<Q>> = (0..2).map(|i| (0..4).map(|j| a.get(i, j).clone()).collect()).collect();
        rows.push(rows[0].iter().zip(&rows[1]).map(|(x, y)| x * q(3) - y).collect());
        let mut e = RowEchelon::new();
        let fresh: Vec<bool> = rows.iter().map(|r| e.insert(r.clone())).collect();
        assert_eq!(fresh, vec![true, true, false]);
        assert_eq!(e.rank(), RatMatrix::from_rows(rows).rank());
    }

    #[test]
    fn random_entries_are_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = RatMatrix::random(&mut rng, 4);
        assert!(m.max_abs() <= q(9));
    }
}
