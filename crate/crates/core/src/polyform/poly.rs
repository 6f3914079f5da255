//! Commutative polynomials in the label variables `x^{i}_ρ` and `x^{ij}_ρ`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::Label;
use crate::linalg::{fmt_q, Q};
use crate::machine::show_word;

/// `x^{slot}_label`, or `x^{slot,copy}_label` before contraction. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub slot: usize,
    pub copy: Option<usize>,
    pub label: Label,
}

impl Var {
    pub fn collapsed(slot: usize, label: Label) -> Var {
        Var { slot, copy: None, label }
    }

    pub fn copy(slot: usize, copy: usize, label: Label) -> Var {
        Var {
            slot,
            copy: Some(copy),
            label,
        }
    }
}

/// Rendered 1-based as `x[i][rho]` or `x[i][j][rho]`.
impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.copy {
            None => write!(f, "x[{}][{}]", self.slot + 1, show_word(&self.label)),
            Some(j) => write!(f, "x[{}][{}][{}]", self.slot + 1, j + 1, show_word(&self.label)),
        }
    }
}

/// Sorted variables with positive exponents.
pub type Monomial = Vec<(Var, u32)>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut m: BTreeMap<Var, u32> = a.iter().cloned().collect();
    for (v, e) in b {
        *m.entry(v.clone()).or_insert(0) += e;
    }
    m.into_iter().collect()
}

/// Polynomial with exact rational coefficients and canonically ordered monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommPoly {
    terms: BTreeMap<Monomial, Q>,
}

impl CommPoly {
    pub fn zero() -> CommPoly {
        CommPoly::default()
    }

    pub fn constant(c: Q) -> CommPoly {
        let mut p = CommPoly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn one() -> CommPoly {
        CommPoly::constant(Q::one())
    }

    pub fn var(v: Var) -> CommPoly {
        let mut p = CommPoly::zero();
        p.add_term(vec![(v, 1)], Q::one());
        p
    }

    /// Product of the given variables, with repetition.
    pub fn monomial(vars: impl IntoIterator<Item = Var>) -> CommPoly {
        let mut m: BTreeMap<Var, u32> = BTreeMap::new();
        for v in vars {
            *m.entry(v).or_insert(0) += 1;
        }
        let mut p = CommPoly::zero();
        p.add_term(m.into_iter().collect(), Q::one());
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
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

    pub fn add(&self, other: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> CommPoly {
        let mut out = CommPoly::zero();
        for (m, d) in &self.terms {
            out.add_term(m.clone(), d * c);
        }
        out
    }

    pub fn mul(&self, other: &CommPoly) -> CommPoly {
        let mut out = CommPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    /// Substitutes a value for every variable.
    pub fn eval(&self, at: &dyn Fn(&Var) -> Q) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (m, c)| {
            let v = m.iter().fold(c.clone(), |p, (x, e)| {
                let base = at(x);
                (0..*e).fold(p, |p, _| p * &base)
            });
            acc + v
        })
    }

    /// Applies a variable renaming, merging monomials that coincide.
    pub fn rename(&self, f: &dyn Fn(&Var) -> Var) -> CommPoly {
        let mut out = CommPoly::zero();
        for (m, c) in &self.terms {
            let mut merged: BTreeMap<Var, u32> = BTreeMap::new();
            for (v, e) in m {
                *merged.entry(f(v)).or_insert(0) += e;
            }
            out.add_term(merged.into_iter().collect(), c.clone());
        }
        out
    }
}

/// The algebra morphism `x^{ij}_ρ ↦ x^i_ρ` collapsing copy indices.
pub fn contract_c(g: &CommPoly) -> CommPoly {
    g.rename(&|v| Var::collapsed(v.slot, v.label.clone()))
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Q::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = m
                .iter()
                .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", fmt_q(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_q(&abs), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn contraction_collapses_copies() {
        let g = CommPoly::monomial([Var::copy(0, 0, vec![0]), Var::copy(0, 1, vec![1])]);
        let c = contract_c(&g);
        assert_eq!(c, CommPoly::monomial([Var::collapsed(0, vec![0]), Var::collapsed(0, vec![1])]));
        assert_eq!(c.to_string(), "x[1][0]*x[1][1]");
        assert_eq!(contract_c(&c), c);
        assert_eq!(contract_c(&CommPoly::constant(q(3))), CommPoly::constant(q(3)));
    }

    #[test]
    fn arithmetic_and_rendering() {
        let x = CommPoly::var(Var::collapsed(0, vec![]));
        let y = CommPoly::var(Var::collapsed(1, vec![1]));
        let p = x.add(&y).mul(&x.add(&y.scale(&q(-1))));
        assert_eq!(p.to_string(), "x[1][]^2 - x[2][1]^2");
        assert_eq!(p.eval(&|v| if v.slot == 0 { q(3) } else { q(2) }), q(5));
    }
}
