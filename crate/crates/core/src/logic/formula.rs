use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// A first-order intuitionistic linear logic formula.
///
/// Formulas are immutable and cheaply cloneable; structurally equal
/// subformulas built by the same constructor calls share storage.
#[derive(Clone)]
pub struct Formula(Arc<Inner>);

struct Inner {
    node: Node,
    hash: u64,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Node {
    Atom(String),
    Tensor(Formula, Formula),
    With(Formula, Formula),
    Lollipop(Formula, Formula),
    Bang(Formula),
}

impl Formula {
    fn make(node: Node) -> Formula {
        let mut h = DefaultHasher::new();
        node.hash(&mut h);
        Formula(Arc::new(Inner {
            hash: h.finish(),
            node,
        }))
    }

    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::make(Node::Atom(name.into()))
    }

    pub fn tensor(a: &Formula, b: &Formula) -> Formula {
        Formula::make(Node::Tensor(a.clone(), b.clone()))
    }

    pub fn with(a: &Formula, b: &Formula) -> Formula {
        Formula::make(Node::With(a.clone(), b.clone()))
    }

    pub fn lolli(a: &Formula, b: &Formula) -> Formula {
        Formula::make(Node::Lollipop(a.clone(), b.clone()))
    }

    pub fn bang(a: &Formula) -> Formula {
        Formula::make(Node::Bang(a.clone()))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn is_bang(&self) -> bool {
        matches!(self.node(), Node::Bang(_))
    }

    /// The body of `!A`, if this is a Bang formula.
    pub fn unbang(&self) -> Option<&Formula> {
        match self.node() {
            Node::Bang(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_lolli(&self) -> Option<(&Formula, &Formula)> {
        match self.node() {
            Node::Lollipop(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_tensor(&self) -> Option<(&Formula, &Formula)> {
        match self.node() {
            Node::Tensor(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_with(&self) -> Option<(&Formula, &Formula)> {
        match self.node() {
            Node::With(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Splits a right-nested `&` into exactly `n` components.
    pub fn with_components(&self, n: usize) -> Option<Vec<Formula>> {
        if n == 0 {
            return None;
        }
        let mut out = Vec::with_capacity(n);
        let mut cur = self.clone();
        for _ in 0..n - 1 {
            let (a, b) = match cur.node() {
                Node::With(a, b) => (a.clone(), b.clone()),
                _ => return None,
            };
            out.push(a);
            cur = b;
        }
        out.push(cur);
        Some(out)
    }

    /// Right-nested `&` of the given components (at least one).
    pub fn with_all(parts: &[Formula]) -> Formula {
        let (last, init) = parts.split_last().expect("with_all needs a component");
        init.iter()
            .rev()
            .fold(last.clone(), |acc, f| Formula::with(f, &acc))
    }

    /// Right-nested `⊗` of the given factors (at least one).
    pub fn tensor_all(parts: &[Formula]) -> Formula {
        let (last, init) = parts.split_last().expect("tensor_all needs a factor");
        init.iter()
            .rev()
            .fold(last.clone(), |acc, f| Formula::tensor(f, &acc))
    }

    /// Splits a right-nested `⊗` into exactly `n` factors.
    pub fn tensor_factors(&self, n: usize) -> Option<Vec<Formula>> {
        if n == 0 {
            return None;
        }
        let mut out = Vec::with_capacity(n);
        let mut cur = self.clone();
        for _ in 0..n - 1 {
            let (a, b) = match cur.node() {
                Node::Tensor(a, b) => (a.clone(), b.clone()),
                _ => return None,
            };
            out.push(a);
            cur = b;
        }
        out.push(cur);
        Some(out)
    }

    /// `A & … & A` with `n ≥ 1` copies; `power(A, 1)` is `A` itself.
    pub fn power(a: &Formula, n: usize) -> Formula {
        assert!(n >= 1, "power needs at least one copy");
        let mut acc = a.clone();
        for _ in 1..n {
            acc = Formula::with(a, &acc);
        }
        acc
    }

    /// `A ⊸ A`.
    pub fn endo(a: &Formula) -> Formula {
        Formula::lolli(a, a)
    }

    /// `bool_A = (A & A) ⊸ A`.
    pub fn bool_type(a: &Formula) -> Formula {
        Formula::nbool_type(2, a)
    }

    /// `ₙbool_A = Aⁿ ⊸ A`.
    pub fn nbool_type(n: usize, a: &Formula) -> Formula {
        Formula::lolli(&Formula::power(a, n), a)
    }

    /// `int_A = !(A ⊸ A) ⊸ (A ⊸ A)`.
    pub fn int_type(a: &Formula) -> Formula {
        let e = Formula::endo(a);
        Formula::lolli(&Formula::bang(&e), &e)
    }

    /// `bint_A = !(A ⊸ A) ⊸ (!(A ⊸ A) ⊸ (A ⊸ A))`.
    pub fn bint_type(a: &Formula) -> Formula {
        Formula::slist_type(2, a)
    }

    /// `ₛlist_A`: `₁list = int`, `ₛ₊₁list = !(A ⊸ A) ⊸ ₛlist`.
    pub fn slist_type(s: usize, a: &Formula) -> Formula {
        assert!(s >= 1, "s-lists need s >= 1");
        let be = Formula::bang(&Formula::endo(a));
        let mut acc = Formula::int_type(a);
        for _ in 1..s {
            acc = Formula::lolli(&be, &acc);
        }
        acc
    }

    /// `Tur_A = !bint_A ⊗ !bint_A ⊗ !ₙbool_A` for `n` states.
    pub fn tur_type(n: usize, a: &Formula) -> Formula {
        Formula::tur_sigma_type(2, n, a)
    }

    /// The configuration type over `s`-lists.
    pub fn tur_sigma_type(s: usize, n: usize, a: &Formula) -> Formula {
        let l = Formula::bang(&Formula::slist_type(s, a));
        Formula::tensor_all(&[l.clone(), l, Formula::bang(&Formula::nbool_type(n, a))])
    }

    /// `A^(3^k)` built by substituting `A³` for `A` repeatedly.
    pub fn cube_tower(a: &Formula, k: usize) -> Formula {
        let mut acc = a.clone();
        for _ in 0..k {
            acc = Formula::power(&acc, 3);
        }
        acc
    }

    /// Number of nodes in the tree, counting shared subtrees repeatedly.
    pub fn size(&self) -> usize {
        match self.node() {
            Node::Atom(_) => 1,
            Node::Bang(a) => 1 + a.size(),
            Node::Tensor(a, b) | Node::With(a, b) | Node::Lollipop(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.hash == other.0.hash && self.0.node == other.0.node)
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Prefix rendering: `A`, `(* A B)`, `(& A B)`, `(-o A B)`, `(! A)`.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node() {
            Node::Atom(n) => write!(f, "{n}"),
            Node::Tensor(a, b) => write!(f, "(* {a} {b})"),
            Node::With(a, b) => write!(f, "(& {a} {b})"),
            Node::Lollipop(a, b) => write!(f, "(-o {a} {b})"),
            Node::Bang(a) => write!(f, "(! {a})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_one_is_identity() {
        let a = Formula::atom("A");
        assert_eq!(Formula::power(&a, 1), a);
        let p3 = Formula::power(&a, 3);
        assert_eq!(p3, Formula::with(&a, &Formula::with(&a, &a)));
        assert_eq!(p3.with_components(3).unwrap(), vec![a.clone(), a.clone(), a.clone()]);
    }

    #[test]
    fn with_components_respects_arity() {
        let a = Formula::atom("A");
        let a2 = Formula::power(&a, 2);
        let nested = Formula::power(&a2, 2);
        let parts = nested.with_components(2).unwrap();
        assert_eq!(parts, vec![a2.clone(), a2.clone()]);
        assert_eq!(nested.with_components(3).unwrap(), vec![a2, a.clone(), a]);
    }

    #[test]
    fn abbreviations_are_injective_on_parameters() {
        let a = Formula::atom("A");
        let b = Formula::atom("B");
        assert_ne!(Formula::bint_type(&a), Formula::bint_type(&b));
        assert_ne!(Formula::nbool_type(2, &a), Formula::nbool_type(3, &a));
        assert_ne!(Formula::slist_type(2, &a), Formula::slist_type(3, &a));
        assert_eq!(Formula::bool_type(&a), Formula::nbool_type(2, &a));
        assert_ne!(Formula::int_type(&a), Formula::bint_type(&a));
        assert_ne!(Formula::tur_type(2, &a), Formula::tur_type(3, &a));
    }

    #[test]
    fn display_is_prefix() {
        let a = Formula::atom("A");
        assert_eq!(Formula::bool_type(&a).to_string(), "(-o (& A A) A)");
        assert_eq!(Formula::bang(&Formula::tensor(&a, &a)).to_string(), "(! (* A A))");
    }
}
