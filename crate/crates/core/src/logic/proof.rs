use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::formula::Formula;

/// An ordered list of hypotheses and a conclusion.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Sequent {
    pub hyps: Vec<Formula>,
    pub concl: Formula,
}

impl Sequent {
    pub fn new(hyps: Vec<Formula>, concl: Formula) -> Sequent {
        Sequent { hyps, concl }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hyps: Vec<String> = self.hyps.iter().map(|h| h.to_string()).collect();
        write!(f, "{} |- {}", hyps.join(", "), self.concl)
    }
}

/// Sequent calculus rules. Left rules act on the first hypothesis;
/// `Exchange` moves hypotheses around.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Rule {
    /// `A ⊢ A`
    Axiom,
    /// `Γ ⊢ A` and `A, Δ ⊢ B` give `Γ, Δ ⊢ B`
    Cut,
    /// `Γ ⊢ A` and `Δ ⊢ B` give `Γ, Δ ⊢ A ⊗ B`
    TensorR,
    /// `A, B, Γ ⊢ C` gives `A ⊗ B, Γ ⊢ C`
    TensorL,
    /// `Γ ⊢ A` and `Γ ⊢ B` give `Γ ⊢ A & B`
    WithR,
    /// `Aᵢ, Γ ⊢ C` gives `A₀ & … & Aₙ₋₁, Γ ⊢ C`
    WithL { index: usize, arity: usize },
    /// `Γ, A ⊢ B` gives `Γ ⊢ A ⊸ B`
    LolliR,
    /// `Γ ⊢ A` and `B, Δ ⊢ C` give `A ⊸ B, Γ, Δ ⊢ C`
    LolliL,
    /// `A, Γ ⊢ B` gives `!A, Γ ⊢ B`
    Dereliction,
    /// `!Γ ⊢ B` gives `!Γ ⊢ !B`
    Promotion,
    /// `!A, !A, Γ ⊢ B` gives `!A, Γ ⊢ B`
    Contraction,
    /// `Γ ⊢ B` gives `!A, Γ ⊢ B`
    Weakening,
    /// `Γ ⊢ B` gives `Γ' ⊢ B` with `Γ'[j] = Γ[perm[j]]`
    Exchange(Vec<usize>),
}

impl Rule {
    pub fn arity(&self) -> usize {
        match self {
            Rule::Axiom => 0,
            Rule::Cut | Rule::TensorR | Rule::WithR | Rule::LolliL => 2,
            _ => 1,
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("ill-formed proof at node {path:?}: {reason}")]
    IllFormed { path: Vec<usize>, reason: String },
    #[error("not in plain form: {0}")]
    NotInPlainForm(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("term error: {0}")]
    Term(String),
}

pub(crate) fn ill(reason: impl Into<String>) -> LogicError {
    LogicError::IllFormed {
        path: Vec::new(),
        reason: reason.into(),
    }
}

/// A sequent calculus derivation. Subproofs are shared, so a proof is a DAG.
#[derive(Clone)]
pub struct Proof(Arc<ProofNode>);

#[derive(PartialEq, Eq)]
pub struct ProofNode {
    pub rule: Rule,
    pub premises: Vec<Proof>,
    pub conclusion: Sequent,
}

impl PartialEq for Proof {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Proof {}

impl fmt::Debug for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Proof({:?} : {})", self.0.rule, self.0.conclusion)
    }
}

impl Proof {
    /// Builds a node without validating it. Use [`check`] afterwards.
    pub fn from_parts(rule: Rule, premises: Vec<Proof>, conclusion: Sequent) -> Proof {
        Proof(Arc::new(ProofNode {
            rule,
            premises,
            conclusion,
        }))
    }

    fn checked(rule: Rule, premises: Vec<Proof>, hyps: Vec<Formula>, concl: Formula) -> Result<Proof, LogicError> {
        let p = Proof::from_parts(rule, premises, Sequent::new(hyps, concl));
        check_node(&p)?;
        Ok(p)
    }

    pub fn rule(&self) -> &Rule {
        &self.0.rule
    }

    pub fn premises(&self) -> &[Proof] {
        &self.0.premises
    }

    pub fn conclusion(&self) -> &Sequent {
        &self.0.conclusion
    }

    pub fn hyps(&self) -> &[Formula] {
        &self.0.conclusion.hyps
    }

    pub fn concl(&self) -> &Formula {
        &self.0.conclusion.concl
    }

    pub fn ptr_id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn axiom(a: &Formula) -> Proof {
        Proof::from_parts(Rule::Axiom, vec![], Sequent::new(vec![a.clone()], a.clone()))
    }

    pub fn cut(p: Proof, q: Proof) -> Result<Proof, LogicError> {
        let mut hyps = p.hyps().to_vec();
        hyps.extend(q.hyps().iter().skip(1).cloned());
        let concl = q.concl().clone();
        Proof::checked(Rule::Cut, vec![p, q], hyps, concl)
    }

    pub fn tensor_r(p: Proof, q: Proof) -> Result<Proof, LogicError> {
        let mut hyps = p.hyps().to_vec();
        hyps.extend(q.hyps().iter().cloned());
        let concl = Formula::tensor(p.concl(), q.concl());
        Proof::checked(Rule::TensorR, vec![p, q], hyps, concl)
    }

    pub fn tensor_l(p: Proof) -> Result<Proof, LogicError> {
        if p.hyps().len() < 2 {
            return Err(ill("tensor-l needs two hypotheses"));
        }
        let mut hyps = vec![Formula::tensor(&p.hyps()[0], &p.hyps()[1])];
        hyps.extend(p.hyps()[2..].iter().cloned());
        let concl = p.concl().clone();
        Proof::checked(Rule::TensorL, vec![p], hyps, concl)
    }

    pub fn with_r(p: Proof, q: Proof) -> Result<Proof, LogicError> {
        let hyps = p.hyps().to_vec();
        let concl = Formula::with(p.concl(), q.concl());
        Proof::checked(Rule::WithR, vec![p, q], hyps, concl)
    }

    /// n-ary `&R` producing a right-nested conjunction.
    pub fn with_r_all(mut ps: Vec<Proof>) -> Result<Proof, LogicError> {
        let last = ps.pop().ok_or_else(|| ill("with-r needs a premise"))?;
        ps.into_iter().rev().try_fold(last, |acc, p| Proof::with_r(p, acc))
    }

    /// `&L` selecting component `index` of the `arity`-fold conjunction `full`.
    pub fn with_l(index: usize, arity: usize, full: &Formula, p: Proof) -> Result<Proof, LogicError> {
        let mut hyps = vec![full.clone()];
        hyps.extend(p.hyps().iter().skip(1).cloned());
        let concl = p.concl().clone();
        Proof::checked(Rule::WithL { index, arity }, vec![p], hyps, concl)
    }

    pub fn lolli_r(p: Proof) -> Result<Proof, LogicError> {
        let (last, init) = p.hyps().split_last().ok_or_else(|| ill("lolli-r needs a hypothesis"))?;
        let concl = Formula::lolli(last, p.concl());
        let hyps = init.to_vec();
        Proof::checked(Rule::LolliR, vec![p], hyps, concl)
    }

    pub fn lolli_l(p: Proof, q: Proof) -> Result<Proof, LogicError> {
        let b = q.hyps().first().ok_or_else(|| ill("lolli-l right premise needs a hypothesis"))?;
        let mut hyps = vec![Formula::lolli(p.concl(), b)];
        hyps.extend(p.hyps().iter().cloned());
        hyps.extend(q.hyps().iter().skip(1).cloned());
        let concl = q.concl().clone();
        Proof::checked(Rule::LolliL, vec![p, q], hyps, concl)
    }

    pub fn dereliction(p: Proof) -> Result<Proof, LogicError> {
        let first = p.hyps().first().ok_or_else(|| ill("dereliction needs a hypothesis"))?;
        let mut hyps = vec![Formula::bang(first)];
        hyps.extend(p.hyps().iter().skip(1).cloned());
        let concl = p.concl().clone();
        Proof::checked(Rule::Dereliction, vec![p], hyps, concl)
    }

    pub fn promotion(p: Proof) -> Result<Proof, LogicError> {
        let hyps = p.hyps().to_vec();
        let concl = Formula::bang(p.concl());
        Proof::checked(Rule::Promotion, vec![p], hyps, concl)
    }

    pub fn contraction(p: Proof) -> Result<Proof, LogicError> {
        if p.hyps().len() < 2 {
            return Err(ill("contraction needs two hypotheses"));
        }
        let hyps = p.hyps()[1..].to_vec();
        let concl = p.concl().clone();
        Proof::checked(Rule::Contraction, vec![p], hyps, concl)
    }

    /// Weakening in `banged`, which must be of the form `!A`.
    pub fn weakening(banged: &Formula, p: Proof) -> Result<Proof, LogicError> {
        let mut hyps = vec![banged.clone()];
        hyps.extend(p.hyps().iter().cloned());
        let concl = p.concl().clone();
        Proof::checked(Rule::Weakening, vec![p], hyps, concl)
    }

    pub fn exchange(perm: Vec<usize>, p: Proof) -> Result<Proof, LogicError> {
        if perm.len() != p.hyps().len() {
            return Err(ill("exchange permutation has the wrong length"));
        }
        let hyps: Vec<Formula> = perm
            .iter()
            .map(|&i| p.hyps().get(i).cloned().ok_or_else(|| ill("exchange index out of range")))
            .collect::<Result<_, _>>()?;
        let concl = p.concl().clone();
        Proof::checked(Rule::Exchange(perm), vec![p], hyps, concl)
    }

    /// Exchange that is skipped when `perm` is the identity.
    pub fn permute(perm: Vec<usize>, p: Proof) -> Result<Proof, LogicError> {
        if perm.iter().enumerate().all(|(i, &j)| i == j) && perm.len() == p.hyps().len() {
            Ok(p)
        } else {
            Proof::exchange(perm, p)
        }
    }

    /// Moves hypothesis `i` to the front.
    pub fn to_front(i: usize, p: Proof) -> Result<Proof, LogicError> {
        let n = p.hyps().len();
        let mut perm = vec![i];
        perm.extend((0..n).filter(|&j| j != i));
        Proof::permute(perm, p)
    }

    /// Moves the first hypothesis to position `i`.
    pub fn from_front(i: usize, p: Proof) -> Result<Proof, LogicError> {
        let n = p.hyps().len();
        let mut perm: Vec<usize> = (1..n).collect();
        perm.insert(i, 0);
        Proof::permute(perm, p)
    }

    /// Number of nodes, counting shared subproofs once.
    pub fn node_count(&self) -> usize {
        let mut seen = HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(p) = stack.pop() {
            if seen.insert(p.ptr_id()) {
                stack.extend(p.premises().iter().cloned());
            }
        }
        seen.len()
    }

    /// Number of occurrences of `rule` in the tree, counting shared subproofs repeatedly.
    pub fn count_rule(&self, pred: &dyn Fn(&Rule) -> bool) -> usize {
        fn go(p: &Proof, pred: &dyn Fn(&Rule) -> bool, memo: &mut std::collections::HashMap<usize, usize>) -> usize {
            if let Some(&c) = memo.get(&p.ptr_id()) {
                return c;
            }
            let own = usize::from(pred(p.rule()));
            let c = own + p.premises().iter().map(|q| go(q, pred, memo)).sum::<usize>();
            memo.insert(p.ptr_id(), c);
            c
        }
        go(self, pred, &mut Default::default())
    }
}

fn check_node(p: &Proof) -> Result<(), LogicError> {
    let n = &p.0;
    let s = &n.conclusion;
    let prem = &n.premises;
    if prem.len() != n.rule.arity() {
        return Err(ill(format!("{:?} expects {} premises, found {}", n.rule, n.rule.arity(), prem.len())));
    }
    let expect = |ok: bool, why: &str| if ok { Ok(()) } else { Err(ill(why.to_string())) };
    match &n.rule {
        Rule::Axiom => expect(s.hyps.len() == 1 && s.hyps[0] == s.concl, "axiom must be A |- A"),
        Rule::Cut => {
            let (l, r) = (prem[0].conclusion(), prem[1].conclusion());
            expect(!r.hyps.is_empty() && r.hyps[0] == l.concl, "cut formula mismatch")?;
            let mut hyps = l.hyps.clone();
            hyps.extend(r.hyps[1..].iter().cloned());
            expect(hyps == s.hyps && r.concl == s.concl, "cut conclusion mismatch")
        }
        Rule::TensorR => {
            let (l, r) = (prem[0].conclusion(), prem[1].conclusion());
            let mut hyps = l.hyps.clone();
            hyps.extend(r.hyps.iter().cloned());
            expect(hyps == s.hyps, "tensor-r context mismatch")?;
            expect(s.concl == Formula::tensor(&l.concl, &r.concl), "tensor-r conclusion mismatch")
        }
        Rule::TensorL => {
            let q = prem[0].conclusion();
            expect(q.hyps.len() >= 2 && !s.hyps.is_empty(), "tensor-l needs two hypotheses")?;
            expect(s.hyps[0] == Formula::tensor(&q.hyps[0], &q.hyps[1]), "tensor-l principal mismatch")?;
            expect(s.hyps[1..] == q.hyps[2..] && s.concl == q.concl, "tensor-l context mismatch")
        }
        Rule::WithR => {
            let (l, r) = (prem[0].conclusion(), prem[1].conclusion());
            expect(l.hyps == s.hyps && r.hyps == s.hyps, "with-r premises must share the context")?;
            expect(s.concl == Formula::with(&l.concl, &r.concl), "with-r conclusion mismatch")
        }
        Rule::WithL { index, arity } => {
            let q = prem[0].conclusion();
            expect(*arity >= 2 && index < arity, "with-l index out of range")?;
            expect(!q.hyps.is_empty() && !s.hyps.is_empty(), "with-l needs a hypothesis")?;
            let parts = s.hyps[0]
                .with_components(*arity)
                .ok_or_else(|| ill("with-l principal formula has too few components"))?;
            expect(parts[*index] == q.hyps[0], "with-l component mismatch")?;
            expect(s.hyps[1..] == q.hyps[1..] && s.concl == q.concl, "with-l context mismatch")
        }
        Rule::LolliR => {
            let q = prem[0].conclusion();
            let (last, init) = q.hyps.split_last().ok_or_else(|| ill("lolli-r needs a hypothesis"))?;
            expect(init == s.hyps.as_slice(), "lolli-r context mismatch")?;
            expect(s.concl == Formula::lolli(last, &q.concl), "lolli-r conclusion mismatch")
        }
        Rule::LolliL => {
            let (l, r) = (prem[0].conclusion(), prem[1].conclusion());
            expect(!r.hyps.is_empty() && !s.hyps.is_empty(), "lolli-l needs hypotheses")?;
            expect(s.hyps[0] == Formula::lolli(&l.concl, &r.hyps[0]), "lolli-l principal mismatch")?;
            let mut rest = l.hyps.clone();
            rest.extend(r.hyps[1..].iter().cloned());
            expect(s.hyps[1..] == rest[..] && s.concl == r.concl, "lolli-l context mismatch")
        }
        Rule::Dereliction => {
            let q = prem[0].conclusion();
            expect(!q.hyps.is_empty() && !s.hyps.is_empty(), "dereliction needs a hypothesis")?;
            expect(s.hyps[0] == Formula::bang(&q.hyps[0]), "dereliction principal mismatch")?;
            expect(s.hyps[1..] == q.hyps[1..] && s.concl == q.concl, "dereliction context mismatch")
        }
        Rule::Promotion => {
            let q = prem[0].conclusion();
            expect(q.hyps.iter().all(Formula::is_bang), "promotion needs every hypothesis under !")?;
            expect(q.hyps == s.hyps && s.concl == Formula::bang(&q.concl), "promotion conclusion mismatch")
        }
        Rule::Contraction => {
            let q = prem[0].conclusion();
            expect(q.hyps.len() >= 2 && q.hyps[0] == q.hyps[1], "contraction needs two equal hypotheses")?;
            expect(q.hyps[0].is_bang(), "contraction needs a ! hypothesis")?;
            expect(s.hyps[..] == q.hyps[1..] && s.concl == q.concl, "contraction context mismatch")
        }
        Rule::Weakening => {
            let q = prem[0].conclusion();
            expect(!s.hyps.is_empty() && s.hyps[0].is_bang(), "weakening needs a ! hypothesis")?;
            expect(s.hyps[1..] == q.hyps[..] && s.concl == q.concl, "weakening context mismatch")
        }
        Rule::Exchange(perm) => {
            let q = prem[0].conclusion();
            let mut seen = vec![false; perm.len()];
            for &i in perm {
                if i >= perm.len() || seen[i] {
                    return Err(ill("exchange is not a permutation"));
                }
                seen[i] = true;
            }
            expect(perm.len() == q.hyps.len() && perm.len() == s.hyps.len(), "exchange length mismatch")?;
            expect(perm.iter().enumerate().all(|(j, &i)| s.hyps[j] == q.hyps[i]), "exchange mismatch")?;
            expect(s.concl == q.concl, "exchange conclusion mismatch")
        }
    }
}

/// Validates every node and returns the conclusion.
pub fn check(p: &Proof) -> Result<Sequent, LogicError> {
    fn go(p: &Proof, path: &mut Vec<usize>, seen: &mut HashSet<usize>) -> Result<(), LogicError> {
        if seen.contains(&p.ptr_id()) {
            return Ok(());
        }
        for (i, q) in p.premises().iter().enumerate() {
            path.push(i);
            go(q, path, seen)?;
            path.pop();
        }
        check_node(p).map_err(|e| match e {
            LogicError::IllFormed { reason, .. } => LogicError::IllFormed {
                path: path.clone(),
                reason,
            },
            other => other,
        })?;
        seen.insert(p.ptr_id());
        Ok(())
    }
    go(p, &mut Vec::new(), &mut HashSet::new())?;
    Ok(p.conclusion().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Formula {
        Formula::atom("A")
    }

    #[test]
    fn axiom_checks() {
        let p = Proof::axiom(&a());
        assert_eq!(check(&p).unwrap(), Sequent::new(vec![a()], a()));
    }

    #[test]
    fn bool_zero_two_rules() {
        let a2 = Formula::power(&a(), 2);
        let p = Proof::lolli_r(Proof::with_l(0, 2, &a2, Proof::axiom(&a())).unwrap()).unwrap();
        let s = check(&p).unwrap();
        assert!(s.hyps.is_empty());
        assert_eq!(s.concl, Formula::bool_type(&a()));
    }

    #[test]
    fn promotion_rejects_linear_hypothesis() {
        assert!(Proof::promotion(Proof::axiom(&a())).is_err());
        let bad = Proof::from_parts(
            Rule::Promotion,
            vec![Proof::axiom(&a())],
            Sequent::new(vec![a()], Formula::bang(&a())),
        );
        match check(&bad) {
            Err(LogicError::IllFormed { path, .. }) => assert!(path.is_empty()),
            other => panic!("expected ill-formed, got {other:?}"),
        }
    }

    #[test]
    fn check_reports_path() {
        let good = Proof::axiom(&a());
        let bad = Proof::from_parts(Rule::Axiom, vec![], Sequent::new(vec![a()], Formula::atom("B")));
        let top = Proof::from_parts(
            Rule::TensorR,
            vec![good, bad],
            Sequent::new(vec![a(), a()], Formula::tensor(&a(), &Formula::atom("B"))),
        );
        match check(&top) {
            Err(LogicError::IllFormed { path, .. }) => assert_eq!(path, vec![1]),
            other => panic!("expected ill-formed, got {other:?}"),
        }
    }

    #[test]
    fn exchange_and_contraction() {
        let ba = Formula::bang(&a());
        let p = Proof::dereliction(Proof::axiom(&a())).unwrap();
        let w = Proof::weakening(&ba, p).unwrap();
        let c = Proof::contraction(w).unwrap();
        assert_eq!(check(&c).unwrap(), Sequent::new(vec![ba.clone()], a()));
        let t = Proof::tensor_r(Proof::axiom(&a()), Proof::axiom(&ba)).unwrap();
        let x = Proof::exchange(vec![1, 0], t).unwrap();
        assert_eq!(x.hyps(), &[ba, a()]);
        assert!(Proof::exchange(vec![0, 0], x.clone()).is_err());
    }
}
