//! Plain and component-wise plain proofs.
//!
//! A plain proof is a body `π : n₁ A₁, …, nᵣ Aᵣ ⊢ B` followed by
//! derelictions of every hypothesis and then, group by group, contractions
//! (or a weakening when `nᵢ = 0`) down to `!A₁, …, !Aᵣ ⊢ B`. A
//! component-wise plain proof promotes several plain proofs over the same
//! hypotheses, tensors them together and contracts the copies. Both shapes
//! are produced only by the constructors here, and recognised by peeling
//! that exact structure and rebuilding it.

use super::formula::Formula;
use super::proof::{LogicError, Proof, Rule};

fn not_plain(msg: impl Into<String>) -> LogicError {
    LogicError::NotInPlainForm(msg.into())
}

fn mismatch(msg: impl Into<String>) -> LogicError {
    LogicError::ShapeMismatch(msg.into())
}

fn rotate_perm(n: usize) -> Vec<usize> {
    (1..n).chain(std::iter::once(0).filter(|_| n > 0)).collect()
}

fn is_rotation(rule: &Rule, n: usize) -> bool {
    matches!(rule, Rule::Exchange(p) if *p == rotate_perm(n))
}

/// Moves the first hypothesis to the back, always recording the exchange.
fn rotate(p: Proof) -> Result<Proof, LogicError> {
    let n = p.hyps().len();
    Proof::exchange(rotate_perm(n), p)
}

/// Builds the plain proof with body `pi` and groups `(Aᵢ, nᵢ)`; the
/// hypotheses of `pi` must be `n₁` copies of `A₁`, then `n₂` of `A₂`, and so on.
pub fn make_plain(pi: &Proof, groups: &[(Formula, usize)]) -> Result<Proof, LogicError> {
    let expected: Vec<Formula> = groups
        .iter()
        .flat_map(|(a, n)| std::iter::repeat_n(a.clone(), *n))
        .collect();
    if pi.hyps() != expected.as_slice() {
        return Err(mismatch("body hypotheses do not match the degree vector"));
    }
    let mut p = pi.clone();
    for _ in 0..expected.len() {
        p = rotate(Proof::dereliction(p)?)?;
    }
    for (a, n) in groups {
        if *n == 0 {
            p = Proof::weakening(&Formula::bang(a), p)?;
        } else {
            for _ in 1..*n {
                p = Proof::contraction(p)?;
            }
        }
        p = rotate(p)?;
    }
    Ok(p)
}

/// Groups a body's hypotheses by the given unbanged bases and degrees.
pub fn groups_of(bases: &[Formula], degrees: &[usize]) -> Vec<(Formula, usize)> {
    bases.iter().cloned().zip(degrees.iter().copied()).collect()
}

/// Recognises a proof built by [`make_plain`], returning the degree vector and body.
pub fn plain_shape(p: &Proof) -> Result<(Vec<usize>, Proof), LogicError> {
    let bases: Vec<Formula> = p
        .hyps()
        .iter()
        .map(|h| h.unbang().cloned().ok_or_else(|| not_plain("a hypothesis is not of the form !A")))
        .collect::<Result<_, _>>()?;
    let r = bases.len();
    let mut degrees = vec![0; r];
    let mut cur = p.clone();
    for i in (0..r).rev() {
        if !is_rotation(cur.rule(), cur.hyps().len()) {
            return Err(not_plain(format!("group {i} does not end with a rotation")));
        }
        cur = cur.premises()[0].clone();
        if matches!(cur.rule(), Rule::Weakening) {
            cur = cur.premises()[0].clone();
            degrees[i] = 0;
        } else {
            let mut n = 1;
            while matches!(cur.rule(), Rule::Contraction) {
                cur = cur.premises()[0].clone();
                n += 1;
            }
            degrees[i] = n;
        }
    }
    let total: usize = degrees.iter().sum();
    for k in 0..total {
        if !is_rotation(cur.rule(), cur.hyps().len()) {
            return Err(not_plain(format!("dereliction block {k} lacks its rotation")));
        }
        cur = cur.premises()[0].clone();
        if !matches!(cur.rule(), Rule::Dereliction) {
            return Err(not_plain(format!("dereliction block {k} lacks its dereliction")));
        }
        cur = cur.premises()[0].clone();
    }
    let rebuilt = make_plain(&cur, &groups_of(&bases, &degrees)).map_err(|e| not_plain(e.to_string()))?;
    if &rebuilt != p {
        return Err(not_plain("structure differs from the normal form"));
    }
    Ok((degrees, cur))
}

/// Contracts groups `i < j` of a plain proof into group `i`, in normal form.
pub fn plain_contract(p: &Proof, i: usize, j: usize) -> Result<Proof, LogicError> {
    let (degrees, body) = plain_shape(p)?;
    if i >= j || j >= degrees.len() || p.hyps()[i] != p.hyps()[j] {
        return Err(mismatch("contracted hypotheses must be distinct and equal"));
    }
    let starts: Vec<usize> = degrees.iter().scan(0, |acc, d| {
        let s = *acc;
        *acc += d;
        Some(s)
    }).collect();
    let mut order: Vec<usize> = Vec::new();
    for g in 0..degrees.len() {
        if g == j {
            continue;
        }
        order.extend(starts[g]..starts[g] + degrees[g]);
        if g == i {
            order.extend(starts[j]..starts[j] + degrees[j]);
        }
    }
    let body = Proof::permute(order, body)?;
    let mut groups: Vec<(Formula, usize)> = Vec::new();
    for (g, h) in p.hyps().iter().enumerate() {
        if g == j {
            continue;
        }
        let extra = if g == i { degrees[j] } else { 0 };
        groups.push((h.unbang().expect("banged").clone(), degrees[g] + extra));
    }
    make_plain(&body, &groups)
}

/// Weakens a fresh hypothesis `!a` in at the end of a plain proof, in normal form.
pub fn plain_weaken(p: &Proof, a: &Formula) -> Result<Proof, LogicError> {
    let (degrees, body) = plain_shape(p)?;
    let mut groups: Vec<(Formula, usize)> = p
        .hyps()
        .iter()
        .zip(degrees)
        .map(|(h, d)| (h.unbang().expect("banged").clone(), d))
        .collect();
    groups.push((a.clone(), 0));
    make_plain(&body, &groups)
}

/// Tensors the promotions of plain proofs over the common hypotheses `hyps`
/// and contracts the copies.
pub fn make_componentwise(components: &[Proof], hyps: &[Formula]) -> Result<Proof, LogicError> {
    if components.is_empty() {
        return Err(mismatch("no components"));
    }
    for c in components {
        if c.hyps() != hyps {
            return Err(mismatch("component hypotheses differ from the shared context"));
        }
    }
    let proms = components
        .iter()
        .map(|c| Proof::promotion(c.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let mut iter = proms.into_iter().rev();
    let last = iter.next().expect("nonempty");
    let mut p = iter.try_fold(last, |acc, q| Proof::tensor_r(q, acc))?;
    let (t, r) = (components.len(), hyps.len());
    let grouping: Vec<usize> = (0..r).flat_map(|l| (0..t).map(move |c| c * r + l)).collect();
    p = Proof::exchange(grouping, p)?;
    for _ in 0..r {
        for _ in 1..t {
            p = Proof::contraction(p)?;
        }
        p = rotate(p)?;
    }
    Ok(p)
}

/// The Bang-prefixed factors of a right-nested tensor of `!`-formulas.
pub fn bang_factors(f: &Formula) -> Result<Vec<Formula>, LogicError> {
    let mut out = Vec::new();
    let mut cur = f.clone();
    loop {
        if cur.is_bang() {
            out.push(cur);
            return Ok(out);
        }
        let (a, b) = cur
            .as_tensor()
            .ok_or_else(|| mismatch(format!("{f} is not a tensor of !-formulas")))?;
        if !a.is_bang() {
            return Err(mismatch(format!("{f} is not a tensor of !-formulas")));
        }
        out.push(a.clone());
        cur = b.clone();
    }
}

/// Recognises the output of [`make_componentwise`], returning its components.
pub fn componentwise_shape(p: &Proof) -> Result<Vec<Proof>, LogicError> {
    let mut cur = p.clone();
    while matches!(cur.rule(), Rule::Exchange(_) | Rule::Contraction) {
        cur = cur.premises()[0].clone();
    }
    let mut components = Vec::new();
    loop {
        match cur.rule() {
            Rule::Promotion => {
                components.push(cur.premises()[0].clone());
                break;
            }
            Rule::TensorR if matches!(cur.premises()[0].rule(), Rule::Promotion) => {
                components.push(cur.premises()[0].premises()[0].clone());
                cur = cur.premises()[1].clone();
            }
            _ => return Err(not_plain("expected a tensor of promotions")),
        }
    }
    let rebuilt = make_componentwise(&components, p.hyps()).map_err(|e| not_plain(e.to_string()))?;
    if &rebuilt != p {
        return Err(not_plain("structure differs from the component-wise normal form"));
    }
    for c in &components {
        plain_shape(c)?;
    }
    Ok(components)
}

/// Replaces the hypotheses of `phi` by one right-nested tensor using `⊗L`.
pub fn tensor_unpack(phi: &Proof) -> Result<Proof, LogicError> {
    let mut p = phi.clone();
    let s = p.hyps().len();
    for k in (1..s).rev() {
        let n = p.hyps().len();
        let mut perm = vec![k - 1, k];
        perm.extend((0..n).filter(|&j| j != k - 1 && j != k));
        p = Proof::exchange(perm, p)?;
        p = Proof::tensor_l(p)?;
        let m = p.hyps().len();
        let mut back: Vec<usize> = (1..m).collect();
        back.insert(k - 1, 0);
        p = Proof::exchange(back, p)?;
    }
    Ok(p)
}

/// Peels the exact output of [`tensor_unpack`] for `s` hypotheses.
fn tensor_unpack_inverse(p: &Proof, s: usize) -> Result<Proof, LogicError> {
    let mut cur = p.clone();
    for _ in 0..3 * s.saturating_sub(1) {
        if !matches!(cur.rule(), Rule::Exchange(_) | Rule::TensorL) {
            return Err(not_plain("expected an unpacking of a tensor"));
        }
        cur = cur.premises()[0].clone();
    }
    if &tensor_unpack(&cur)? != p {
        return Err(not_plain("unpacking differs from the normal form"));
    }
    Ok(cur)
}

/// A plain proof as a body with its bases and degrees.
#[derive(Clone, Debug)]
pub struct PlainComponent {
    pub body: Proof,
    pub bases: Vec<Formula>,
    pub degrees: Vec<usize>,
}

impl PlainComponent {
    pub fn from_plain(p: &Proof) -> Result<PlainComponent, LogicError> {
        let (degrees, body) = plain_shape(p)?;
        let bases = p.hyps().iter().map(|h| h.unbang().expect("banged").clone()).collect();
        Ok(PlainComponent { body, bases, degrees })
    }

    pub fn to_proof(&self) -> Result<Proof, LogicError> {
        make_plain(&self.body, &groups_of(&self.bases, &self.degrees))
    }
}

/// The cut `φ | ψ` of two component-wise plain proofs, or of earlier such cuts.
pub fn compose_componentwise(phi: &Proof, psi: &Proof) -> Result<Proof, LogicError> {
    let outs = bang_factors(psi.concl())?;
    if phi.hyps() != outs.as_slice() {
        return Err(mismatch(format!(
            "interface mismatch: {} hypotheses against {} outputs",
            phi.hyps().len(),
            outs.len()
        )));
    }
    componentwise_parts(phi)?;
    componentwise_parts(psi)?;
    Proof::cut(psi.clone(), tensor_unpack(phi)?)
}

/// The components of a component-wise plain proof or of a composite of such
/// proofs, with composites expanded by substituting bodies into bodies.
pub fn componentwise_parts(p: &Proof) -> Result<Vec<PlainComponent>, LogicError> {
    if let Ok(cs) = componentwise_shape(p) {
        return cs.iter().map(PlainComponent::from_plain).collect();
    }
    if !matches!(p.rule(), Rule::Cut) {
        return Err(not_plain("neither component-wise plain nor a composite"));
    }
    let psi = &p.premises()[0];
    let s = bang_factors(psi.concl()).map_err(|e| not_plain(e.to_string()))?.len();
    let phi = tensor_unpack_inverse(&p.premises()[1], s)?;
    let inner = componentwise_parts(psi)?;
    let outer = componentwise_parts(&phi)?;
    outer.iter().map(|c| substitute(c, &inner)).collect()
}

/// Cuts a copy of `inner[k]`'s body into every `Bₖ` hypothesis of `outer`'s body.
fn substitute(outer: &PlainComponent, inner: &[PlainComponent]) -> Result<PlainComponent, LogicError> {
    let bases = inner
        .first()
        .map(|c| c.bases.clone())
        .ok_or_else(|| mismatch("no inner components"))?;
    let r = bases.len();
    // labels[i] = group index of hypothesis i of the body being built
    let mut labels: Vec<Option<usize>> = Vec::new();
    let mut owners: Vec<usize> = Vec::new();
    for (k, d) in outer.degrees.iter().enumerate() {
        owners.extend(std::iter::repeat_n(k, *d));
    }
    let mut body = outer.body.clone();
    labels.extend(std::iter::repeat_n(None, owners.len()));
    for &k in &owners {
        let idx = labels.iter().position(Option::is_none).expect("pending hypothesis");
        let c = &inner[k];
        body = Proof::cut(c.body.clone(), Proof::to_front(idx, body)?)?;
        let mut next: Vec<Option<usize>> = Vec::new();
        for (l, d) in c.degrees.iter().enumerate() {
            next.extend(std::iter::repeat_n(Some(l), *d));
        }
        next.extend(labels.iter().enumerate().filter(|&(j, _)| j != idx).map(|(_, x)| *x));
        labels = next;
    }
    let mut order: Vec<usize> = Vec::new();
    let mut degrees = vec![0; r];
    for (l, deg) in degrees.iter_mut().enumerate() {
        for (j, x) in labels.iter().enumerate() {
            if *x == Some(l) {
                order.push(j);
                *deg += 1;
            }
        }
    }
    let body = Proof::permute(order, body)?;
    Ok(PlainComponent { body, bases, degrees })
}

/// The component-wise normal form of a composite, with bodies joined by cuts.
pub fn renormalize(p: &Proof) -> Result<Proof, LogicError> {
    let parts = componentwise_parts(p)?;
    let comps = parts.iter().map(PlainComponent::to_proof).collect::<Result<Vec<_>, _>>()?;
    make_componentwise(&comps, p.hyps())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::proof::check;
    use crate::logic::term::{app, compile, lam, var};

    fn endo() -> Formula {
        Formula::endo(&Formula::atom("A"))
    }

    fn twice() -> Proof {
        let e = endo();
        let ctx = vec![("f".to_string(), e.clone()), ("g".to_string(), e.clone())];
        let a = Formula::atom("A");
        let t = lam("a", &a, app(var("f"), app(var("g"), var("a"))));
        compile(&ctx, &t).unwrap()
    }

    #[test]
    fn make_plain_round_trips() {
        let body = twice();
        let p = make_plain(&body, &[(endo(), 2)]).unwrap();
        check(&p).unwrap();
        assert_eq!(p.hyps(), &[Formula::bang(&endo())]);
        let (deg, b) = plain_shape(&p).unwrap();
        assert_eq!(deg, vec![2]);
        assert_eq!(b, body);
    }

    #[test]
    fn weakening_only_plain_proof() {
        let a = Formula::atom("A");
        let body = Proof::axiom(&a);
        let body = Proof::lolli_r(body).unwrap();
        let p = make_plain(&body, &[(endo(), 0)]).unwrap();
        assert_eq!(plain_shape(&p).unwrap().0, vec![0]);
    }

    #[test]
    fn axiom_is_not_plain() {
        let p = Proof::axiom(&Formula::bang(&endo()));
        assert!(matches!(plain_shape(&p), Err(LogicError::NotInPlainForm(_))));
    }

    #[test]
    fn stability_under_contraction_and_weakening() {
        let e = endo();
        let p = make_plain(&twice(), &[(e.clone(), 1), (e.clone(), 1)]).unwrap();
        let c = plain_contract(&p, 0, 1).unwrap();
        assert_eq!(plain_shape(&c).unwrap().0, vec![2]);
        let w = plain_weaken(&c, &Formula::atom("B")).unwrap();
        assert_eq!(plain_shape(&w).unwrap().0, vec![2, 0]);
        check(&w).unwrap();
    }
}
