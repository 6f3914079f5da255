//! A small linear lambda calculus that compiles to sequent calculus proofs.
//!
//! Banged variables may be used any number of times; the compiler inserts
//! the needed contractions and weakenings. Linear variables must be used
//! exactly once (once per branch of an additive tuple).

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};

use super::formula::Formula;
use super::proof::{LogicError, Proof};

#[derive(Clone, Debug)]
pub enum Term {
    Var(String),
    Lam(String, Formula, Box<Term>),
    App(Box<Term>, Box<Term>),
    /// Tensor pair.
    Pair(Box<Term>, Box<Term>),
    /// `let x ⊗ y = t in u`.
    LetPair(String, String, Box<Term>, Box<Term>),
    /// Additive tuple; builds a right-nested `&` and shares the context.
    Tuple(Vec<Term>),
    /// Component `i` of an `n`-fold `&`.
    Proj(usize, usize, Box<Term>),
    Prom(Box<Term>),
    Der(Box<Term>),
    /// Cuts the given terms against the hypotheses of a proof, in order.
    Use(Proof, Vec<Term>),
}

pub fn var(x: &str) -> Term {
    Term::Var(x.to_string())
}

pub fn lam(x: &str, ty: &Formula, body: Term) -> Term {
    Term::Lam(x.to_string(), ty.clone(), Box::new(body))
}

pub fn app(f: Term, a: Term) -> Term {
    Term::App(Box::new(f), Box::new(a))
}

pub fn apps(f: Term, args: Vec<Term>) -> Term {
    args.into_iter().fold(f, app)
}

pub fn pair(a: Term, b: Term) -> Term {
    Term::Pair(Box::new(a), Box::new(b))
}

/// Right-nested tensor of the given terms.
pub fn pairs(mut ts: Vec<Term>) -> Term {
    let last = ts.pop().expect("pairs needs a term");
    ts.into_iter().rev().fold(last, |acc, t| pair(t, acc))
}

pub fn let_pair(x: &str, y: &str, t: Term, body: Term) -> Term {
    Term::LetPair(x.to_string(), y.to_string(), Box::new(t), Box::new(body))
}

pub fn tuple(ts: Vec<Term>) -> Term {
    if ts.len() == 1 {
        ts.into_iter().next().unwrap()
    } else {
        Term::Tuple(ts)
    }
}

pub fn proj(i: usize, n: usize, t: Term) -> Term {
    if n == 1 {
        t
    } else {
        Term::Proj(i, n, Box::new(t))
    }
}

pub fn prom(t: Term) -> Term {
    Term::Prom(Box::new(t))
}

pub fn der(t: Term) -> Term {
    Term::Der(Box::new(t))
}

pub fn use_proof(p: &Proof, args: Vec<Term>) -> Term {
    Term::Use(p.clone(), args)
}

fn err(msg: impl Into<String>) -> LogicError {
    LogicError::Term(msg.into())
}

static FRESH: AtomicUsize = AtomicUsize::new(0);

fn fresh(base: &str) -> String {
    let root = base.split('#').next().unwrap_or(base);
    format!("{root}#{}", FRESH.fetch_add(1, Ordering::Relaxed))
}

pub type Ctx = Vec<(String, Formula)>;

fn lookup<'a>(ctx: &'a [(String, Formula)], x: &str) -> Option<&'a Formula> {
    ctx.iter().rev().find(|(n, _)| n == x).map(|(_, f)| f)
}

pub fn free_vars(t: &Term) -> HashSet<String> {
    let mut out = HashSet::new();
    collect_fv(t, &mut Vec::new(), &mut out);
    out
}

fn collect_fv(t: &Term, bound: &mut Vec<String>, out: &mut HashSet<String>) {
    match t {
        Term::Var(x) => {
            if !bound.contains(x) {
                out.insert(x.clone());
            }
        }
        Term::Lam(x, _, b) => {
            bound.push(x.clone());
            collect_fv(b, bound, out);
            bound.pop();
        }
        Term::App(a, b) | Term::Pair(a, b) => {
            collect_fv(a, bound, out);
            collect_fv(b, bound, out);
        }
        Term::LetPair(x, y, a, b) => {
            collect_fv(a, bound, out);
            bound.push(x.clone());
            bound.push(y.clone());
            collect_fv(b, bound, out);
            bound.pop();
            bound.pop();
        }
        Term::Tuple(ts) | Term::Use(_, ts) => ts.iter().for_each(|s| collect_fv(s, bound, out)),
        Term::Proj(_, _, a) | Term::Prom(a) | Term::Der(a) => collect_fv(a, bound, out),
    }
}

fn rename_free(t: &Term, old: &str, new: &str) -> Term {
    let r = |s: &Term| Box::new(rename_free(s, old, new));
    match t {
        Term::Var(x) if x == old => Term::Var(new.to_string()),
        Term::Var(_) => t.clone(),
        Term::Lam(x, _, _) if x == old => t.clone(),
        Term::Lam(x, ty, b) => Term::Lam(x.clone(), ty.clone(), r(b)),
        Term::App(a, b) => Term::App(r(a), r(b)),
        Term::Pair(a, b) => Term::Pair(r(a), r(b)),
        Term::LetPair(x, y, a, b) => {
            let body = if x == old || y == old { b.clone() } else { r(b) };
            Term::LetPair(x.clone(), y.clone(), r(a), body)
        }
        Term::Tuple(ts) => Term::Tuple(ts.iter().map(|s| rename_free(s, old, new)).collect()),
        Term::Use(p, ts) => Term::Use(p.clone(), ts.iter().map(|s| rename_free(s, old, new)).collect()),
        Term::Proj(i, n, a) => Term::Proj(*i, *n, r(a)),
        Term::Prom(a) => Term::Prom(r(a)),
        Term::Der(a) => Term::Der(r(a)),
    }
}

/// The type of `t` in context `ctx`.
pub fn type_of(ctx: &[(String, Formula)], t: &Term) -> Result<Formula, LogicError> {
    match t {
        Term::Var(x) => lookup(ctx, x).cloned().ok_or_else(|| err(format!("unbound variable {x}"))),
        Term::Lam(x, ty, b) => {
            let mut c = ctx.to_vec();
            c.push((x.clone(), ty.clone()));
            Ok(Formula::lolli(ty, &type_of(&c, b)?))
        }
        Term::App(f, _) => {
            let tf = type_of(ctx, f)?;
            tf.as_lolli()
                .map(|(_, b)| b.clone())
                .ok_or_else(|| err(format!("applying a non-function of type {tf}")))
        }
        Term::Pair(a, b) => Ok(Formula::tensor(&type_of(ctx, a)?, &type_of(ctx, b)?)),
        Term::LetPair(x, y, a, b) => {
            let ta = type_of(ctx, a)?;
            let (l, r) = ta
                .as_tensor()
                .ok_or_else(|| err(format!("let-pair on non-tensor {ta}")))?;
            let mut c = ctx.to_vec();
            c.push((x.clone(), l.clone()));
            c.push((y.clone(), r.clone()));
            type_of(&c, b)
        }
        Term::Tuple(ts) => {
            let tys: Vec<Formula> = ts.iter().map(|s| type_of(ctx, s)).collect::<Result<_, _>>()?;
            if tys.is_empty() {
                return Err(err("empty tuple"));
            }
            Ok(Formula::with_all(&tys))
        }
        Term::Proj(i, n, a) => {
            let ta = type_of(ctx, a)?;
            let parts = ta
                .with_components(*n)
                .ok_or_else(|| err(format!("projection {i}/{n} from {ta}")))?;
            parts.get(*i).cloned().ok_or_else(|| err("projection index out of range"))
        }
        Term::Prom(a) => Ok(Formula::bang(&type_of(ctx, a)?)),
        Term::Der(a) => {
            let ta = type_of(ctx, a)?;
            ta.unbang().cloned().ok_or_else(|| err(format!("dereliction of non-! type {ta}")))
        }
        Term::Use(p, _) => Ok(p.concl().clone()),
    }
}

/// Compiles `t` to a proof of `ctx ⊢ type_of(t)` with hypotheses in `ctx` order.
pub fn compile(ctx: &[(String, Formula)], t: &Term) -> Result<Proof, LogicError> {
    let fv = free_vars(t);
    for x in &fv {
        if lookup(ctx, x).is_none() {
            return Err(err(format!("unbound variable {x}")));
        }
    }
    let mut names = HashSet::new();
    for (n, _) in ctx {
        if !names.insert(n.clone()) {
            return Err(err(format!("duplicate context variable {n}")));
        }
    }
    let used: Ctx = ctx.iter().filter(|(n, _)| fv.contains(n)).cloned().collect();
    let unused: Ctx = ctx.iter().filter(|(n, _)| !fv.contains(n)).cloned().collect();
    if let Some((n, f)) = unused.iter().find(|(_, f)| !f.is_bang()) {
        return Err(err(format!("linear variable {n} : {f} is unused")));
    }
    let mut p = compile_core(&used, t)?;
    let mut order: Vec<String> = used.iter().map(|(n, _)| n.clone()).collect();
    for (n, f) in unused.iter().rev() {
        p = Proof::weakening(f, p)?;
        order.insert(0, n.clone());
    }
    reorder(p, &order, ctx)
}

/// Permutes hypotheses named `current` into the order of `target`.
fn reorder(p: Proof, current: &[String], target: &[(String, Formula)]) -> Result<Proof, LogicError> {
    let pos: HashMap<&str, usize> = current.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let perm: Vec<usize> = target
        .iter()
        .map(|(n, _)| pos.get(n.as_str()).copied().ok_or_else(|| err(format!("lost variable {n}"))))
        .collect::<Result<_, _>>()?;
    Proof::permute(perm, p)
}

/// Contracts renamed copies back into their originals, then reorders.
fn finish(
    mut p: Proof,
    names: Vec<String>,
    copies: &HashMap<String, String>,
    ctx: &[(String, Formula)],
) -> Result<Proof, LogicError> {
    let mut names: Vec<String> = names
        .into_iter()
        .map(|n| copies.get(&n).cloned().unwrap_or(n))
        .collect();
    loop {
        let mut dup = None;
        'outer: for i in 0..names.len() {
            for j in i + 1..names.len() {
                if names[i] == names[j] {
                    dup = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = dup else { break };
        let mut perm = vec![i, j];
        perm.extend((0..names.len()).filter(|&k| k != i && k != j));
        p = Proof::contraction(Proof::permute(perm.clone(), p)?)?;
        let kept = names[i].clone();
        let mut next = vec![kept];
        next.extend(perm[2..].iter().map(|&k| names[k].clone()));
        names = next;
    }
    reorder(p, &names, ctx)
}

/// Distributes `ctx` among subterms, renaming banged variables used by several of them.
/// `bound[i]` lists variables bound by the construct around subterm `i`.
fn split(
    ctx: &[(String, Formula)],
    subs: &[Term],
    bound: &[Vec<String>],
) -> Result<(Vec<Term>, Vec<Ctx>, HashMap<String, String>), LogicError> {
    let fvs: Vec<HashSet<String>> = subs
        .iter()
        .zip(bound)
        .map(|(t, b)| {
            let mut f = free_vars(t);
            for x in b {
                f.remove(x);
            }
            f
        })
        .collect();
    let mut terms = subs.to_vec();
    let mut ctxs: Vec<Ctx> = vec![Vec::new(); subs.len()];
    let mut copies = HashMap::new();
    for (n, f) in ctx {
        let users: Vec<usize> = (0..subs.len()).filter(|&i| fvs[i].contains(n)).collect();
        if users.len() > 1 && !f.is_bang() {
            return Err(err(format!("linear variable {n} : {f} used more than once")));
        }
        for (k, &i) in users.iter().enumerate() {
            if k == 0 {
                ctxs[i].push((n.clone(), f.clone()));
            } else {
                let m = fresh(n);
                terms[i] = rename_free(&terms[i], n, &m);
                copies.insert(m.clone(), n.clone());
                ctxs[i].push((m, f.clone()));
            }
        }
    }
    Ok((terms, ctxs, copies))
}

fn names_of(ctx: &[(String, Formula)]) -> Vec<String> {
    ctx.iter().map(|(n, _)| n.clone()).collect()
}

fn compile_core(ctx: &[(String, Formula)], t: &Term) -> Result<Proof, LogicError> {
    match t {
        Term::Var(x) => {
            if ctx.len() != 1 || &ctx[0].0 != x {
                return Err(err(format!("variable {x} in context of size {}", ctx.len())));
            }
            Ok(Proof::axiom(&ctx[0].1))
        }
        Term::Lam(x, ty, body) => {
            let mut c = ctx.to_vec();
            if c.iter().any(|(n, _)| n == x) {
                return Err(err(format!("binder {x} shadows a used variable")));
            }
            c.push((x.clone(), ty.clone()));
            Proof::lolli_r(compile(&c, body)?)
        }
        Term::Tuple(ts) => {
            if ts.is_empty() {
                return Err(err("empty tuple"));
            }
            let branches = ts.iter().map(|s| compile(ctx, s)).collect::<Result<Vec<_>, _>>()?;
            Proof::with_r_all(branches)
        }
        Term::Proj(i, n, a) => {
            let ta = type_of(ctx, a)?;
            let parts = ta
                .with_components(*n)
                .ok_or_else(|| err(format!("projection {i}/{n} from {ta}")))?;
            let ci = parts.get(*i).ok_or_else(|| err("projection index out of range"))?;
            let sel = Proof::with_l(*i, *n, &ta, Proof::axiom(ci))?;
            match a.as_ref() {
                Term::Var(_) => Ok(sel),
                _ => Proof::cut(compile_core(ctx, a)?, sel),
            }
        }
        Term::Der(a) => {
            let ta = type_of(ctx, a)?;
            let inner = ta.unbang().ok_or_else(|| err(format!("dereliction of non-! type {ta}")))?;
            let d = Proof::dereliction(Proof::axiom(inner))?;
            match a.as_ref() {
                Term::Var(_) => Ok(d),
                _ => Proof::cut(compile_core(ctx, a)?, d),
            }
        }
        Term::Prom(a) => {
            if let Some((n, f)) = ctx.iter().find(|(_, f)| !f.is_bang()) {
                return Err(err(format!("promotion over linear variable {n} : {f}")));
            }
            Proof::promotion(compile_core(ctx, a)?)
        }
        Term::App(f, a) => {
            let (terms, ctxs, copies) = split(ctx, &[(**f).clone(), (**a).clone()], &[vec![], vec![]])?;
            let tf = type_of(ctx, f)?;
            let (_, b) = tf
                .as_lolli()
                .ok_or_else(|| err(format!("applying a non-function of type {tf}")))?;
            let pa = compile(&ctxs[1], &terms[1])?;
            let q = Proof::lolli_l(pa, Proof::axiom(b))?;
            let (p, names) = match &terms[0] {
                Term::Var(g) => {
                    let mut names = vec![g.clone()];
                    names.extend(names_of(&ctxs[1]));
                    (q, names)
                }
                Term::Der(inner) if matches!(inner.as_ref(), Term::Var(_)) => {
                    let Term::Var(g) = inner.as_ref() else { unreachable!() };
                    let mut names = vec![g.clone()];
                    names.extend(names_of(&ctxs[1]));
                    (Proof::dereliction(q)?, names)
                }
                other => {
                    let pf = compile(&ctxs[0], other)?;
                    let mut names = names_of(&ctxs[0]);
                    names.extend(names_of(&ctxs[1]));
                    (Proof::cut(pf, q)?, names)
                }
            };
            finish(p, names, &copies, ctx)
        }
        Term::Pair(a, b) => {
            let (terms, ctxs, copies) = split(ctx, &[(**a).clone(), (**b).clone()], &[vec![], vec![]])?;
            let p = Proof::tensor_r(compile(&ctxs[0], &terms[0])?, compile(&ctxs[1], &terms[1])?)?;
            let mut names = names_of(&ctxs[0]);
            names.extend(names_of(&ctxs[1]));
            finish(p, names, &copies, ctx)
        }
        Term::LetPair(x, y, a, body) => {
            let ta = type_of(ctx, a)?;
            let (l, r) = ta
                .as_tensor()
                .ok_or_else(|| err(format!("let-pair on non-tensor {ta}")))?;
            let (terms, ctxs, copies) = split(
                ctx,
                &[(**a).clone(), (**body).clone()],
                &[vec![], vec![x.clone(), y.clone()]],
            )?;
            let mut bctx = vec![(x.clone(), l.clone()), (y.clone(), r.clone())];
            bctx.extend(ctxs[1].iter().cloned());
            let tl = Proof::tensor_l(compile(&bctx, &terms[1])?)?;
            let (p, names) = match &terms[0] {
                Term::Var(z) => {
                    let mut names = vec![z.clone()];
                    names.extend(names_of(&ctxs[1]));
                    (tl, names)
                }
                other => {
                    let pa = compile(&ctxs[0], other)?;
                    let mut names = names_of(&ctxs[0]);
                    names.extend(names_of(&ctxs[1]));
                    (Proof::cut(pa, tl)?, names)
                }
            };
            finish(p, names, &copies, ctx)
        }
        Term::Use(proof, args) => {
            if args.len() != proof.hyps().len() {
                return Err(err(format!(
                    "proof expects {} arguments, given {}",
                    proof.hyps().len(),
                    args.len()
                )));
            }
            let bound = vec![vec![]; args.len()];
            let (terms, ctxs, copies) = split(ctx, args, &bound)?;
            let mut p = proof.clone();
            let mut names: Vec<String> = (0..args.len()).map(|_| fresh("arg")).collect();
            let holes = names.clone();
            for (i, t) in terms.iter().enumerate() {
                let idx = names.iter().position(|n| n == &holes[i]).expect("hole present");
                if let Term::Var(x) = t {
                    if lookup(&ctxs[i], x) == Some(&proof.hyps()[i]) {
                        names[idx] = x.clone();
                        continue;
                    }
                }
                let pa = compile(&ctxs[i], t)?;
                p = Proof::cut(pa, Proof::to_front(idx, p)?)?;
                let mut next = names_of(&ctxs[i]);
                next.extend(names.iter().enumerate().filter(|&(k, _)| k != idx).map(|(_, n)| n.clone()));
                names = next;
            }
            finish(p, names, &copies, ctx)
        }
    }
}

/// Compiles a closed term.
pub fn compile_closed(t: &Term) -> Result<Proof, LogicError> {
    compile(&[], t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::proof::check;

    #[test]
    fn identity_and_projection() {
        let a = Formula::atom("A");
        let a2 = Formula::power(&a, 2);
        let p = compile_closed(&lam("x", &a2, proj(1, 2, var("x")))).unwrap();
        assert_eq!(p.concl(), &Formula::bool_type(&a));
        check(&p).unwrap();
    }

    #[test]
    fn banged_variables_are_contracted_and_weakened() {
        let a = Formula::atom("A");
        let be = Formula::bang(&Formula::endo(&a));
        let t = lam(
            "f",
            &be,
            lam("g", &be, lam("a", &a, app(der(var("f")), app(der(var("f")), var("a"))))),
        );
        let p = compile_closed(&t).unwrap();
        assert_eq!(p.concl(), &Formula::bint_type(&a));
        check(&p).unwrap();
    }

    #[test]
    fn linear_misuse_is_rejected() {
        let a = Formula::atom("A");
        let t = lam("x", &a, pair(var("x"), var("x")));
        assert!(compile_closed(&t).is_err());
        let t = lam("x", &a, lam("y", &a, var("y")));
        assert!(compile_closed(&t).is_err());
    }

    #[test]
    fn use_cuts_in_order() {
        let a = Formula::atom("A");
        let b = Formula::atom("B");
        let swap = compile(
            &[("x".into(), a.clone()), ("y".into(), b.clone())],
            &pair(var("y"), var("x")),
        )
        .unwrap();
        let ctx = vec![("p".to_string(), b.clone()), ("q".to_string(), a.clone())];
        let p = compile(&ctx, &use_proof(&swap, vec![var("q"), var("p")])).unwrap();
        assert_eq!(p.hyps(), &[b.clone(), a.clone()]);
        assert_eq!(p.concl(), &Formula::tensor(&b, &a));
        check(&p).unwrap();
    }
}
