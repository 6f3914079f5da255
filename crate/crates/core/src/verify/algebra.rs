//! Binary-integer algebra and the coalgebra laws of kets.

use num_traits::{One, Zero};

use super::{err, par_map, rng, Check, VerifyOptions};
use crate::bint_algebra::{
    al_witness, eval_on_kets, inclusion_exclusion_eval, independence_check,
    injectivity_check, pair_independence_check, permutations, standard_poly, vacuum_reduction_check, word_matrix,
    NcPoly, Verdict,
};
use crate::encodings::int_proof;
use crate::linalg::{q, random_rational, RatMatrix, Q};
use crate::logic::Formula;
use crate::machine::show_word;
use crate::polyform::words_up_to;
use crate::semantics::ket::{comultiply_product, project_left, project_right};
use crate::semantics::{apply, comultiply, counit, denote, dereliction, lin_comb, pair_grouplike, pair_primitive};
use crate::semantics::{Dims, Ket, Sampler, Value};

fn digits(t: &[usize], d: usize) -> usize {
    t.iter().filter(|&&x| x == d).count()
}

fn mats(r: &mut rand_chacha::ChaCha8Rng, k: usize, dim: usize) -> Vec<RatMatrix> {
    (0..k).map(|_| RatMatrix::random(r, dim)).collect()
}

fn kets_vs_subsets(seed: u64) -> Check {
    let mut check = Check::new("(a) eval_on_kets = inclusion_exclusion_eval, |T| <= 5, all k <= m+1, l <= n+1, 2x2");
    let mut r = rng(seed, 8000);
    for t in words_up_to(2, 5) {
        let (m, n) = (digits(&t, 0), digits(&t, 1));
        for k in 0..=m + 1 {
            for l in 0..=n + 1 {
                let (alphas, betas) = (mats(&mut r, k, 2), mats(&mut r, l, 2));
                let (gamma, delta) = (RatMatrix::random(&mut r, 2), RatMatrix::random(&mut r, 2));
                let direct = eval_on_kets(&t, &alphas, &gamma, &betas, &delta);
                let subsets = inclusion_exclusion_eval(&t, &alphas, &gamma, &betas, &delta);
                let ok = direct == subsets && (k <= m && l <= n || direct.is_zero());
                check.case(Ok(ok), || format!("T={} k={k} l={l}", show_word(&t)));
            }
        }
    }
    check
}

/// The word of `t` with digit polynomials `a`, `b`, first digit innermost.
fn word_poly(t: &[usize], a: &NcPoly, b: &NcPoly) -> NcPoly {
    t.iter()
        .fold(NcPoly::word(vec![]), |acc, &d| if d == 0 { a } else { b }.mul(&acc))
}

/// `T = 0010` with `k = 3`, `l = 1`, symbolically: the subset sum over
/// padded variables collapses to `Σ_{σ ∈ S₃} α_{σ1} β₁ α_{σ2} α_{σ3}`.
/// Symbols 0–2 are the α's and 3 is β₁.
fn worked_example(seed: u64) -> Vec<Check> {
    let t = [0, 0, 1, 0];
    let vars: Vec<NcPoly> = (0..4).map(|i| NcPoly::word(vec![i])).collect();
    let mut total = NcPoly::zero();
    let mut raw = std::collections::BTreeSet::new();
    for i in 0..1usize << 3 {
        let a = (0..3)
            .filter(|j| i >> j & 1 == 1)
            .fold(NcPoly::zero(), |acc, j| acc.add(&vars[j]));
        for jb in 0..2usize {
            let b = if jb == 1 { vars[3].clone() } else { NcPoly::zero() };
            let w = word_poly(&t, &a, &b);
            raw.extend(w.terms().map(|(m, _)| m.clone()));
            let sign = if (3 - i.count_ones() as usize + 1 - jb).is_multiple_of(2) { 1 } else { -1 };
            let mut scaled = NcPoly::zero();
            for (m, c) in w.terms() {
                scaled.add_term(m.clone(), c * q(sign));
            }
            total = total.add(&scaled);
        }
    }
    let mut want = NcPoly::zero();
    for (_, p) in permutations(3) {
        want.add_term(vec![p[0], 3, p[1], p[2]], Q::one());
    }
    let mut sym = Check::new("(b) T=0010, k=3, l=1: subset sum is the S3 sum");
    sym.case(Ok(total == want), || format!("got {total}"));
    let cancelled = raw.len() - total.len();
    let mut zeros = Check::new(format!(
        "(b) T=0010: {cancelled} of {} expanded monomials have zero coefficient",
        raw.len()
    ));
    zeros.case(Ok(raw.iter().all(|m| want.terms().any(|(w, _)| w == m) || total.terms().all(|(w, _)| w != m))), || {
        "a monomial missing a variable survived".into()
    });
    let mut num = Check::new("(b) T=0010 on random 2x2 rationals matches both evaluations");
    let mut r = rng(seed, 8100);
    for trial in 0..10 {
        let alphas = mats(&mut r, 3, 2);
        let betas = mats(&mut r, 1, 2);
        let (gamma, delta) = (RatMatrix::random(&mut r, 2), RatMatrix::random(&mut r, 2));
        let mut env = alphas.clone();
        env.push(betas[0].clone());
        let w = want.eval(&env);
        let ok = eval_on_kets(&t, &alphas, &gamma, &betas, &delta) == w
            && inclusion_exclusion_eval(&t, &alphas, &gamma, &betas, &delta) == w;
        num.case(Ok(ok), || format!("trial {trial}"));
    }
    vec![sym, zeros, num]
}

fn standard_identities(seed: u64) -> Vec<Check> {
    let mut r = rng(seed, 8200);
    let mut out = Vec::new();
    for n in 1..=2 {
        let mut c = Check::new(format!("(c) s{} vanishes on {n}x{n} rationals", 2 * n));
        let s = standard_poly(2 * n);
        for trial in 0..10 {
            let xs = mats(&mut r, 2 * n, n);
            c.case(Ok(s.eval(&xs).is_zero()), || format!("tuple {trial}"));
        }
        out.push(c);
    }
    let w = al_witness(2);
    let ts: Vec<Vec<usize>> = w.iter().map(|(_, t)| t.clone()).collect();
    let cs: Vec<Q> = w.iter().map(|(s, _)| q(*s)).collect();
    let mut c = Check::new("(c) al_witness(2) signed vacuum sum vanishes at dim 2");
    c.case(vacuum_reduction_check(&ts, &cs, 2, 10, seed).map_err(err), || "nonzero at dim 2".into());
    out.push(c);
    let mut c = Check::new("(c) al_witness(2) strings: DependentCandidate at dim 2");
    let v = independence_check(&ts, 2, 12, seed);
    c.case(Ok(matches!(v, Verdict::DependentCandidate { .. })), || format!("got {v}"));
    out.push(c);
    let mut c = Check::new("(c) al_witness(2) strings: Independent at dim 3");
    let v = independence_check(&ts, 3, 12, seed);
    c.case(Ok(matches!(v, Verdict::Independent(_))), || format!("got {v}"));
    out.push(c);
    out
}

fn free_group_pairs() -> Vec<Check> {
    let words = words_up_to(2, 5);
    let mut inj = Check::new("(d) injectivity for all distinct pairs |S|,|T| <= 5, dim 2");
    let mut pair = Check::new("(d) pair independence for all distinct pairs |S|,|T| <= 5, dim 2");
    for (i, s) in words.iter().enumerate() {
        for t in &words[i + 1..] {
            let what = || format!("S={} T={}", show_word(s), show_word(t));
            inj.case(injectivity_check(s, t, 2).map_err(err), what);
            pair.case(pair_independence_check(s, t, 2).map_err(err), what);
        }
    }
    vec![inj, pair]
}

/// `⟦n̲⟧(|∅⟩_α) = αⁿ` through the evaluator, then independence of `{⟦n̲⟧}`.
fn int_denotations(seed: u64) -> Vec<Check> {
    let a = Formula::atom("A");
    let endo = Formula::endo(&a);
    let mut link = Check::new("(e) int denotations on vacuums are matrix powers, n <= 4, dims 1-3");
    let mut ind = Check::new("(e) int denotations {n <= 4} Independent, dims 1-3");
    let ts: Vec<Vec<usize>> = (0..=4).map(|n| vec![0; n]).collect();
    for dim in 1..=3 {
        let sampler = Sampler::new(Dims::uniform(dim), seed, 2);
        let mut r = rng(seed, 8300 + dim as u64);
        let space = match sampler.space(&a) {
            Ok(s) => s,
            Err(e) => {
                link.case(Err(err(e)), || format!("dim {dim}"));
                continue;
            }
        };
        for n in 0..=4 {
            let alpha = RatMatrix::random(&mut r, dim);
            let outcome = (|| {
                let f = denote(&int_proof(n, &a).map_err(err)?).map_err(err)?;
                let arg = Value::vacuum(Value::matrix(&space, &space, alpha.clone()));
                let got = apply(&f, &arg).map_err(err)?;
                let want = Value::matrix(&space, &space, word_matrix(&ts[n], &alpha, &alpha));
                sampler.equal(&got, &want, &endo).map_err(err)
            })();
            link.case(outcome, || format!("n={n} dim {dim}"));
        }
        let v = independence_check(&ts, dim, 12, seed);
        ind.case(Ok(matches!(v, Verdict::Independent(_))), || format!("dim {dim}: got {v}"));
    }
    vec![link, ind]
}

pub fn criterion_bint(opts: &VerifyOptions) -> Vec<Check> {
    let seed = opts.seed;
    let parts: Vec<Vec<Check>> = par_map(opts.jobs, (0..5).collect(), |part| match part {
        0 => vec![kets_vs_subsets(seed)],
        1 => worked_example(seed),
        2 => standard_identities(seed),
        3 => free_group_pairs(),
        _ => int_denotations(seed),
    });
    parts.into_iter().flatten().collect()
}

fn vec2(r: &mut rand_chacha::ChaCha8Rng) -> Value {
    Value::vector(vec![random_rational(r), random_rational(r)])
}

/// Multisets of size at most 3 over `entries`, as kets over each point.
fn all_kets(points: &[Value], entries: &[Value]) -> Vec<Value> {
    let mut idx: Vec<Vec<usize>> = vec![vec![]];
    for len in 1..=3 {
        let mut next = Vec::new();
        for v in idx.iter().filter(|v| v.len() == len - 1) {
            for e in v.last().copied().unwrap_or(0)..entries.len() {
                let mut w = v.clone();
                w.push(e);
                next.push(w);
            }
        }
        idx.extend(next);
    }
    let mut out = Vec::new();
    for p in points {
        for ix in &idx {
            out.push(Value::ket(p.clone(), ix.iter().map(|&i| entries[i].clone()).collect()));
        }
    }
    out
}

fn tensor_terms(z: &Value) -> Vec<(Q, Value, Value)> {
    match z {
        Value::Tensor(ts) => ts.to_vec(),
        _ => Vec::new(),
    }
}

fn map_left(z: &Value, f: impl Fn(&Value) -> Result<Value, String>) -> Result<Value, String> {
    let terms = tensor_terms(z)
        .into_iter()
        .map(|(c, a, b)| Ok((c, Value::tensor(f(&a)?, b))))
        .collect::<Result<Vec<_>, String>>()?;
    lin_comb(terms).map_err(err)
}

fn map_right(z: &Value, f: impl Fn(&Value) -> Result<Value, String>) -> Result<Value, String> {
    let terms = tensor_terms(z)
        .into_iter()
        .map(|(c, a, b)| Ok((c, Value::tensor(a, f(&b)?))))
        .collect::<Result<Vec<_>, String>>()?;
    lin_comb(terms).map_err(err)
}

/// `(a ⊗ b) ⊗ c ↦ a ⊗ (b ⊗ c)`.
fn reassociate(z: &Value) -> Result<Value, String> {
    let mut out = Vec::new();
    for (c0, l, r) in tensor_terms(z) {
        for (c1, a, b) in tensor_terms(&l) {
            out.push((&c0 * &c1, Value::tensor(a, Value::tensor(b, r.clone()))));
        }
    }
    lin_comb(out).map_err(err)
}

fn swap(z: &Value) -> Result<Value, String> {
    lin_comb(tensor_terms(z).into_iter().map(|(c, a, b)| (c, Value::tensor(b, a))).collect()).map_err(err)
}

fn single_ket(x: &Value) -> Option<Ket> {
    x.as_kets().filter(|ks| ks.len() == 1).map(|ks| ks[0].1.clone())
}

pub fn criterion_kets(opts: &VerifyOptions) -> Vec<Check> {
    let seed = opts.seed;
    let a = Formula::atom("A");
    let ba = Formula::bang(&a);
    let pair = Formula::tensor(&ba, &ba);
    let triple = Formula::tensor(&ba, &pair);
    let sampler = Sampler::new(Dims::uniform(2), seed, 2);
    let mut r = rng(seed, 9000);
    let points = vec![vec2(&mut r), vec2(&mut r)];
    let entries = vec![Value::basis(2, 0), Value::basis(2, 1), vec2(&mut r)];
    let mut kets = all_kets(&points, &entries);
    for i in 0..4 {
        let (x, y) = (&kets[i * 7 % kets.len()], &kets[(i * 11 + 5) % kets.len()]);
        let mix = lin_comb(vec![(random_rational(&mut r), x.clone()), (random_rational(&mut r), y.clone())]);
        if let Ok(v) = mix {
            kets.push(v);
        }
    }
    let eq = |x: &Value, y: &Value, f: &Formula| sampler.equal(x, y, f).map_err(err);

    let mut coassoc = Check::new("coassociativity (D x id) D = (id x D) D");
    let mut counits = Check::new("counit laws (e x id) D = id = (id x e) D");
    let mut cocomm = Check::new("cocommutativity of D");
    for (i, x) in kets.iter().enumerate() {
        let what = || format!("ket {i}");
        let d = comultiply(x).map_err(err);
        coassoc.case(
            d.clone().and_then(|d| {
                let lhs = reassociate(&map_left(&d, |v| comultiply(v).map_err(err))?)?;
                let rhs = map_right(&d, |v| comultiply(v).map_err(err))?;
                eq(&lhs, &rhs, &triple)
            }),
            what,
        );
        counits.case(
            d.clone().and_then(|d| {
                Ok(eq(&project_left(&d).map_err(err)?, x, &ba)? && eq(&project_right(&d).map_err(err)?, x, &ba)?)
            }),
            what,
        );
        cocomm.case(d.and_then(|d| eq(&swap(&d)?, &d, &pair)), what);
    }

    let mut table = Check::new("dereliction table and counit values by ket length");
    for (i, x) in kets.iter().enumerate() {
        let Some(k) = single_ket(x) else { continue };
        let outcome = (|| {
            let got = dereliction(x).map_err(err)?;
            let (want, eps) = match k.entries.len() {
                0 => (k.point.clone(), Q::one()),
                1 => (k.entries[0].clone(), Q::zero()),
                _ => (Value::Zero, Q::zero()),
            };
            Ok(eq(&got, &want, &a)? && counit(x).map_err(err)? == eps)
        })();
        table.case(outcome, || format!("ket {i} of length {}", k.entries.len()));
    }

    let mut group = Check::new("group-like pairs c x d: D c x d = (c x d) x (c x d), e = 1");
    let mut prim = Check::new("primitive pairs c x y + x x d: primitive over c x d, projections recover x and y");
    let prod2 = Formula::tensor(&pair, &pair);
    for p in &points {
        for qpt in &points {
            let (c, d) = (Value::vacuum(p.clone()), Value::vacuum(qpt.clone()));
            let g = pair_grouplike(&c, &d).map_err(err);
            group.case(
                g.clone().and_then(|g| {
                    let dg = comultiply_product(&g).map_err(err)?;
                    let eps = counit(&c).map_err(err)? * counit(&d).map_err(err)?;
                    Ok(eq(&dg, &Value::tensor(g.clone(), g), &prod2)? && eps.is_one())
                }),
                || "vacuum pair".into(),
            );
            for v in &entries {
                for w in &entries {
                    let (x, y) = (Value::ket(p.clone(), vec![v.clone()]), Value::ket(qpt.clone(), vec![w.clone()]));
                    let outcome = (|| {
                        let g = g.clone()?;
                        let z = pair_primitive(&x, &y).map_err(err)?;
                        let direct = lin_comb(vec![
                            (Q::one(), Value::tensor(c.clone(), y.clone())),
                            (Q::one(), Value::tensor(x.clone(), d.clone())),
                        ])
                        .map_err(err)?;
                        let dz = comultiply_product(&z).map_err(err)?;
                        let prim_rhs = lin_comb(vec![
                            (Q::one(), Value::tensor(g.clone(), z.clone())),
                            (Q::one(), Value::tensor(z.clone(), g)),
                        ])
                        .map_err(err)?;
                        Ok(eq(&z, &direct, &pair)?
                            && eq(&dz, &prim_rhs, &prod2)?
                            && eq(&project_left(&z).map_err(err)?, &x, &ba)?
                            && eq(&project_right(&z).map_err(err)?, &y, &ba)?)
                    })();
                    prim.case(outcome, || "primitive pair".into());
                }
            }
        }
    }
    vec![coassoc, counits, cocomm, table, group, prim]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ket_enumeration_counts_multisets() {
        let pts = vec![Value::basis(2, 0)];
        let es = vec![Value::basis(2, 0), Value::basis(2, 1), Value::basis(2, 1)];
        assert_eq!(all_kets(&pts, &es).len(), 1 + 3 + 6 + 10);
    }

    #[test]
    fn word_poly_puts_first_digit_innermost() {
        let (x, y) = (NcPoly::word(vec![0]), NcPoly::word(vec![1]));
        assert_eq!(word_poly(&[0, 1], &x, &y), NcPoly::word(vec![1, 0]));
        let (a, b) = crate::bint_algebra::free_group_matrices();
        assert_eq!(word_poly(&[0, 1], &x, &y).eval(&[a.clone(), b.clone()]), word_matrix(&[0, 1], &a, &b));
    }
}
