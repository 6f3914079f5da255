//! Closed-form denotations of the step components on vacuums over distributions.

use num_traits::{One, Zero};

use super::{DistVec, Label};
use crate::linalg::Q;
use crate::machine::{Move, TuringMachine};

fn head(w: &[usize]) -> usize {
    w.last().copied().unwrap_or(0)
}

fn tail(w: &[usize]) -> Label {
    w[..w.len().saturating_sub(1)].to_vec()
}

fn cat(parts: &[&[usize]]) -> Label {
    parts.concat()
}

/// `Σᵢⱼ aᵢcⱼ δ_{d̂ᵢʲ = dir}` over the scanned symbols of `alpha`.
fn dir_weight(alpha: &DistVec, gamma: &DistVec, dir: Move, m: &TuringMachine) -> Q {
    let mut w = Q::zero();
    for (s, a) in alpha.iter() {
        for (q, c) in gamma.iter() {
            if m.delta(head(s), q[0]).2 == dir {
                w += a * c;
            }
        }
    }
    w
}

/// New left tape on `α^{⊗3} ⊗ β ⊗ γ^{⊗2}`.
pub fn closed_left(alpha: &DistVec, beta: &DistVec, gamma: &DistVec, m: &TuringMachine) -> DistVec {
    let (sa, sb, sc) = (alpha.mass(), beta.mass(), gamma.mass());
    let mut out = DistVec::new();
    let l = dir_weight(alpha, gamma, Move::Left, m);
    for (s, a) in alpha.iter() {
        out.add_term(tail(s), &l * &sa * &sb * &sc * a);
    }
    let r = dir_weight(alpha, gamma, Move::Right, m);
    let st = dir_weight(alpha, gamma, Move::Stay, m);
    for (si, ai) in alpha.iter() {
        for (sj, aj) in alpha.iter() {
            for (ql, cl) in gamma.iter() {
                let new = m.delta(head(sj), ql[0]).0;
                let w = ai * aj * cl;
                for (tk, bk) in beta.iter() {
                    out.add_term(cat(&[&tail(si), &[new, head(tk)]]), &r * &w * bk);
                }
                if !st.is_zero() {
                    out.add_term(cat(&[&tail(si), &[new]]), &st * &w * &sb);
                }
            }
        }
    }
    out
}

/// New right tape on `α^{⊗2} ⊗ β^{⊗2} ⊗ γ^{⊗2}`.
pub fn closed_right(alpha: &DistVec, beta: &DistVec, gamma: &DistVec, m: &TuringMachine) -> DistVec {
    let (sa, sb, sc) = (alpha.mass(), beta.mass(), gamma.mass());
    let mut out = DistVec::new();
    let r = dir_weight(alpha, gamma, Move::Right, m);
    for (t, b) in beta.iter() {
        out.add_term(tail(t), &r * &sa * &sb * &sc * b);
    }
    let l = dir_weight(alpha, gamma, Move::Left, m);
    let st = dir_weight(alpha, gamma, Move::Stay, m);
    for (ti, bi) in beta.iter() {
        for (tk, bk) in beta.iter() {
            let w = bi * bk;
            for (sj, aj) in alpha.iter() {
                for (ql, cl) in gamma.iter() {
                    let new = m.delta(head(sj), ql[0]).0;
                    out.add_term(cat(&[&tail(ti), &[head(tk), new]]), &l * &w * aj * cl);
                }
            }
            if !st.is_zero() {
                out.add_term(cat(&[&tail(ti), &[head(tk)]]), &st * &w * &sa * &sc);
            }
        }
    }
    out
}

/// New state on `α ⊗ γ`: `Σᵢⱼ aᵢcⱼ q̂ᵢʲ`.
pub fn closed_state(alpha: &DistVec, gamma: &DistVec, m: &TuringMachine) -> DistVec {
    let mut out = DistVec::new();
    for (s, a) in alpha.iter() {
        for (q, c) in gamma.iter() {
            out.add_term(vec![m.delta(head(s), q[0]).1], a * c);
        }
    }
    out
}

/// What a relative cell reads in one direction.
enum Source<'a> {
    Blank,
    Cell(&'a DistVec),
    Written,
}

/// New symbols `θ^{-h-1} … θ^{h+1}` and new state `μ` of the relative step,
/// on cells `α^{-h} … α^{h}` and state `β`.
pub fn closed_relstep(h: usize, alphas: &[DistVec], beta: &DistVec, m: &TuringMachine) -> (Vec<DistVec>, DistVec) {
    assert_eq!(alphas.len(), 2 * h + 1, "relative windows have 2h+1 cells");
    let hi = h as isize;
    let centre = &alphas[h];
    let mut written = DistVec::new();
    let mut mu = DistVec::new();
    for (i, a) in centre.iter() {
        for (q, b) in beta.iter() {
            let (s2, q2, _) = m.delta(i[0], q[0]);
            written.add_term(vec![s2], a * b);
            mu.add_term(vec![q2], a * b);
        }
    }
    let written_mass = centre.mass() * beta.mass();
    let dirs: Vec<Move> = (0..m.moves()).filter_map(Move::from_index).collect();
    let weights: Vec<Q> = dirs.iter().map(|&d| dir_weight(centre, beta, d, m)).collect();
    let blank = DistVec::singleton(vec![0]);
    let theta = (-hi - 1..=hi + 1)
        .map(|pos| {
            let sources: Vec<Source> = dirs
                .iter()
                .map(|&d| {
                    let p = pos + super::extract::shift(d);
                    if p == 0 {
                        Source::Written
                    } else if p.abs() <= hi {
                        Source::Cell(&alphas[(p + hi) as usize])
                    } else {
                        Source::Blank
                    }
                })
                .collect();
            let mass = |s: &Source| match s {
                Source::Blank => Q::one(),
                Source::Cell(a) => a.mass(),
                Source::Written => written_mass.clone(),
            };
            let mut out = DistVec::new();
            for (k, src) in sources.iter().enumerate() {
                let rest = sources
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != k)
                    .fold(weights[k].clone(), |acc, (_, s)| acc * mass(s));
                let vec = match src {
                    Source::Blank => &blank,
                    Source::Cell(a) => a,
                    Source::Written => &written,
                };
                out.add(vec, &rest);
            }
            out
        })
        .collect();
    (theta, mu)
}

/// New symbols, state and head of the absolute step on cells `α⁰ … α^{h-1}`,
/// state `β` and head `γ`, with head arithmetic modulo `h`.
pub fn closed_absstep(
    h: usize,
    alphas: &[DistVec],
    beta: &DistVec,
    gamma: &DistVec,
    m: &TuringMachine,
) -> (Vec<DistVec>, DistVec, DistVec) {
    assert_eq!(alphas.len(), h, "absolute tapes have h cells");
    let masses: Vec<Q> = alphas.iter().map(DistVec::mass).collect();
    let others = |k: usize| -> Q {
        masses
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .fold(Q::one(), |acc, (_, x)| acc * x)
    };
    let symbols = (0..h)
        .map(|pos| {
            let mut out = DistVec::new();
            for (i, a) in alphas[pos].iter() {
                for (q, b) in beta.iter() {
                    let ab = a * b;
                    out.add_term(vec![m.delta(i[0], q[0]).0], &ab * gamma.coeff(&[pos]));
                    let away = gamma.iter().filter(|(k, _)| k[0] != pos).fold(Q::zero(), |acc, (_, c)| acc + c);
                    out.add_term(i.clone(), &ab * away);
                }
            }
            out
        })
        .collect();
    let mut state = DistVec::new();
    for (k, ck) in gamma.iter() {
        let k = k[0];
        let w = ck * others(k);
        for (i, a) in alphas[k].iter() {
            for (q, b) in beta.iter() {
                state.add_term(vec![m.delta(i[0], q[0]).1], &w * a * b);
            }
        }
    }
    let mut head_out = DistVec::new();
    for (l, cl) in gamma.iter() {
        let l = l[0];
        let w = cl * others(l);
        for (i, a) in alphas[l].iter() {
            for (q, b) in beta.iter() {
                let d = super::extract::shift(m.delta(i[0], q[0]).2);
                for (k, ck) in gamma.iter() {
                    let to = (k[0] as isize + d).rem_euclid(h as isize) as usize;
                    head_out.add_term(vec![to], &w * a * b * ck);
                }
            }
        }
    }
    (symbols, state, head_out)
}
