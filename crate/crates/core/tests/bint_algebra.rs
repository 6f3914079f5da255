use lltm_core::bint_algebra::{
    al_witness, eval_on_kets, inclusion_exclusion_eval, independence_check, injectivity_check,
    pair_independence_check, standard_poly, t_poly, vacuum_reduction_check, BintError, Certificate, Verdict,
};
use lltm_core::polyform::words_up_to;
use lltm_core::{RatMatrix, Q};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mats(r: &mut ChaCha8Rng, k: usize, dim: usize) -> Vec<RatMatrix> {
    (0..k).map(|_| RatMatrix::random(r, dim)).collect()
}

fn witness() -> (Vec<Vec<usize>>, Vec<Q>) {
    let w = al_witness(2);
    (w.iter().map(|(_, t)| t.clone()).collect(), w.iter().map(|(s, _)| Q::from_integer((*s).into())).collect())
}

proptest! {
    #[test]
    fn kets_match_inclusion_exclusion(
        t in proptest::collection::vec(0usize..2, 0..6),
        extra_k in 0usize..2,
        extra_l in 0usize..2,
        short_k in 0usize..2,
        short_l in 0usize..2,
        seed in any::<u64>(),
    ) {
        let m = t.iter().filter(|&&d| d == 0).count();
        let n = t.len() - m;
        let k = (m + extra_k).saturating_sub(short_k);
        let l = (n + extra_l).saturating_sub(short_l);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (alphas, betas) = (mats(&mut r, k, 2), mats(&mut r, l, 2));
        let (gamma, delta) = (RatMatrix::random(&mut r, 2), RatMatrix::random(&mut r, 2));
        let direct = eval_on_kets(&t, &alphas, &gamma, &betas, &delta);
        prop_assert_eq!(&direct, &inclusion_exclusion_eval(&t, &alphas, &gamma, &betas, &delta));
        if k > m || l > n {
            prop_assert!(direct.is_zero());
        }
    }

    #[test]
    fn word_subsets_are_independent_at_dim_3(mask in 1u32..(1 << 31), seed in 0u64..4) {
        let words = words_up_to(2, 4);
        let ts: Vec<Vec<usize>> = words.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, w)| w.clone()).collect();
        prop_assert!(matches!(independence_check(&ts, 3, 12, seed), Verdict::Independent(_)));
    }
}

#[test]
fn standard_polynomials_vanish_on_small_matrices() {
    let mut r = ChaCha8Rng::seed_from_u64(0);
    for n in 1..=2 {
        let s = standard_poly(2 * n);
        for _ in 0..10 {
            assert!(s.eval(&mats(&mut r, 2 * n, n)).is_zero(), "s{} on {n}x{n}", 2 * n);
        }
        assert!(!s.eval(&mats(&mut r, 2 * n, n + 1)).is_zero(), "s{} on {}x{}", 2 * n, n + 1, n + 1);
    }
}

#[test]
fn witness_strings_spell_t2() {
    let (ts, cs) = witness();
    let t2 = t_poly(2);
    assert_eq!(t2.len(), ts.len());
    for (t, c) in ts.iter().zip(&cs) {
        let rev: Vec<usize> = t.iter().rev().copied().collect();
        assert!(t2.terms().any(|(w, d)| w == &rev && d == c), "{t:?}");
    }
}

/// `XY³` lies in the span of `X, XY, XY²` on 3x3 matrices (Cayley–Hamilton),
/// so the alternating sum already vanishes there; it first survives at dim 4.
#[test]
fn witness_sum_vanishes_through_dim_3() {
    let (ts, cs) = witness();
    for dim in 1..=3 {
        assert!(vacuum_reduction_check(&ts, &cs, dim, 10, 0).unwrap(), "dim {dim}");
    }
    assert!(!vacuum_reduction_check(&ts, &cs, 4, 10, 0).unwrap());
    assert!(matches!(independence_check(&ts, 2, 12, 0), Verdict::DependentCandidate { .. }));
    assert!(matches!(independence_check(&ts, 4, 12, 0), Verdict::Independent(_)));
}

#[test]
fn mixed_digit_counts_are_rejected() {
    let r = vacuum_reduction_check(&[vec![0], vec![1]], &vec![Q::from_integer(1.into()); 2], 2, 1, 0);
    assert!(matches!(r, Err(BintError::MixedDigitCounts(_))));
    assert!(matches!(injectivity_check(&[0], &[1], 1), Err(BintError::DimTooSmall(1))));
}

#[test]
fn all_short_words_are_independent() {
    // independence of the whole set covers every subset
    assert!(matches!(independence_check(&words_up_to(2, 4), 3, 12, 0), Verdict::Independent(_)));
    assert!(matches!(independence_check(&words_up_to(2, 3), 2, 12, 0), Verdict::Independent(_)));
}

#[test]
fn free_group_separates_short_words() {
    let words = words_up_to(2, 5);
    for (i, s) in words.iter().enumerate() {
        for t in &words[i + 1..] {
            assert!(injectivity_check(s, t, 2).unwrap(), "{s:?} {t:?}");
            assert!(pair_independence_check(s, t, 2).unwrap(), "{s:?} {t:?}");
        }
    }
}

#[test]
fn too_few_samples_are_unknown() {
    let words = words_up_to(2, 2);
    assert!(matches!(independence_check(&words, 1, 3, 0), Verdict::Unknown { .. }));
}

#[test]
fn certificates_round_trip_through_json() {
    let Verdict::Independent(cert) = independence_check(&[vec![0, 1], vec![1, 0]], 2, 8, 3) else {
        panic!("expected a certificate");
    };
    let back: Certificate = serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
    assert_eq!(back, cert);
    assert_eq!((cert.seed, cert.dim, cert.rank), (3, 2, 2));
}
