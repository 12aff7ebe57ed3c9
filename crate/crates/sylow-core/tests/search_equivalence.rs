//! The pruned search against an independent exhaustive enumeration.
//!
//! For bounds with at most 12 admissible primes the whole choice space
//! (absent, or exponent 1..=max_exponent, per prime) is enumerated without
//! any pruning; the branch-and-bound output must equal it exactly, as sets
//! and in order.

use num_bigint::BigInt;
use proptest::prelude::*;

use sylow_core::certify::{
    certificate_to_group, search_certificates, verify_certificate, SearchBounds,
};
use sylow_core::engine::gamma;
use sylow_core::numerics::Rational;

fn rat(s: &str) -> Rational {
    s.parse().unwrap()
}

/// Admissible primes under the default forbidden set.
fn admissible(max_prime: u64) -> Vec<u64> {
    (7..=max_prime)
        .filter(|&n| sylow_core::numerics::is_prime(n))
        .collect()
}

/// Exhaustive oracle: no pruning, no sharing with the search code. Returns
/// sorted part lists `(prime, exponent)`.
fn brute_force(target: &Rational, max_prime: u64, max_parts: usize, max_exponent: u32)
    -> Vec<Vec<(u64, u32)>>
{
    let primes = admissible(max_prime);
    assert!(primes.len() <= 12, "oracle is exponential; keep it small");
    let mut results = Vec::new();
    let mut stack: Vec<(u64, u32)> = Vec::new();
    fn recurse(
        primes: &[u64],
        idx: usize,
        parts_left: usize,
        max_exponent: u32,
        sum: Rational,
        target: &Rational,
        stack: &mut Vec<(u64, u32)>,
        results: &mut Vec<Vec<(u64, u32)>>,
    ) {
        if idx == primes.len() {
            if &sum == target {
                results.push(stack.clone());
            }
            return;
        }
        // skip this prime
        recurse(primes, idx + 1, parts_left, max_exponent, sum.clone(), target, stack, results);
        if parts_left == 0 {
            return;
        }
        for e in 1..=max_exponent {
            let value = Rational::reciprocal_of(
                BigInt::from(primes[idx]).pow(e) + 1,
            )
            .unwrap();
            let next = Rational::sum([&sum, &value].into_iter());
            stack.push((primes[idx], e));
            recurse(primes, idx + 1, parts_left - 1, max_exponent, next, target, stack, results);
            stack.pop();
        }
    }
    recurse(
        &primes,
        0,
        max_parts,
        max_exponent,
        Rational::zero(),
        target,
        &mut stack,
        &mut results,
    );
    results.sort();
    results
}

fn search_parts(target: &Rational, bounds: &SearchBounds) -> Vec<Vec<(u64, u32)>> {
    search_certificates(target, bounds)
        .unwrap()
        .iter()
        .map(|c| c.parts().iter().map(|p| (p.prime(), p.exponent())).collect())
        .collect()
}

#[test]
fn four_ninths_below_thirty_with_four_parts_is_unsolvable() {
    // the independent enumeration over primes <= 30 finds nothing, and the
    // pruned search must agree exactly
    let oracle = brute_force(&rat("4/9"), 30, 4, 1);
    assert!(oracle.is_empty());
    assert_eq!(search_parts(&rat("4/9"), &SearchBounds::new(30, 4)), oracle);
}

#[test]
fn twelve_prime_window_matches_brute_force() {
    // primes 7..=47: exactly 12 admissible primes
    assert_eq!(admissible(47).len(), 12);
    for (target, max_parts) in [
        ("4/9", 8usize),
        ("1/2", 6),
        ("1/8", 3),
        ("5/12", 8),
        ("1/4", 12),
        ("7/30", 5),
    ] {
        let t = rat(target);
        let oracle = brute_force(&t, 47, max_parts, 1);
        let found = search_parts(&t, &SearchBounds::new(47, max_parts));
        assert_eq!(found, oracle, "disagreement at target {target}");
    }
}

#[test]
fn exponent_two_window_matches_brute_force() {
    for target in ["1/2", "13/100", "29/120", "1/50"] {
        let t = rat(target);
        let oracle = brute_force(&t, 23, 4, 2);
        let found = search_parts(
            &t,
            &SearchBounds::new(23, 4).with_max_exponent(2),
        );
        assert_eq!(found, oracle, "disagreement at target {target}");
    }
}

#[test]
fn every_found_four_ninths_certificate_certifies_a_group() {
    let found = search_certificates(&rat("4/9"), &SearchBounds::new(100, 8)).unwrap();
    assert!(!found.is_empty());
    for cert in &found {
        assert!(verify_certificate(cert).is_valid());
        let certified = certificate_to_group(cert).unwrap();
        assert_eq!(gamma(&certified.expr).unwrap(), rat("9/2"));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Random targets over a 12-prime window: pruned search equals the
    /// exhaustive enumeration, as sets in canonical order.
    #[test]
    fn random_targets_match_brute_force(
        numer in 1i64..40,
        denom in 1i64..60,
        max_parts in 1usize..=6,
    ) {
        let target = Rational::new(numer, denom).unwrap();
        let oracle = brute_force(&target, 47, max_parts, 1);
        let found = search_parts(&target, &SearchBounds::new(47, max_parts));
        prop_assert_eq!(found, oracle);
    }

    /// Targets constructed to be achievable are always found.
    #[test]
    fn achievable_targets_are_found(
        subset in proptest::sample::subsequence(
            vec![7u64, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47], 1..=5)
    ) {
        let terms: Vec<Rational> = subset
            .iter()
            .map(|&q| Rational::reciprocal_of(BigInt::from(q) + 1).unwrap())
            .collect();
        let target = Rational::sum(terms.iter());
        let found = search_parts(&target, &SearchBounds::new(47, subset.len()));
        let as_parts: Vec<(u64, u32)> = subset.iter().map(|&q| (q, 1)).collect();
        prop_assert!(found.contains(&as_parts));
    }
}
