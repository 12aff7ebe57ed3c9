//! Deterministic branch-and-bound search for certificate sets.
//!
//! Parts are chosen in strictly increasing prime order (so every set is
//! visited exactly once), exponents from 1 upward. Pruning uses only sound
//! monotone residual tests, so within the stated bounds the output is
//! exhaustive: it is exactly the set of certificates whose reciprocal sum
//! equals the target.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};

use crate::numerics::{PrimePower, Rational};
use crate::{Error, Result};

use super::{default_forbidden, Certificate};

/// Default node budget; the search refuses to continue beyond it.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Hard ceiling on `max_prime`, to bound the sieve.
const MAX_PRIME_CEILING: u64 = 10_000_000;

/// Bounds for the certificate search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_prime: u64,
    pub max_parts: usize,
    pub max_exponent: u32,
    pub forbidden: BTreeSet<u64>,
    pub node_budget: u64,
}

impl SearchBounds {
    pub fn new(max_prime: u64, max_parts: usize) -> Self {
        SearchBounds {
            max_prime,
            max_parts,
            max_exponent: 1,
            forbidden: default_forbidden(),
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn with_max_exponent(mut self, max_exponent: u32) -> Self {
        self.max_exponent = max_exponent;
        self
    }

    pub fn with_forbidden(mut self, forbidden: BTreeSet<u64>) -> Self {
        self.forbidden = forbidden;
        self
    }

    pub fn with_node_budget(mut self, node_budget: u64) -> Self {
        self.node_budget = node_budget;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.max_parts == 0 || self.max_exponent == 0 || self.node_budget == 0 {
            return Err(Error::Invalid(
                "search bounds must all be at least 1".into(),
            ));
        }
        if self.max_prime > MAX_PRIME_CEILING {
            return Err(Error::CapExceeded(format!(
                "max_prime {} exceeds the sieve ceiling {MAX_PRIME_CEILING}",
                self.max_prime
            )));
        }
        Ok(())
    }

    /// The smallest value any admissible part can contribute:
    /// `1/(max_prime^max_exponent + 1)`.
    fn smallest_part_value(&self) -> Rational {
        Rational::reciprocal_of(
            BigInt::from(BigUint::from(self.max_prime.max(2)).pow(self.max_exponent)) + 1,
        )
        .expect("positive")
    }

    /// Sound residual test for a partial sum.
    ///
    /// With `remaining` still to reach, the next admissible prime being
    /// `next_prime`, and `parts_remaining` parts available:
    ///
    /// - remaining zero: feasible (the current set is a solution);
    /// - remaining negative, or positive with no parts or primes left: prune;
    /// - remaining smaller than the smallest admissible part value: prune;
    /// - remaining larger than `parts_remaining / (next_prime + 1)`, the
    ///   coarse upper bound on what the remaining parts can still add
    ///   (each later part contributes at most `1/(next_prime + 1)`): prune.
    ///
    /// Never prunes a true solution; it need not detect every dead end.
    pub fn residual_bounds(
        &self,
        remaining: &Rational,
        next_prime: u64,
        parts_remaining: usize,
    ) -> Residual {
        if remaining.is_zero() {
            return Residual::Feasible;
        }
        if remaining.is_negative() || parts_remaining == 0 || next_prime > self.max_prime {
            return Residual::Prune;
        }
        if *remaining < self.smallest_part_value() {
            return Residual::Prune;
        }
        let best_case = Rational::new(
            BigInt::from(parts_remaining as u64),
            BigInt::from(next_prime) + 1,
        )
        .expect("positive");
        if best_case < *remaining {
            return Residual::Prune;
        }
        Residual::Feasible
    }
}

/// Verdict of the residual test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Residual {
    Feasible,
    Prune,
}

/// Exhaustively enumerates, in canonical order, every certificate within
/// the bounds whose reciprocal sum equals the target exactly.
///
/// Deterministic: the result is sorted lexicographically by the part
/// sequence, and repeated runs produce identical output. Refuses with the
/// explored-node count if the node budget is exceeded.
pub fn search_certificates(
    target: &Rational,
    bounds: &SearchBounds,
) -> Result<Vec<Certificate>> {
    bounds.validate()?;
    if !target.is_positive() {
        return Err(Error::Invalid(format!(
            "search target must be positive, got {target}"
        )));
    }
    let primes: Vec<u64> = sieve_primes(bounds.max_prime)
        .into_iter()
        .filter(|p| !bounds.forbidden.contains(p))
        .collect();

    let mut search = Search {
        bounds,
        primes: &primes,
        target: target.clone(),
        nodes: 0,
        chosen: Vec::new(),
        found: Vec::new(),
    };
    search.descend(0, target.clone(), bounds.max_parts)?;

    let mut found = search.found;
    found.sort_by(|a, b| {
        let key = |c: &Certificate| -> Vec<(u64, u32)> {
            c.parts().iter().map(|p| (p.prime(), p.exponent())).collect()
        };
        key(a).cmp(&key(b))
    });
    Ok(found)
}

struct Search<'a> {
    bounds: &'a SearchBounds,
    primes: &'a [u64],
    target: Rational,
    nodes: u64,
    chosen: Vec<PrimePower>,
    found: Vec<Certificate>,
}

impl Search<'_> {
    fn descend(
        &mut self,
        start: usize,
        remaining: Rational,
        parts_remaining: usize,
    ) -> Result<()> {
        if remaining.is_zero() {
            self.found.push(
                Certificate::with_forbidden(
                    self.chosen.clone(),
                    self.target.clone(),
                    &self.bounds.forbidden,
                )
                .expect("search builds parts in increasing prime order"),
            );
            return Ok(());
        }
        for (offset, &prime) in self.primes[start..].iter().enumerate() {
            let i = start + offset;
            match self
                .bounds
                .residual_bounds(&remaining, prime, parts_remaining)
            {
                Residual::Prune => {
                    // the coarse bound is monotone in the prime, so every
                    // later prime prunes as well
                    break;
                }
                Residual::Feasible => {}
            }
            for exponent in 1..=self.bounds.max_exponent {
                self.nodes += 1;
                if self.nodes > self.bounds.node_budget {
                    return Err(Error::BudgetExceeded {
                        explored: self.nodes,
                        budget: self.bounds.node_budget,
                    });
                }
                let value = Rational::reciprocal_of(
                    BigInt::from(BigUint::from(prime).pow(exponent)) + 1,
                )
                .expect("positive");
                let next_remaining = &remaining - &value;
                if next_remaining.is_negative() {
                    // this exponent overshoots; higher exponents give
                    // smaller values and may still fit
                    continue;
                }
                self.chosen.push(PrimePower::new(prime, exponent).expect("sieved"));
                self.descend(i + 1, next_remaining, parts_remaining - 1)?;
                self.chosen.pop();
            }
        }
        Ok(())
    }

}

/// Primes up to `limit` inclusive, by the sieve of Eratosthenes.
fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    primes
}
