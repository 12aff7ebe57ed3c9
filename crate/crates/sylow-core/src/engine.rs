//! The direct-product rule for Sylow profiles, the Sylow polynomial, and
//! its integral over [0,1].
//!
//! For a direct product, both the Sylow count and the Sylow order multiply
//! prime by prime, with absent primes contributing the neutral `(1, 1)`.
//! The invariant is computed from the merged profile:
//!
//! ```text
//! gamma(G) = sum over p in pi(G) of nu_p / (sigma_p + 1)
//! ```
//!
//! which is exactly the term-by-term integral of
//! `SP(G,x) = sum nu_p x^sigma_p`. The polynomial type exists for display;
//! the profile is the canonical object.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::group::{GroupExpr, SylowProfile};
use crate::numerics::Rational;
use crate::{Error, Result};

/// Merges profiles by the product rule: for every prime in the union of the
/// key sets, `nu` and `sigma` are the products over all inputs, absent
/// factors counting as `(1, 1)`.
pub fn merge_profiles(profiles: &[SylowProfile]) -> Result<SylowProfile> {
    let mut acc: BTreeMap<u64, (BigUint, BigUint)> = BTreeMap::new();
    for profile in profiles {
        for datum in profile.entries() {
            let entry = acc
                .entry(datum.prime())
                .or_insert_with(|| (BigUint::one(), BigUint::one()));
            entry.0 *= datum.nu();
            entry.1 *= datum.sigma();
        }
    }
    SylowProfile::from_data(
        acc.into_iter()
            .map(|(p, (nu, sigma))| (p, nu, sigma))
            .collect(),
    )
}

/// The complete Sylow profile of an expression: atom profiles merged by the
/// product rule. The trivial expression has the empty profile.
pub fn expr_profile(expr: &GroupExpr) -> Result<SylowProfile> {
    let profiles = expr
        .factors()
        .iter()
        .map(|a| a.profile())
        .collect::<Result<Vec<_>>>()?;
    merge_profiles(&profiles)
}

/// `SP(G,x)`: one term `nu_p x^sigma_p` per prime of `pi(G)`, keyed by the
/// exponent. Distinct primes always produce distinct exponents (each sigma
/// is a nontrivial prime power); this is asserted, not assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowPolynomial {
    terms: BTreeMap<BigUint, PolyTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyTerm {
    pub prime: u64,
    pub coefficient: BigUint,
}

impl SylowPolynomial {
    pub fn from_profile(profile: &SylowProfile) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for datum in profile.entries() {
            let clash = terms.insert(
                datum.sigma().clone(),
                PolyTerm {
                    prime: datum.prime(),
                    coefficient: datum.nu().clone(),
                },
            );
            if clash.is_some() {
                return Err(Error::Internal(format!(
                    "two primes share the polynomial exponent {}",
                    datum.sigma()
                )));
            }
        }
        Ok(SylowPolynomial { terms })
    }

    /// Terms in descending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &PolyTerm)> {
        self.terms.iter().rev()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Canonical text: descending exponents, ` + ` separators, coefficient
    /// 1 omitted; the zero polynomial prints as `0`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms()
            .map(|(sigma, term)| {
                if term.coefficient.is_one() {
                    format!("x^{sigma}")
                } else {
                    format!("{}x^{sigma}", term.coefficient)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// JSON form: `[{"prime":p,"nu":n,"sigma":s}, ...]` sorted by prime.
    pub fn to_json(&self) -> String {
        let mut rows: Vec<(u64, String)> = self
            .terms
            .iter()
            .map(|(sigma, term)| {
                (
                    term.prime,
                    format!(
                        "{{\"prime\":{},\"nu\":{},\"sigma\":{}}}",
                        term.prime, term.coefficient, sigma
                    ),
                )
            })
            .collect();
        rows.sort_by_key(|(p, _)| *p);
        format!(
            "[{}]",
            rows.into_iter().map(|(_, r)| r).collect::<Vec<_>>().join(",")
        )
    }

    /// Exact integral over [0,1]: `sum coefficient / (exponent + 1)`.
    pub fn integral(&self) -> Rational {
        let terms: Vec<Rational> = self
            .terms
            .iter()
            .map(|(sigma, term)| {
                Rational::new(
                    BigInt::from(term.coefficient.clone()),
                    BigInt::from(sigma.clone()) + 1,
                )
                .expect("sigma + 1 > 0")
            })
            .collect();
        Rational::sum(terms.iter())
    }
}

/// The Sylow polynomial of an expression.
pub fn sylow_polynomial(expr: &GroupExpr) -> Result<SylowPolynomial> {
    SylowPolynomial::from_profile(&expr_profile(expr)?)
}

/// `gamma` of a profile: the reciprocal sum over its entries.
pub fn gamma_of_profile(profile: &SylowProfile) -> Rational {
    let terms: Vec<Rational> = profile
        .entries()
        .map(|d| {
            Rational::new(
                BigInt::from(d.nu().clone()),
                BigInt::from(d.sigma().clone()) + 1,
            )
            .expect("sigma + 1 > 0")
        })
        .collect();
    Rational::sum(terms.iter())
}

/// `gamma` of an expression, through its merged profile.
pub fn gamma(expr: &GroupExpr) -> Result<Rational> {
    Ok(gamma_of_profile(&expr_profile(expr)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group;

    const G0: &str = "A5 * C2 * C7 * C11 * C13 * C17 * C19 * C29 * C71 * C83";

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn triples(p: &SylowProfile) -> Vec<(u64, u64, u64)> {
        p.entries()
            .map(|d| {
                (
                    d.prime(),
                    u64::try_from(d.nu()).unwrap(),
                    u64::try_from(d.sigma()).unwrap(),
                )
            })
            .collect()
    }

    #[test]
    fn merge_multiplies_shared_primes() {
        let a5 = parse_group("A5").unwrap();
        let c2 = parse_group("C2").unwrap();
        let merged = merge_profiles(&[
            expr_profile(&a5).unwrap(),
            expr_profile(&c2).unwrap(),
        ])
        .unwrap();
        assert_eq!(triples(&merged), vec![(2, 5, 8), (3, 10, 3), (5, 6, 5)]);
    }

    #[test]
    fn merge_of_singleton_is_identity() {
        let a5 = expr_profile(&parse_group("A5").unwrap()).unwrap();
        assert_eq!(merge_profiles(&[a5.clone()]).unwrap(), a5);
        assert_eq!(merge_profiles(&[]).unwrap(), SylowProfile::trivial());
    }

    #[test]
    fn merge_stacks_same_prime_powers() {
        let c3 = expr_profile(&parse_group("C3").unwrap()).unwrap();
        let c9 = expr_profile(&parse_group("C3^2").unwrap()).unwrap();
        let merged = merge_profiles(&[c3, c9]).unwrap();
        assert_eq!(triples(&merged), vec![(3, 1, 27)]);
    }

    #[test]
    fn g0_polynomial_text_is_canonical() {
        let g0 = parse_group(G0).unwrap();
        assert_eq!(
            sylow_polynomial(&g0).unwrap().to_text(),
            "x^83 + x^71 + x^29 + x^19 + x^17 + x^13 + x^11 + 5x^8 + x^7 + 6x^5 + 10x^3"
        );
    }

    #[test]
    fn small_polynomials() {
        let c2 = parse_group("C2").unwrap();
        assert_eq!(sylow_polynomial(&c2).unwrap().to_text(), "x^2");
        let trivial = parse_group("1").unwrap();
        assert_eq!(sylow_polynomial(&trivial).unwrap().to_text(), "0");
        let a5c2 = parse_group("A5 * C2").unwrap();
        assert_eq!(
            sylow_polynomial(&a5c2).unwrap().to_text(),
            "5x^8 + 6x^5 + 10x^3"
        );
    }

    #[test]
    fn gamma_values_from_the_compensation_family() {
        for (expr, expected) in [
            ("A5", "9/2"),
            (G0, "9/2"),
            ("A5 * C2", "73/18"),
            ("A5 * C7", "37/8"),
            ("1", "0/1"),
        ] {
            let g = parse_group(expr).unwrap();
            assert_eq!(gamma(&g).unwrap(), rat(expected), "gamma of {expr}");
        }
    }

    #[test]
    fn gamma_equals_polynomial_integral() {
        for expr in ["A5", G0, "A5 * C2", "A5 * N{2:2,7:49}", "1", "C2^3 * C3"] {
            let g = parse_group(expr).unwrap();
            assert_eq!(
                gamma(&g).unwrap(),
                sylow_polynomial(&g).unwrap().integral(),
                "routes disagree for {expr}"
            );
        }
    }

    #[test]
    fn polynomial_json_sorted_by_prime() {
        let a5c2 = parse_group("A5 * C2").unwrap();
        assert_eq!(
            sylow_polynomial(&a5c2).unwrap().to_json(),
            "[{\"prime\":2,\"nu\":5,\"sigma\":8},{\"prime\":3,\"nu\":10,\"sigma\":3},\
             {\"prime\":5,\"nu\":6,\"sigma\":5}]"
        );
    }

    #[test]
    fn adjoining_the_trivial_group_changes_nothing() {
        let g = parse_group("A5 * C2").unwrap();
        let with_trivial = g.product(&GroupExpr::trivial());
        assert_eq!(
            expr_profile(&g).unwrap(),
            expr_profile(&with_trivial).unwrap()
        );
        assert_eq!(gamma(&g).unwrap(), gamma(&with_trivial).unwrap());
    }
}
