//! The `A5 x N` compensation calculus for nilpotent `N`.
//!
//! Writing `|N_2| = 2^a`, `|N_3| = 3^b`, `|N_5| = 5^c` and `|N_q| = q^e_q`
//! for the new primes `q`, the invariant of the product is
//!
//! ```text
//! gamma(A5 x N) = 5/(2^(a+2)+1) + 10/(3^(b+1)+1) + 6/(5^(c+1)+1)
//!                 + sum over q of 1/(q^e_q + 1)
//! ```
//!
//! equivalently `9/2 - D2 - D3 - D5 + gain` with the closed-form defects
//! below. Equality with `9/2` holds exactly when the new-prime gain equals
//! the total old-prime defect.
//!
//! Everything here is computed from these closed formulas, never through
//! the generic product-rule engine; the two routes check each other in the
//! test suite.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::group::{GroupAtom, GroupExpr};
use crate::jsonutil;
use crate::numerics::{is_prime, power_of, Rational};
use crate::{Error, Result};

/// The primes `A5` shares with any nilpotent factor.
pub const OLD_PRIMES: [u64; 3] = [2, 3, 5];

/// `gamma(A5) = 9/2`.
pub fn gamma_a5() -> Rational {
    Rational::new(9, 2).expect("const")
}

/// A nilpotent factor by Sylow orders: exponents of 2, 3, 5 (possibly 0)
/// and `prime -> exponent >= 1` for primes outside `{2, 3, 5}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentSpec {
    a: u32,
    b: u32,
    c: u32,
    new_parts: BTreeMap<u64, u32>,
}

impl NilpotentSpec {
    pub fn new(a: u32, b: u32, c: u32, new_parts: BTreeMap<u64, u32>) -> Result<Self> {
        for (&q, &e) in &new_parts {
            if OLD_PRIMES.contains(&q) {
                return Err(Error::Invalid(format!(
                    "{q} is an old prime; use the 2/3/5 exponents instead"
                )));
            }
            if !is_prime(q) {
                return Err(Error::InvalidPrime {
                    value: q.to_string(),
                    reason: "new-part key must be prime".into(),
                });
            }
            if e == 0 {
                return Err(Error::Invalid(format!("exponent of {q} must be at least 1")));
            }
        }
        Ok(NilpotentSpec { a, b, c, new_parts })
    }

    pub fn trivial() -> Self {
        NilpotentSpec {
            a: 0,
            b: 0,
            c: 0,
            new_parts: BTreeMap::new(),
        }
    }

    pub fn exponents(&self) -> (u32, u32, u32) {
        (self.a, self.b, self.c)
    }

    pub fn new_parts(&self) -> &BTreeMap<u64, u32> {
        &self.new_parts
    }

    pub fn is_trivial(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0 && self.new_parts.is_empty()
    }

    /// The corresponding expression `A5 * N{...}` for cross-checks against
    /// the generic engine.
    pub fn to_expr(&self) -> GroupExpr {
        let mut layers: BTreeMap<u64, u32> = BTreeMap::new();
        for (p, e) in [(2u64, self.a), (3, self.b), (5, self.c)] {
            if e > 0 {
                layers.insert(p, e);
            }
        }
        layers.extend(self.new_parts.iter().map(|(&q, &e)| (q, e)));
        let mut factors = vec![GroupAtom::A5];
        if !layers.is_empty() {
            factors.push(GroupAtom::nilpotent(layers).expect("validated keys"));
        }
        GroupExpr::new(factors)
    }
}

/// Exact old-prime defect `D_p(d)` for `p in {2, 3, 5}` and `d = p^k`.
///
/// Closed forms: `D2(d) = 4(d-1)/(4d+1)`, `D3(d) = 15(d-1)/(2(3d+1))`,
/// `D5(d) = 5(d-1)/(5d+1)`. All vanish exactly at `d = 1`.
pub fn defect(p: u64, d: &BigUint) -> Result<Rational> {
    if !OLD_PRIMES.contains(&p) {
        return Err(Error::Invalid(format!("defect prime must be 2, 3 or 5, got {p}")));
    }
    if !d.is_one() && power_of(d, p).is_none() {
        return Err(Error::Invalid(format!("{d} is not a power of {p}")));
    }
    let d = BigInt::from(d.clone());
    let d_minus_1 = &d - 1;
    let r = match p {
        2 => Rational::new(&d_minus_1 * 4, &d * 4 + 1),
        3 => Rational::new(&d_minus_1 * 15, (&d * 3 + 1) * 2),
        5 => Rational::new(&d_minus_1 * 5, &d * 5 + 1),
        _ => unreachable!(),
    };
    Ok(r.expect("positive denominator"))
}

/// Defect for `p^k` given the exponent.
pub fn defect_from_exponent(p: u64, k: u32) -> Result<Rational> {
    defect(p, &BigUint::from(p).pow(k))
}

/// The full compensation report for `gamma(A5 x N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectReport {
    pub d2: Rational,
    pub d3: Rational,
    pub d5: Rational,
    /// New-prime gain `sum 1/(q^e + 1)`.
    pub gain: Rational,
    pub gamma_value: Rational,
    /// True exactly when the gain equals the total defect, i.e. when
    /// `gamma_value = 9/2`.
    pub balanced: bool,
}

impl DefectReport {
    /// JSON form, rationals as reduced `"n/d"` strings.
    pub fn to_json(&self) -> String {
        format!(
            "{{\"d2\":\"{}\",\"d3\":\"{}\",\"d5\":\"{}\",\"gain\":\"{}\",\
             \"gamma\":\"{}\",\"balanced\":{}}}",
            self.d2, self.d3, self.d5, self.gain, self.gamma_value, self.balanced
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v = jsonutil::parse(text)?;
        let report = DefectReport {
            d2: jsonutil::field_rational(&v, "d2")?,
            d3: jsonutil::field_rational(&v, "d3")?,
            d5: jsonutil::field_rational(&v, "d5")?,
            gain: jsonutil::field_rational(&v, "gain")?,
            gamma_value: jsonutil::field_rational(&v, "gamma")?,
            balanced: jsonutil::field_bool(&v, "balanced")?,
        };
        let master = Rational::sum(
            [
                gamma_a5(),
                -&report.d2,
                -&report.d3,
                -&report.d5,
                report.gain.clone(),
            ]
            .iter(),
        );
        if master != report.gamma_value {
            return Err(Error::Invalid(
                "report violates gamma = 9/2 - D2 - D3 - D5 + gain".into(),
            ));
        }
        if report.balanced != (report.gamma_value == gamma_a5()) {
            return Err(Error::Invalid("report balance flag is inconsistent".into()));
        }
        Ok(report)
    }
}

/// `gamma(A5 x N)` by the closed prime-power formula, with the defect
/// decomposition. Never consults the generic engine.
pub fn gamma_a5_times(spec: &NilpotentSpec) -> DefectReport {
    let term = |num: u32, base: u64, exp: u32| {
        Rational::new(
            BigInt::from(num),
            BigInt::from(BigUint::from(base).pow(exp)) + 1,
        )
        .expect("positive denominator")
    };
    let old2 = term(5, 2, spec.a + 2);
    let old3 = term(10, 3, spec.b + 1);
    let old5 = term(6, 5, spec.c + 1);
    let gain_terms: Vec<Rational> = spec
        .new_parts
        .iter()
        .map(|(&q, &e)| {
            Rational::reciprocal_of(BigInt::from(BigUint::from(q).pow(e)) + 1)
                .expect("positive")
        })
        .collect();
    let gain = Rational::sum(gain_terms.iter());
    let gamma_value = Rational::sum([&old2, &old3, &old5, &gain].into_iter());

    let d2 = defect_from_exponent(2, spec.a).expect("power of 2");
    let d3 = defect_from_exponent(3, spec.b).expect("power of 3");
    let d5 = defect_from_exponent(5, spec.c).expect("power of 5");

    // The defect master identity is a theorem; if the two routes ever
    // disagree one of the closed forms is mistyped.
    let by_defects = Rational::sum([gamma_a5(), -&d2, -&d3, -&d5, gain.clone()].iter());
    assert_eq!(
        gamma_value, by_defects,
        "defect decomposition disagrees with the direct formula"
    );

    let balanced = gain == Rational::sum([&d2, &d3, &d5].into_iter());
    DefectReport {
        d2,
        d3,
        d5,
        gain,
        gamma_value,
        balanced,
    }
}

/// Trichotomy of the squarefree single-defect threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threshold {
    Below,
    Equal,
    Above,
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Threshold::Below => "below",
            Threshold::Equal => "equal",
            Threshold::Above => "above",
        };
        write!(f, "{s}")
    }
}

/// Classifies `Theta(Q) = sum 1/(q+1)` against the `C2` defect `4/9`,
/// returning the exact difference `Theta(Q) - 4/9` as witness.
///
/// By the threshold identity this is also the sign of
/// `gamma(A5 x C2 x E_Q) - 9/2`.
pub fn threshold_classify(primes: &BTreeSet<u64>) -> Result<(Threshold, Rational)> {
    for &q in primes {
        if OLD_PRIMES.contains(&q) {
            return Err(Error::Invalid(format!("{q} is an old prime")));
        }
        if !is_prime(q) {
            return Err(Error::InvalidPrime {
                value: q.to_string(),
                reason: "threshold sets contain primes only".into(),
            });
        }
    }
    let terms: Vec<Rational> = primes
        .iter()
        .map(|&q| Rational::reciprocal_of(BigInt::from(q) + 1).expect("positive"))
        .collect();
    let theta = Rational::sum(terms.iter());
    let witness = &theta - &Rational::new(4, 9).expect("const");
    let class = if witness.is_negative() {
        Threshold::Below
    } else if witness.is_zero() {
        Threshold::Equal
    } else {
        Threshold::Above
    };
    Ok((class, witness))
}

/// Sign structure of a perturbation: old primes only push `gamma` down,
/// new primes only push it up, so one-sided specs can never restore `9/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OneSided {
    /// `N = 1`: no perturbation at all.
    Trivial,
    /// Only old primes occur; `gamma < 9/2` is forced.
    OldOnlyBelow,
    /// Only new primes occur; `gamma > 9/2` is forced.
    NewOnlyAbove,
    /// Both kinds occur; either sign and exact balance are possible.
    Mixed,
}

pub fn one_sided_check(spec: &NilpotentSpec) -> OneSided {
    let has_old = spec.a > 0 || spec.b > 0 || spec.c > 0;
    let has_new = !spec.new_parts.is_empty();
    match (has_old, has_new) {
        (false, false) => OneSided::Trivial,
        (true, false) => OneSided::OldOnlyBelow,
        (false, true) => OneSided::NewOnlyAbove,
        (true, true) => OneSided::Mixed,
    }
}
