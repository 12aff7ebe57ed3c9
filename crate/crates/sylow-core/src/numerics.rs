//! Exact integer and rational arithmetic plus small prime utilities.
//!
//! Every quantity in the crate is either an arbitrary-precision integer or a
//! [`Rational`] stored in reduced form with a positive denominator. Floating
//! point is never used: the identities being checked (gamma values, defect
//! balances, certificate sums) are exact rational equalities and would not
//! survive approximation.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// An exact rational number, always reduced, denominator always positive.
///
/// Equality is structural equality of reduced forms. Serializes as `"n/d"`
/// even when integral (`"9/2"`, `"0/1"`, `"3/1"`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// `n/d` reduced, sign moved to the numerator. Errors on `d = 0`.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let d: BigInt = denom.into();
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer.into(), d)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    /// `1/(v)` for a positive integer `v`; the building block of every
    /// reciprocal sum in the crate.
    pub fn reciprocal_of(v: impl Into<BigInt>) -> Result<Self> {
        Rational::new(BigInt::one(), v)
    }

    /// Exact sum; the empty sum is `0/1`.
    pub fn sum<'a, I: IntoIterator<Item = &'a Rational>>(terms: I) -> Self {
        let mut acc = BigRational::zero();
        for t in terms {
            acc += &t.0;
        }
        Rational(acc)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.denom().is_one()
    }

    /// `"n"` when the value is integral, `"n/d"` otherwise. Display always
    /// keeps the denominator; this is the human-facing form.
    pub fn pretty(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `"n/d"` or a bare integer `"n"`, with optional sign.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |msg: &str| Error::parse(0, format!("invalid rational {s:?}: {msg}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad("bad numerator"))?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad("bad denominator"))?;
                if d.is_zero() {
                    return Err(Error::ZeroDenominator);
                }
                Rational::new(n, d)
            }
            None => {
                let n = BigInt::from_str(s).map_err(|_| bad("not an integer or n/d"))?;
                Ok(Rational::from_integer(n))
            }
        }
    }
}

impl std::ops::Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl std::ops::Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl std::ops::Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// A prime raised to a positive exponent, e.g. the order of a Sylow layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    prime: u64,
    exponent: u32,
}

impl PrimePower {
    pub fn new(prime: u64, exponent: u32) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::InvalidPrime {
                value: prime.to_string(),
                reason: "not prime".into(),
            });
        }
        if exponent == 0 {
            return Err(Error::Invalid(format!(
                "exponent of {prime} must be at least 1"
            )));
        }
        Ok(PrimePower { prime, exponent })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// `prime^exponent` as a big integer.
    pub fn value(&self) -> BigUint {
        BigUint::from(self.prime).pow(self.exponent)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "{}", self.prime)
        } else {
            write!(f, "{}^{}", self.prime, self.exponent)
        }
    }
}

/// Least common multiple of a nonempty list of positive integers.
pub fn lcm_all(values: &[BigUint]) -> Result<BigUint> {
    if values.is_empty() {
        return Err(Error::EmptyLcm);
    }
    let mut acc = BigUint::one();
    for v in values {
        if v.is_zero() {
            return Err(Error::Invalid("lcm of zero".into()));
        }
        acc = acc.lcm(v);
    }
    Ok(acc)
}

/// Deterministic primality test, correct for the full `u64` range.
///
/// Trial division by small primes, then Miller-Rabin with the base set
/// {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}, which is known to be
/// deterministic below 3.3 * 10^24 and therefore for every 64-bit input.
/// Values that do not fit in 64 bits are rejected upstream rather than
/// tested probabilistically.
pub fn is_prime(n: u64) -> bool {
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in SMALL {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // n odd, > 37*37? not necessarily, but all composites < 41^2 have a
    // factor in SMALL, so from here Miller-Rabin alone decides.
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in SMALL {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for big integers: exact up to `u64`, rejected beyond.
pub fn is_prime_checked(n: &BigUint) -> Result<bool> {
    match u64::try_from(n) {
        Ok(v) => Ok(is_prime(v)),
        Err(_) => Err(Error::InvalidPrime {
            value: n.to_string(),
            reason: "exceeds the 64-bit range of the deterministic primality check".into(),
        }),
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Decomposes `n > 1` as `p^e` if it is a prime power.
///
/// For 64-bit `n` this is exact: `e = 1` falls to the deterministic
/// primality test, `e >= 2` to integer e-th roots. Larger inputs are
/// recognized only as powers of primes below 1000; anything else must be
/// written in `p^e` form by the caller.
pub fn as_prime_power(n: &BigUint) -> Option<PrimePower> {
    if n.is_one() || n.is_zero() {
        return None;
    }
    if let Ok(v) = u64::try_from(n) {
        if is_prime(v) {
            return Some(PrimePower { prime: v, exponent: 1 });
        }
        for e in 2..=v.ilog2() {
            let r = integer_root(v, e);
            if r.pow(e) == v && is_prime(r) {
                return Some(PrimePower { prime: r, exponent: e });
            }
        }
        return None;
    }
    for p in 2..1000u64 {
        if !is_prime(p) {
            continue;
        }
        let bp = BigUint::from(p);
        if (n % &bp).is_zero() {
            let mut m = n.clone();
            let mut e = 0u32;
            while (&m % &bp).is_zero() {
                m /= &bp;
                e += 1;
            }
            return m.is_one().then_some(PrimePower { prime: p, exponent: e });
        }
    }
    None
}

/// Largest `r` with `r^e <= v`, by binary search in integers.
fn integer_root(v: u64, e: u32) -> u64 {
    let mut lo = 1u64;
    let mut hi = 1u64 << (v.ilog2() / e + 1);
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        match mid.checked_pow(e) {
            Some(p) if p <= v => lo = mid,
            _ => hi = mid - 1,
        }
    }
    lo
}

/// Prime factorization by trial division, smallest prime first. Meant for
/// enumerated group orders and other desk-scale inputs, not for hard
/// factoring problems.
pub fn trial_factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut p: u64 = 2;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p = if p == 2 { 3 } else { p + 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

/// Exponent `e >= 1` with `p^e = n`, if any.
pub fn power_of(n: &BigUint, p: u64) -> Option<u32> {
    if p < 2 || n.is_zero() || n.is_one() {
        return None;
    }
    let bp = BigUint::from(p);
    let mut m = n.clone();
    let mut e = 0u32;
    while (&m % &bp).is_zero() {
        m /= &bp;
        e += 1;
    }
    (m.is_one() && e >= 1).then_some(e)
}
