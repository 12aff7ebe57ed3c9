//! Egyptian-fraction compensation certificates.
//!
//! A certificate claims `sum over parts q^e of 1/(q^e + 1) = target`. It is
//! verified over the common denominator `D` (the lcm of all `q^e + 1` and
//! the target's denominator) by pure integer addition: the claim holds iff
//! the numerators `D/(q^e + 1)` sum to `target * D`. The witness carries
//! all of those integers so third parties can re-check by addition alone.
//!
//! The search half ([`search_certificates`]) enumerates, exhaustively
//! within bounds, every part multiset hitting the target exactly.

mod search;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::group::{GroupAtom, GroupExpr};
use crate::jsonutil;
use crate::numerics::{lcm_all, PrimePower, Rational};
use crate::{Error, Result};

pub use search::{search_certificates, Residual, SearchBounds};

/// The primes excluded from certificates by default: the ones `A5` already
/// uses, whose contribution is a defect rather than a gain.
pub fn default_forbidden() -> BTreeSet<u64> {
    [2, 3, 5].into()
}

/// A multiset of prime powers with a target rational, claiming
/// `sum 1/(q^e + 1) = target`. Parts are strictly increasing in the prime,
/// every prime passes the deterministic primality check, and no prime lies
/// in the forbidden set (by default `{2, 3, 5}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    parts: Vec<PrimePower>,
    target: Rational,
}

impl Certificate {
    /// Validated constructor with the default forbidden set.
    pub fn new(parts: Vec<PrimePower>, target: Rational) -> Result<Self> {
        Self::with_forbidden(parts, target, &default_forbidden())
    }

    /// Constructor for searches over a custom forbidden set.
    pub fn with_forbidden(
        parts: Vec<PrimePower>,
        target: Rational,
        forbidden: &BTreeSet<u64>,
    ) -> Result<Self> {
        for (i, part) in parts.iter().enumerate() {
            if forbidden.contains(&part.prime()) {
                return Err(Error::Invalid(format!(
                    "part {} uses the forbidden prime {}",
                    i + 1,
                    part.prime()
                )));
            }
            if i > 0 && parts[i - 1].prime() >= part.prime() {
                return Err(Error::Invalid(format!(
                    "part {} breaks the strictly increasing prime order",
                    i + 1
                )));
            }
        }
        Ok(Certificate { parts, target })
    }

    /// Builds a squarefree certificate from a list of primes.
    pub fn from_primes(primes: &[u64], target: Rational) -> Result<Self> {
        let mut sorted = primes.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != primes.len() {
            return Err(Error::Invalid("certificate primes must be distinct".into()));
        }
        let parts = sorted
            .into_iter()
            .map(|q| PrimePower::new(q, 1))
            .collect::<Result<Vec<_>>>()?;
        Certificate::new(parts, target)
    }

    pub fn parts(&self) -> &[PrimePower] {
        &self.parts
    }

    pub fn target(&self) -> &Rational {
        &self.target
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.parts.iter().map(|p| p.prime())
    }

    pub fn is_squarefree(&self) -> bool {
        self.parts.iter().all(|p| p.exponent() == 1)
    }

    /// The exact reciprocal sum of the parts; the rational route, used to
    /// cross-check the integer-partition route of [`verify_certificate`].
    pub fn reciprocal_sum(&self) -> Rational {
        let terms: Vec<Rational> = self
            .parts
            .iter()
            .map(|p| {
                Rational::reciprocal_of(BigInt::from(p.value()) + 1).expect("positive")
            })
            .collect();
        Rational::sum(terms.iter())
    }

    /// Compact display: `7,11,13` with `q^e` for higher exponents.
    pub fn parts_text(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// JSON form: `{"target":"4/9","parts":[{"prime":7,"exponent":1},...]}`.
    pub fn to_json(&self) -> String {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|p| format!("{{\"prime\":{},\"exponent\":{}}}", p.prime(), p.exponent()))
            .collect();
        format!(
            "{{\"target\":\"{}\",\"parts\":[{}]}}",
            self.target,
            parts.join(",")
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v = jsonutil::parse(text)?;
        let target = jsonutil::field_rational(&v, "target")?;
        let rows = jsonutil::as_array(
            v.get("parts")
                .ok_or_else(|| Error::Invalid("missing field \"parts\"".into()))?,
            "parts",
        )?;
        let mut parts = Vec::with_capacity(rows.len());
        for row in rows {
            parts.push(PrimePower::new(
                jsonutil::field_u64(row, "prime")?,
                jsonutil::field_u32(row, "exponent")?,
            )?);
        }
        Certificate::new(parts, target)
    }
}

/// The integer content of a verified certificate: everything needed to
/// re-check the claim by addition over the common denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionWitness {
    common_denominator: BigUint,
    numerators: Vec<BigUint>,
    total: BigUint,
    target_numerator: BigInt,
}

impl PartitionWitness {
    pub fn common_denominator(&self) -> &BigUint {
        &self.common_denominator
    }

    /// `D/(q^e + 1)` per part, in part order.
    pub fn numerators(&self) -> &[BigUint] {
        &self.numerators
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn target_numerator(&self) -> &BigInt {
        &self.target_numerator
    }

    /// The certificate is valid iff the numerators sum to the target
    /// numerator.
    pub fn is_valid(&self) -> bool {
        BigInt::from(self.total.clone()) == self.target_numerator
    }

    /// `target - sum` as an exact rational; zero iff valid.
    pub fn deficit(&self) -> Rational {
        Rational::new(
            &self.target_numerator - BigInt::from(self.total.clone()),
            BigInt::from(self.common_denominator.clone()),
        )
        .expect("denominator positive")
    }
}

/// Verifies a certificate over the common denominator, by integer
/// arithmetic only — the rational sum never enters this route.
pub fn verify_certificate(cert: &Certificate) -> PartitionWitness {
    let part_denoms: Vec<BigUint> = cert
        .parts
        .iter()
        .map(|p| p.value() + BigUint::one())
        .collect();
    let mut lcm_input = part_denoms.clone();
    lcm_input.push(
        cert.target
            .denom()
            .to_biguint()
            .expect("denominator positive"),
    );
    let common = lcm_all(&lcm_input).expect("nonempty");
    let numerators: Vec<BigUint> = part_denoms.iter().map(|d| &common / d).collect();
    let total: BigUint = numerators.iter().sum();
    let scale = BigInt::from(&common / cert.target.denom().to_biguint().expect("positive"));
    let target_numerator = cert.target.numer() * scale;
    PartitionWitness {
        common_denominator: common,
        numerators,
        total,
        target_numerator,
    }
}

/// The group a valid squarefree `4/9` certificate certifies, together with
/// `M(Q)`, the product of its primes, and the group order `120 * M(Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedGroup {
    pub expr: GroupExpr,
    pub prime_product: BigUint,
    pub order: BigUint,
}

/// Converts a certificate into the expression `A5 * C2 * prod C_q`.
///
/// Requires a valid certificate for target `4/9` with all exponents 1;
/// anything else is rejected.
pub fn certificate_to_group(cert: &Certificate) -> Result<CertifiedGroup> {
    let four_ninths = Rational::new(4, 9).expect("const");
    if cert.target != four_ninths {
        return Err(Error::Invalid(format!(
            "certificate target is {}, not 4/9",
            cert.target
        )));
    }
    if !cert.is_squarefree() {
        return Err(Error::Invalid(
            "certificate has a part with exponent above 1".into(),
        ));
    }
    if !verify_certificate(cert).is_valid() {
        return Err(Error::Invalid(
            "certificate sum does not reach the target".into(),
        ));
    }
    let mut factors = vec![
        GroupAtom::A5,
        GroupAtom::Cyclic(PrimePower::new(2, 1).expect("const")),
    ];
    let mut prime_product = BigUint::one();
    for part in &cert.parts {
        factors.push(GroupAtom::Cyclic(*part));
        prime_product *= part.prime();
    }
    let order = &prime_product * 120u32;
    Ok(CertifiedGroup {
        expr: GroupExpr::new(factors),
        prime_product,
        order,
    })
}

/// Renders the line-oriented certificate file: target, one `q e numerator`
/// line per part, the common denominator, and the total.
pub fn witness_to_text(cert: &Certificate, witness: &PartitionWitness) -> String {
    let mut out = String::new();
    writeln!(out, "target {}", cert.target).expect("string write");
    for (part, numerator) in cert.parts.iter().zip(&witness.numerators) {
        writeln!(out, "{} {} {}", part.prime(), part.exponent(), numerator)
            .expect("string write");
    }
    writeln!(out, "denominator {}", witness.common_denominator).expect("string write");
    writeln!(out, "total {}", witness.total).expect("string write");
    out
}

/// Parses and re-checks a certificate file. Every claimed number is
/// recomputed: part numerators, the common denominator, and the total must
/// all be internally consistent, otherwise the file is rejected.
pub fn witness_from_text(text: &str) -> Result<(Certificate, PartitionWitness)> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let perr = |line: usize, msg: String| Error::parse(line, msg);

    let (ln, first) = lines
        .next()
        .ok_or_else(|| perr(0, "empty certificate file".into()))?;
    let target: Rational = first
        .strip_prefix("target ")
        .ok_or_else(|| perr(ln, "expected 'target n/d'".into()))?
        .trim()
        .parse()?;

    let mut parts: Vec<PrimePower> = Vec::new();
    let mut claimed_numerators: Vec<BigUint> = Vec::new();
    let mut denominator: Option<BigUint> = None;
    let mut total: Option<BigUint> = None;
    for (ln, line) in lines {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("denominator ") {
            if denominator.is_some() {
                return Err(perr(ln, "duplicate denominator line".into()));
            }
            denominator = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| perr(ln, "bad denominator".into()))?,
            );
        } else if let Some(rest) = line.strip_prefix("total ") {
            if total.is_some() {
                return Err(perr(ln, "duplicate total line".into()));
            }
            if denominator.is_none() {
                return Err(perr(ln, "total before denominator".into()));
            }
            total = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| perr(ln, "bad total".into()))?,
            );
        } else {
            if denominator.is_some() {
                return Err(perr(ln, "part line after denominator".into()));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(perr(ln, "expected 'q e numerator'".into()));
            }
            let prime: u64 = fields[0]
                .parse()
                .map_err(|_| perr(ln, "bad part prime".into()))?;
            let exponent: u32 = fields[1]
                .parse()
                .map_err(|_| perr(ln, "bad part exponent".into()))?;
            let numerator: BigUint = fields[2]
                .parse()
                .map_err(|_| perr(ln, "bad part numerator".into()))?;
            parts.push(PrimePower::new(prime, exponent)?);
            claimed_numerators.push(numerator);
        }
    }
    let denominator = denominator.ok_or_else(|| perr(0, "missing denominator line".into()))?;
    let total = total.ok_or_else(|| perr(0, "missing total line".into()))?;

    let cert = Certificate::new(parts, target)?;
    let witness = verify_certificate(&cert);
    if witness.common_denominator != denominator {
        return Err(Error::Invalid(format!(
            "claimed denominator {denominator} differs from the lcm {}",
            witness.common_denominator
        )));
    }
    if witness.numerators != claimed_numerators {
        return Err(Error::Invalid(
            "a claimed part numerator differs from D/(q^e+1)".into(),
        ));
    }
    if witness.total != total {
        return Err(Error::Invalid(format!(
            "claimed total {total} differs from the sum {}",
            witness.total
        )));
    }
    Ok((cert, witness))
}

/// JSON for a certificate together with its witness.
pub fn witness_to_json(cert: &Certificate, witness: &PartitionWitness) -> String {
    let parts: Vec<String> = cert
        .parts
        .iter()
        .zip(&witness.numerators)
        .map(|(p, n)| {
            format!(
                "{{\"prime\":{},\"exponent\":{},\"numerator\":{}}}",
                p.prime(),
                p.exponent(),
                n
            )
        })
        .collect();
    format!(
        "{{\"target\":\"{}\",\"denominator\":{},\"parts\":[{}],\"total\":{},\
         \"target_numerator\":{},\"valid\":{},\"deficit\":\"{}\"}}",
        cert.target,
        witness.common_denominator,
        parts.join(","),
        witness.total,
        witness.target_numerator,
        witness.is_valid(),
        witness.deficit()
    )
}
