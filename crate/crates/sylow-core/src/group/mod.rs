//! Group atoms, direct-product expressions, and Sylow profiles.
//!
//! An expression is an ordered product of atoms: the fixed `A5` block,
//! prime-power cyclic groups, nilpotent layers given by their Sylow orders,
//! and explicit permutation groups resolved through the brute-force oracle.
//! Every atom knows its complete Sylow profile; the product rule lives in
//! [`crate::engine`].

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::One;

use crate::numerics::{is_prime, power_of, PrimePower};
use crate::oracle::{Perm, PermGroup};
use crate::{jsonutil, Error, Result};

pub use parse::parse_group;

/// Sylow data for one prime: the subgroup count `nu` and common order
/// `sigma`, a positive power of the prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowDatum {
    prime: u64,
    nu: BigUint,
    sigma: BigUint,
}

impl SylowDatum {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn nu(&self) -> &BigUint {
        &self.nu
    }

    pub fn sigma(&self) -> &BigUint {
        &self.sigma
    }
}

/// The complete Sylow datum of a group: one entry per prime dividing the
/// order. Primes outside the order are never stored; the product rule
/// supplies the neutral `(1, 1)` on the fly when merging.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SylowProfile {
    entries: BTreeMap<u64, SylowDatum>,
}

impl SylowProfile {
    /// Profile of the trivial group: no entries.
    pub fn trivial() -> Self {
        SylowProfile::default()
    }

    /// Builds and validates a profile from `(prime, nu, sigma)` triples.
    ///
    /// The checks (prime is prime, sigma a positive power of it, nu >= 1
    /// with `nu = 1 mod p`) hold for every profile a correct engine can
    /// produce, so a violation is reported as an internal failure.
    pub fn from_data(data: Vec<(u64, BigUint, BigUint)>) -> Result<Self> {
        Self::build(data).map_err(Error::Internal)
    }

    /// Same validation, but failures are input errors; used by the JSON
    /// decoder where bad data is the caller's, not the engine's.
    pub fn from_untrusted_data(data: Vec<(u64, BigUint, BigUint)>) -> Result<Self> {
        Self::build(data).map_err(Error::Invalid)
    }

    fn build(data: Vec<(u64, BigUint, BigUint)>) -> std::result::Result<Self, String> {
        let mut entries = BTreeMap::new();
        for (prime, nu, sigma) in data {
            if !is_prime(prime) {
                return Err(format!("profile key {prime} is not prime"));
            }
            if power_of(&sigma, prime).is_none() {
                return Err(format!("sigma {sigma} is not a positive power of {prime}"));
            }
            if nu < BigUint::one() || &nu % prime != BigUint::one() {
                return Err(format!("nu {nu} violates the Sylow congruence mod {prime}"));
            }
            if entries
                .insert(prime, SylowDatum { prime, nu, sigma })
                .is_some()
            {
                return Err(format!("duplicate profile entry for {prime}"));
            }
        }
        Ok(SylowProfile { entries })
    }

    pub fn entries(&self) -> impl Iterator<Item = &SylowDatum> {
        self.entries.values()
    }

    pub fn get(&self, prime: u64) -> Option<&SylowDatum> {
        self.entries.get(&prime)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Product of all sigma values: the full prime-power part of the order.
    pub fn sigma_product(&self) -> BigUint {
        self.entries
            .values()
            .fold(BigUint::one(), |acc, d| acc * &d.sigma)
    }

    /// Canonical JSON: entries sorted by prime, fixed key order.
    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self
            .entries
            .values()
            .map(|d| format!("{{\"p\":{},\"nu\":{},\"sigma\":{}}}", d.prime, d.nu, d.sigma))
            .collect();
        format!("[{}]", rows.join(","))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value = jsonutil::parse(text)?;
        let rows = jsonutil::as_array(&value, "profile")?;
        let mut data = Vec::with_capacity(rows.len());
        for row in rows {
            data.push((
                jsonutil::field_u64(row, "p")?,
                jsonutil::field_biguint(row, "nu")?,
                jsonutil::field_biguint(row, "sigma")?,
            ));
        }
        Self::from_untrusted_data(data)
    }
}

/// A permutation-group atom: generators plus degree, with the enumerated
/// group cached behind the scenes. Identity of the atom is structural
/// (degree and generator list); the cache is shared by clones and is filled
/// at most once, so concurrent resolution is safe and idempotent.
#[derive(Clone, Debug)]
pub struct PermAtom {
    degree: usize,
    generators: Vec<Perm>,
    cache: Arc<OnceLock<Result<Arc<PermGroup>>>>,
}

impl PermAtom {
    pub fn new(generators: Vec<Perm>, degree: usize) -> Result<Self> {
        if degree == 0 || degree > crate::oracle::MAX_DEGREE {
            return Err(Error::Invalid(format!(
                "permutation atom degree {degree} outside 1..={}",
                crate::oracle::MAX_DEGREE
            )));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::Invalid(
                    "generator degree does not match atom degree".into(),
                ));
            }
        }
        Ok(PermAtom {
            degree,
            generators,
            cache: Arc::new(OnceLock::new()),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// The enumerated group, computed on first use.
    pub fn group(&self) -> Result<Arc<PermGroup>> {
        self.cache
            .get_or_init(|| {
                PermGroup::enumerate(self.generators.clone(), self.degree).map(Arc::new)
            })
            .clone()
    }
}

impl PartialEq for PermAtom {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.generators == other.generators
    }
}

impl Eq for PermAtom {}

impl Hash for PermAtom {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.degree.hash(state);
        self.generators.hash(state);
    }
}

impl fmt::Display for PermAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P[")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "]")
    }
}

/// One factor of a direct-product expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupAtom {
    /// The alternating group on five points, with its Sylow data fixed:
    /// `{2: (5,4), 3: (10,3), 5: (6,5)}`.
    A5,
    /// Cyclic group of prime-power order.
    Cyclic(PrimePower),
    /// A nilpotent group specified by its Sylow orders: `prime -> exponent`.
    Nilpotent(BTreeMap<u64, u32>),
    /// An explicit permutation group, profiled by the oracle.
    Perm(PermAtom),
}

impl GroupAtom {
    /// Validated nilpotent layer; keys must be distinct primes, exponents
    /// at least 1 (i.e. every stored order is a proper power of its key).
    pub fn nilpotent(layers: BTreeMap<u64, u32>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::Invalid("nilpotent layer must be nonempty".into()));
        }
        for (&p, &e) in &layers {
            if !is_prime(p) {
                return Err(Error::InvalidPrime {
                    value: p.to_string(),
                    reason: "nilpotent layer key must be prime".into(),
                });
            }
            if e == 0 {
                return Err(Error::Invalid(format!(
                    "nilpotent layer order for {p} must exceed 1"
                )));
            }
        }
        Ok(GroupAtom::Nilpotent(layers))
    }

    pub fn order(&self) -> Result<BigUint> {
        Ok(match self {
            GroupAtom::A5 => BigUint::from(60u32),
            GroupAtom::Cyclic(pp) => pp.value(),
            GroupAtom::Nilpotent(layers) => layers
                .iter()
                .fold(BigUint::one(), |acc, (&p, &e)| acc * BigUint::from(p).pow(e)),
            GroupAtom::Perm(atom) => BigUint::from(atom.group()?.order()),
        })
    }

    /// The complete Sylow profile of the atom.
    ///
    /// `A5` returns the fixed classical data. Cyclic groups and nilpotent
    /// layers have one normal Sylow subgroup per prime, so every count is 1.
    /// Permutation atoms delegate to the oracle's independent re-derivation.
    pub fn profile(&self) -> Result<SylowProfile> {
        match self {
            GroupAtom::A5 => SylowProfile::from_data(vec![
                (2, BigUint::from(5u32), BigUint::from(4u32)),
                (3, BigUint::from(10u32), BigUint::from(3u32)),
                (5, BigUint::from(6u32), BigUint::from(5u32)),
            ]),
            GroupAtom::Cyclic(pp) => SylowProfile::from_data(vec![(
                pp.prime(),
                BigUint::one(),
                pp.value(),
            )]),
            GroupAtom::Nilpotent(layers) => SylowProfile::from_data(
                layers
                    .iter()
                    .map(|(&p, &e)| (p, BigUint::one(), BigUint::from(p).pow(e)))
                    .collect(),
            ),
            GroupAtom::Perm(atom) => atom.group()?.sylow_profile(),
        }
    }
}

impl fmt::Display for GroupAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupAtom::A5 => write!(f, "A5"),
            GroupAtom::Cyclic(pp) => write!(f, "C{pp}"),
            GroupAtom::Nilpotent(layers) => {
                write!(f, "N{{")?;
                for (i, (&p, &e)) in layers.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}:{}", BigUint::from(p).pow(e))?;
                }
                write!(f, "}}")
            }
            GroupAtom::Perm(atom) => write!(f, "{atom}"),
        }
    }
}

/// A direct product of atoms; the empty product is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GroupExpr {
    factors: Vec<GroupAtom>,
}

impl GroupExpr {
    pub fn trivial() -> Self {
        GroupExpr::default()
    }

    pub fn new(factors: Vec<GroupAtom>) -> Self {
        GroupExpr { factors }
    }

    pub fn factors(&self) -> &[GroupAtom] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Product of the factor orders; 1 for the trivial group.
    pub fn order(&self) -> Result<BigUint> {
        let mut acc = BigUint::one();
        for f in &self.factors {
            acc *= f.order()?;
        }
        Ok(acc)
    }

    /// Concatenation of factor lists (the direct product of expressions).
    pub fn product(&self, other: &GroupExpr) -> GroupExpr {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        GroupExpr { factors }
    }

    /// Canonical text form; `parse_group(render(g)) == g`.
    pub fn render(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(" * ")
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
