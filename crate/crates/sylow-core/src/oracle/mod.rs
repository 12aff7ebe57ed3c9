//! Brute-force permutation-group engine on at most 16 points.
//!
//! Everything here works from the fully enumerated element list: Sylow
//! subgroups are grown through normalizers, Sylow counts are computed twice
//! (normalizer index and conjugate counting) and must agree, centers and
//! derived series are found by direct scan. The point of this module is to
//! be an independent check on the product-rule engine, so it shares no
//! formulas with it — only the final profile type.

mod perm;

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigUint;

use crate::group::SylowProfile;
use crate::numerics::trial_factorize;
use crate::{Error, Result};

pub use perm::{parse_generator_list, Perm, MAX_DEGREE};

/// Default cap on the closure size; enumeration refuses beyond it.
pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

/// A permutation group with its complete, deduplicated element list.
///
/// Elements are sorted lexicographically by image array, so index 0 is the
/// identity and every derived computation is deterministic.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

/// A subgroup, stored as a sorted set of indices into the parent's element
/// list. Conjugation then acts by index relabelling and subgroup equality
/// is plain set equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgroup {
    indices: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.indices.binary_search(&idx).is_ok()
    }
}

impl PermGroup {
    /// Breadth-first closure of the generators, with the default size cap.
    pub fn enumerate(generators: Vec<Perm>, degree: usize) -> Result<Self> {
        Self::enumerate_with_cap(generators, degree, DEFAULT_ELEMENT_CAP)
    }

    pub fn enumerate_with_cap(
        generators: Vec<Perm>,
        degree: usize,
        cap: usize,
    ) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::CapExceeded(format!(
                "degree {degree} outside supported range 1..={MAX_DEGREE}"
            )));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::Invalid(format!(
                    "generator degree {} does not match group degree {degree}",
                    g.degree()
                )));
            }
        }
        let identity = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::new();
        let mut queue: Vec<Perm> = vec![identity.clone()];
        seen.insert(identity);
        let mut head = 0;
        while head < queue.len() {
            let current = queue[head].clone();
            head += 1;
            for g in &generators {
                let next = current.then(g);
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(Error::CapExceeded(format!(
                            "closure exceeds the element cap of {cap}"
                        )));
                    }
                    seen.insert(next.clone());
                    queue.push(next);
                }
            }
        }
        let mut elements: Vec<Perm> = queue;
        elements.sort_unstable();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Ok(PermGroup {
            degree,
            generators,
            elements,
            index,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    fn perm(&self, idx: usize) -> &Perm {
        &self.elements[idx]
    }

    /// `g^-1 h g` as an element index.
    fn conjugate_element(&self, h: usize, g: usize) -> usize {
        let g_perm = self.perm(g);
        let conj = g_perm.inverse().then(self.perm(h)).then(g_perm);
        *self.index.get(&conj).expect("closure is complete")
    }

    /// Subgroup generated by the given element indices.
    pub fn subgroup_closure(&self, seeds: &[usize]) -> Subgroup {
        let mut members: HashSet<usize> = HashSet::new();
        let mut queue: Vec<usize> = vec![0]; // identity
        members.insert(0);
        for &s in seeds {
            if members.insert(s) {
                queue.push(s);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let a = queue[head];
            head += 1;
            for &s in seeds {
                let next = self
                    .index_of(&self.perm(a).then(self.perm(s)))
                    .expect("closure is complete");
                if members.insert(next) {
                    queue.push(next);
                }
            }
        }
        let mut indices: Vec<usize> = members.into_iter().collect();
        indices.sort_unstable();
        Subgroup { indices }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { indices: vec![0] }
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup {
            indices: (0..self.order()).collect(),
        }
    }

    /// Checks that `h` really is a subgroup of this group.
    pub fn validate_subgroup(&self, h: &Subgroup) -> Result<()> {
        if h.indices.is_empty() || !h.contains(0) {
            return Err(Error::Invalid("subgroup must contain the identity".into()));
        }
        if h.indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("subgroup indices must be sorted".into()));
        }
        if *h.indices.last().expect("nonempty") >= self.order() {
            return Err(Error::Invalid("subgroup index out of range".into()));
        }
        for &a in &h.indices {
            for &b in &h.indices {
                let ab = self
                    .index_of(&self.perm(a).then(self.perm(b)))
                    .expect("closure is complete");
                if !h.contains(ab) {
                    return Err(Error::Invalid(
                        "element set is not closed under composition".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// A Sylow p-subgroup, grown from a single element of order `p` by
    /// repeatedly adjoining a p-element of the normalizer that lies outside
    /// the current subgroup. Deterministic: scans always run in element
    /// order.
    pub fn sylow_subgroup(&self, p: u64) -> Result<Subgroup> {
        let order = self.order() as u64;
        if p < 2 || order % p != 0 {
            return Err(Error::Invalid(format!(
                "{p} does not divide the group order {order}"
            )));
        }
        let mut p_part = 1u64;
        let mut m = order;
        while m % p == 0 {
            m /= p;
            p_part *= p;
        }

        let seed = self
            .elements
            .iter()
            .find(|e| e.order() % p == 0)
            .map(|e| {
                let o = e.order();
                e.pow(o / p)
            })
            .ok_or_else(|| {
                Error::Internal(format!("no element of order divisible by {p} found"))
            })?;
        let seed_idx = self.index_of(&seed).expect("closure is complete");
        let mut current = self.subgroup_closure(&[seed_idx]);

        while (current.order() as u64) < p_part {
            let normalizer = self.normalizer(&current)?;
            let extension = normalizer
                .indices
                .iter()
                .copied()
                .find(|&idx| !current.contains(idx) && is_p_element(self.perm(idx), p));
            let Some(ext) = extension else {
                // Sylow theory guarantees an extension exists; reaching this
                // point means the engine itself is broken.
                return Err(Error::Internal(format!(
                    "normalizer growth stalled below the full {p}-part"
                )));
            };
            let mut seeds = current.indices.clone();
            seeds.push(ext);
            current = self.subgroup_closure(&seeds);
        }
        if current.order() as u64 != p_part {
            return Err(Error::Internal(format!(
                "sylow growth overshot the {p}-part: got {}",
                current.order()
            )));
        }
        Ok(current)
    }

    /// `{g : g H g^-1 = H}`, by direct scan over all elements.
    pub fn normalizer(&self, h: &Subgroup) -> Result<Subgroup> {
        self.validate_subgroup(h)?;
        let mut indices = Vec::new();
        'outer: for g in 0..self.order() {
            for &a in &h.indices {
                if !h.contains(self.conjugate_element(a, g)) {
                    continue 'outer;
                }
            }
            indices.push(g);
        }
        Ok(Subgroup { indices })
    }

    /// The conjugate subgroup `g^-1 H g` as an index set.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut indices: Vec<usize> = h
            .indices
            .iter()
            .map(|&a| self.conjugate_element(a, g))
            .collect();
        indices.sort_unstable();
        Subgroup { indices }
    }

    /// Number of distinct conjugates of `h`.
    pub fn count_conjugates(&self, h: &Subgroup) -> usize {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for g in 0..self.order() {
            seen.insert(self.conjugate_subgroup(h, g).indices);
        }
        seen.len()
    }

    /// The complete Sylow profile, re-derived by brute force.
    ///
    /// For every prime dividing the order, the Sylow count is computed both
    /// as the normalizer index and by counting distinct conjugates; any
    /// disagreement is a hard failure, because the two routes are different
    /// theorems about the same number.
    pub fn sylow_profile(&self) -> Result<SylowProfile> {
        let mut data = Vec::new();
        for (p, e) in trial_factorize(self.order() as u64) {
            let sylow = self.sylow_subgroup(p)?;
            if sylow.order() as u64 != p.pow(e) {
                return Err(Error::Internal(format!(
                    "sylow {p}-subgroup has order {} instead of {}",
                    sylow.order(),
                    p.pow(e)
                )));
            }
            let normalizer = self.normalizer(&sylow)?;
            let by_index = self.order() / normalizer.order();
            let by_conjugates = self.count_conjugates(&sylow);
            if by_index != by_conjugates {
                return Err(Error::Internal(format!(
                    "nu_{p} disagreement: normalizer index {by_index}, \
                     conjugate count {by_conjugates}"
                )));
            }
            data.push((p, BigUint::from(by_index), BigUint::from(sylow.order())));
        }
        SylowProfile::from_data(data)
    }

    /// `{g : gh = hg for all h}`. Checking against the generators is
    /// equivalent and linear instead of quadratic.
    pub fn center(&self) -> Subgroup {
        let indices = (0..self.order())
            .filter(|&g| {
                let gp = self.perm(g);
                self.generators
                    .iter()
                    .all(|h| gp.then(h) == h.then(gp))
            })
            .collect();
        Subgroup { indices }
    }

    /// Commutator subgroup of `h`: closure of all `[a,b] = a^-1 b^-1 a b`.
    pub fn derived_subgroup(&self, h: &Subgroup) -> Subgroup {
        let mut seeds: BTreeSet<usize> = BTreeSet::new();
        for &a in &h.indices {
            let a_inv = self.perm(a).inverse();
            for &b in &h.indices {
                let b_perm = self.perm(b);
                let comm = a_inv
                    .then(&b_perm.inverse())
                    .then(self.perm(a))
                    .then(b_perm);
                seeds.insert(self.index_of(&comm).expect("closure is complete"));
            }
        }
        let seeds: Vec<usize> = seeds.into_iter().collect();
        self.subgroup_closure(&seeds)
    }

    /// Solvability via the derived series: solvable iff it reaches 1.
    pub fn is_solvable(&self) -> bool {
        let mut current = self.full_subgroup();
        loop {
            let next = self.derived_subgroup(&current);
            if next.order() == current.order() {
                return current.order() == 1;
            }
            current = next;
        }
    }

    /// The direct product realized on disjoint point sets.
    pub fn direct_product(&self, other: &PermGroup) -> Result<PermGroup> {
        let degree = self.degree + other.degree;
        if degree > MAX_DEGREE {
            return Err(Error::CapExceeded(format!(
                "product degree {degree} exceeds {MAX_DEGREE}"
            )));
        }
        let mut generators: Vec<Perm> = self
            .generators
            .iter()
            .map(|g| g.extend_to(degree))
            .collect();
        generators.extend(
            other
                .generators
                .iter()
                .map(|g| g.shift(self.degree, degree)),
        );
        let product = PermGroup::enumerate_with_cap(generators, degree, DEFAULT_ELEMENT_CAP)?;
        if product.order() != self.order() * other.order() {
            return Err(Error::Internal(
                "direct-product order differs from the product of the factor orders".into(),
            ));
        }
        Ok(product)
    }
}

fn is_p_element(perm: &Perm, p: u64) -> bool {
    let mut o = perm.order();
    if o == 1 {
        return false;
    }
    while o % p == 0 {
        o /= p;
    }
    o == 1
}

/// Convenience constructors for the groups used throughout the test corpus.
pub mod groups {
    use super::*;

    fn from_text(s: &str) -> PermGroup {
        let (gens, degree) = parse_generator_list(s, 0).expect("valid generators");
        PermGroup::enumerate(gens, degree).expect("within caps")
    }

    /// The alternating group on 5 points, from the standard two generators.
    pub fn a5() -> PermGroup {
        from_text("(1 2 3 4 5);(1 2 3)")
    }

    /// The symmetric group on 4 points.
    pub fn s4() -> PermGroup {
        from_text("(1 2);(1 2 3 4)")
    }

    /// The alternating group on 4 points.
    pub fn a4() -> PermGroup {
        from_text("(1 2 3);(1 2)(3 4)")
    }

    /// The dihedral group of order 8 acting on the square.
    pub fn d8() -> PermGroup {
        from_text("(1 2 3 4);(1 3)")
    }

    /// Cyclic group of order `n` as a single `n`-cycle.
    pub fn cyclic(n: usize) -> PermGroup {
        assert!(n >= 1 && n <= MAX_DEGREE);
        if n == 1 {
            return from_text("()");
        }
        let pts: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        from_text(&format!("({})", pts.join(" ")))
    }
}
