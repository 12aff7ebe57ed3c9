//! Permutations on the points `1..=n`, `n <= 16`, with cycle notation.
//!
//! Internally points are 0-indexed; all text I/O is 1-indexed. Composition
//! is left-to-right: `a.then(b)` applies `a` first, so the cycle string
//! `(1 2)(2 3)` parses to the single 3-cycle `(1 3 2)`.

use std::fmt;

use crate::{Error, Result};

/// Maximum supported degree. Keeps enumeration at desk scale and lets a
/// permutation pack into a small fixed buffer.
pub const MAX_DEGREE: usize = 16;

/// A bijection of `{0, .., degree-1}`, stored as its image array.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u8).collect())
    }

    /// Builds from an image array, checking it is a bijection.
    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::Invalid(format!(
                "permutation degree must be 1..={MAX_DEGREE}, got {n}"
            )));
        }
        let mut seen = [false; MAX_DEGREE];
        for &i in &images {
            if (i as usize) >= n || seen[i as usize] {
                return Err(Error::Invalid("image array is not a bijection".into()));
            }
            seen[i as usize] = true;
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, point: u8) -> u8 {
        self.0[point as usize]
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u8 == j)
    }

    /// Multiplicative order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, l| num_integer::lcm(acc, l as u64))
    }

    pub fn pow(&self, mut k: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            k >>= 1;
        }
        acc
    }

    /// Extends to a larger degree, fixing the new points.
    pub fn extend_to(&self, degree: usize) -> Perm {
        debug_assert!(degree >= self.degree() && degree <= MAX_DEGREE);
        let mut images = self.0.clone();
        images.extend(self.degree() as u8..degree as u8);
        Perm(images)
    }

    /// Shifts all points up by `offset` inside a larger degree, fixing the
    /// points below; realizes the second factor of a direct product.
    pub fn shift(&self, offset: usize, degree: usize) -> Perm {
        let mut images: Vec<u8> = (0..degree as u8).collect();
        for (i, &j) in self.0.iter().enumerate() {
            images[i + offset] = j + offset as u8;
        }
        Perm(images)
    }

    /// Drops trailing fixed points down to `degree`. Requires every point
    /// at or above `degree` to be fixed, which also guarantees no retained
    /// point maps above the cut.
    fn truncate_to(&mut self, degree: usize) {
        debug_assert!((degree..self.degree()).all(|i| self.0[i] == i as u8));
        self.0.truncate(degree.max(1));
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        self.disjoint_cycles().into_iter().map(|c| c.len()).collect()
    }

    /// Disjoint cycles of length >= 2, each starting at its smallest point,
    /// ordered by starting point. 0-indexed.
    pub fn disjoint_cycles(&self) -> Vec<Vec<u8>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() as u8 {
            if seen[start as usize] || self.0[start as usize] == start {
                seen[start as usize] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize] = true;
            let mut p = self.0[start as usize];
            while p != start {
                seen[p as usize] = true;
                cycle.push(p);
                p = self.0[p as usize];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Largest moved point plus one, or 1 for the identity.
    pub fn moved_degree(&self) -> usize {
        (0..self.degree())
            .rev()
            .find(|&i| self.0[i] != i as u8)
            .map_or(1, |i| i + 1)
    }
}

impl fmt::Display for Perm {
    /// Canonical cycle form, 1-indexed: `(1 2 3)(4 5)`, identity `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.disjoint_cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Parses a generator list in cycle notation: `cycles (";" cycles)*` where
/// each `cycles` is a concatenation of parenthesized cycles over the points
/// `1..=16`. All generators are normalized to the common degree, the largest
/// moved point. Positions in errors are relative to `text` plus `base`.
pub fn parse_generator_list(text: &str, base: usize) -> Result<(Vec<Perm>, usize)> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let err = |pos: usize, msg: &str| Error::parse(base + pos, msg.to_string());

    let mut raw: Vec<Vec<Vec<u8>>> = Vec::new(); // generator -> cycles -> 0-indexed points
    loop {
        let mut cycles: Vec<Vec<u8>> = Vec::new();
        loop {
            skip_ws(bytes, &mut pos);
            if pos >= bytes.len() || bytes[pos] != b'(' {
                break;
            }
            pos += 1;
            let mut cycle: Vec<u8> = Vec::new();
            loop {
                skip_ws(bytes, &mut pos);
                if pos >= bytes.len() {
                    return Err(err(pos, "unterminated cycle"));
                }
                if bytes[pos] == b')' {
                    pos += 1;
                    break;
                }
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == start {
                    return Err(err(pos, "expected point or ')' in cycle"));
                }
                let point: usize = text[start..pos]
                    .parse()
                    .map_err(|_| err(start, "point out of range"))?;
                if point == 0 || point > MAX_DEGREE {
                    return Err(err(start, "points must be in 1..=16"));
                }
                let point = (point - 1) as u8;
                if cycle.contains(&point) {
                    return Err(err(start, "repeated point in cycle"));
                }
                cycle.push(point);
            }
            // singleton cycles are fixed points and contribute nothing
            if cycle.len() >= 2 {
                cycles.push(cycle);
            }
        }
        if cycles.is_empty() {
            // must have consumed at least "()" to denote the identity
            let trimmed = text[..pos].trim();
            if !trimmed.ends_with(')') {
                return Err(err(pos, "expected a cycle"));
            }
        }
        raw.push(cycles);
        skip_ws(bytes, &mut pos);
        if pos < bytes.len() && bytes[pos] == b';' {
            pos += 1;
            continue;
        }
        break;
    }
    skip_ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(err(pos, "unexpected input after generators"));
    }

    let provisional = raw
        .iter()
        .flatten()
        .flatten()
        .map(|&p| p as usize + 1)
        .max()
        .unwrap_or(1);

    let mut generators = Vec::with_capacity(raw.len());
    for cycles in &raw {
        let mut perm = Perm::identity(provisional);
        for cycle in cycles {
            let mut images: Vec<u8> = (0..provisional as u8).collect();
            for w in cycle.windows(2) {
                images[w[0] as usize] = w[1];
            }
            images[*cycle.last().expect("len >= 2") as usize] = cycle[0];
            let cycle_perm = Perm::from_images(images)?;
            perm = perm.then(&cycle_perm);
        }
        generators.push(perm);
    }
    // Normalize to the largest point actually moved, so that the canonical
    // rendering (which omits fixed points) reparses to the same value.
    let degree = generators
        .iter()
        .map(Perm::moved_degree)
        .max()
        .unwrap_or(1);
    for g in &mut generators {
        g.truncate_to(degree);
    }
    Ok((generators, degree))
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(s: &str) -> (Vec<Perm>, usize) {
        parse_generator_list(s, 0).unwrap()
    }

    #[test]
    fn parses_a5_generators() {
        let (g, degree) = gens("(1 2 3 4 5);(1 2 3)");
        assert_eq!(degree, 5);
        assert_eq!(g.len(), 2);
        assert_eq!(g[0].to_string(), "(1 2 3 4 5)");
        assert_eq!(g[0].order(), 5);
        assert_eq!(g[1].order(), 3);
    }

    #[test]
    fn composes_overlapping_cycles_left_to_right() {
        let (g, _) = gens("(1 2)(2 3)");
        assert_eq!(g[0].to_string(), "(1 3 2)");
    }

    #[test]
    fn identity_and_fixed_points() {
        let (g, degree) = gens("()");
        assert_eq!(degree, 1);
        assert!(g[0].is_identity());
        assert_eq!(g[0].to_string(), "()");
        // a mentioned-but-fixed point does not raise the degree
        let (g, degree) = gens("(1 2);(3)");
        assert_eq!(degree, 2);
        assert!(g[1].is_identity());
    }

    #[test]
    fn cancelling_cycles_normalize_to_identity() {
        let (g, degree) = gens("(1 2)(1 2)");
        assert_eq!(degree, 1);
        assert!(g[0].is_identity());
        // degree shrinks to the largest moved point across all generators
        let (g, degree) = gens("(7 8)(7 8);(1 2)");
        assert_eq!(degree, 2);
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn rejects_bad_cycles() {
        assert!(parse_generator_list("(1 2", 0).is_err());
        assert!(parse_generator_list("(0 1)", 0).is_err());
        assert!(parse_generator_list("(1 17)", 0).is_err());
        assert!(parse_generator_list("(1 2 1)", 0).is_err());
        assert!(parse_generator_list("", 0).is_err());
        assert!(parse_generator_list("(1 2) x", 0).is_err());
        assert!(parse_generator_list("(1 2);", 0).is_err());
    }

    #[test]
    fn error_positions_are_offset() {
        let e = parse_generator_list("(1 2) x", 10).unwrap_err();
        match e {
            Error::Parse { position, .. } => assert_eq!(position, 16),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inverse_and_order() {
        let (g, _) = gens("(1 2 3 4 5)");
        let p = &g[0];
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(p.pow(5), Perm::identity(5));
        assert_eq!(p.pow(3), p.then(p).then(p));
        let (g, _) = gens("(1 2)(3 4 5)");
        assert_eq!(g[0].order(), 6);
    }

    #[test]
    fn display_round_trips_through_parser() {
        let (g, _) = gens("(5 4 3 2 1)(6 7);(2 1)");
        for p in &g {
            let text = p.to_string();
            let (back, _) = gens(&text);
            let d = p.degree().max(back[0].degree());
            assert_eq!(p.extend_to(d), back[0].extend_to(d));
        }
    }
}
