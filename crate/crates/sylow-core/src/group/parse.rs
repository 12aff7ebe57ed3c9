//! Recursive-descent parser for the direct-product expression grammar.
//!
//! ```text
//! expr    := "1" | atom ("*" atom)*
//! atom    := "A5" | cyclic | layer | perm
//! cyclic  := "C" integer ["^" integer]            C7, C8, C2^3
//! layer   := "N{" p ":" order ("," p ":" order)* "}"
//! perm    := "P[" cycles (";" cycles)* "]"        P[(1 2 3 4 5);(1 2 3)]
//! ```
//!
//! Whitespace is insignificant between tokens. `C n` without an exponent
//! requires `n` to be a prime power; a general cyclic group must be written
//! as the product of its prime-power parts. Layer orders must be proper
//! powers of their key. Errors carry the byte position.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::numerics::{as_prime_power, is_prime, power_of, PrimePower};
use crate::oracle::parse_generator_list;
use crate::{Error, Result};

use super::{GroupAtom, GroupExpr, PermAtom};

/// Parses an expression; total on the grammar, an error otherwise.
pub fn parse_group(text: &str) -> Result<GroupExpr> {
    Parser {
        text,
        bytes: text.as_bytes(),
        pos: 0,
    }
    .expr()
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::parse(pos, msg.into())
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(mut self) -> Result<GroupExpr> {
        match self.peek() {
            None => return Err(self.err(self.pos, "empty expression")),
            Some(b'1') => {
                self.pos += 1;
                if let Some(c) = self.peek() {
                    return Err(self.err(
                        self.pos,
                        format!("unexpected {:?} after the trivial group", char::from(c)),
                    ));
                }
                return Ok(GroupExpr::trivial());
            }
            Some(_) => {}
        }
        let mut factors = vec![self.atom()?];
        loop {
            match self.peek() {
                None => break,
                Some(b'*') => {
                    self.pos += 1;
                    factors.push(self.atom()?);
                }
                Some(c) => {
                    return Err(self.err(
                        self.pos,
                        format!("expected '*' or end of input, found {:?}", char::from(c)),
                    ))
                }
            }
        }
        Ok(GroupExpr::new(factors))
    }

    fn atom(&mut self) -> Result<GroupAtom> {
        match self.peek() {
            Some(b'A') => self.a5(),
            Some(b'C') => self.cyclic(),
            Some(b'N') => self.layer(),
            Some(b'P') => self.perm(),
            Some(c) => Err(self.err(
                self.pos,
                format!("unknown atom starting with {:?}", char::from(c)),
            )),
            None => Err(self.err(self.pos, "expected an atom")),
        }
    }

    fn a5(&mut self) -> Result<GroupAtom> {
        let start = self.pos;
        if self.text[self.pos..].starts_with("A5") {
            self.pos += 2;
            Ok(GroupAtom::A5)
        } else {
            Err(self.err(start, "unknown atom name (expected A5)"))
        }
    }

    fn integer_u64(&mut self, what: &str) -> Result<u64> {
        let start = self.pos;
        let digits = self.digits(what)?;
        u64::from_str(digits).map_err(|_| self.err(start, format!("{what} out of range")))
    }

    fn integer_big(&mut self, what: &str) -> Result<BigUint> {
        let digits = self.digits(what)?;
        Ok(BigUint::from_str(digits).expect("digits only"))
    }

    fn digits(&mut self, what: &str) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err(start, format!("expected {what}")));
        }
        Ok(&self.text[start..self.pos])
    }

    fn cyclic(&mut self) -> Result<GroupAtom> {
        self.pos += 1; // 'C'
        let base_pos = self.pos;
        let base = self.integer_big("cyclic order")?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let base = u64::try_from(&base)
                .map_err(|_| self.err(base_pos, "cyclic base exceeds 64 bits"))?;
            if !is_prime(base) {
                return Err(self.err(base_pos, format!("cyclic base {base} must be prime")));
            }
            let exp_pos = self.pos;
            let exponent = self.integer_u64("exponent")?;
            let exponent = u32::try_from(exponent)
                .ok()
                .filter(|&e| e >= 1)
                .ok_or_else(|| self.err(exp_pos, "exponent must be in 1..=2^32"))?;
            return Ok(GroupAtom::Cyclic(
                PrimePower::new(base, exponent).expect("validated"),
            ));
        }
        match as_prime_power(&base) {
            Some(pp) => Ok(GroupAtom::Cyclic(pp)),
            None => Err(self.err(
                base_pos,
                format!(
                    "cyclic order {base} is not a prime power; \
                     write the group as a product of prime-power parts"
                ),
            )),
        }
    }

    fn layer(&mut self) -> Result<GroupAtom> {
        let start = self.pos;
        self.pos += 1; // 'N'
        if self.peek() != Some(b'{') {
            return Err(self.err(start, "unknown atom name (expected N{...})"));
        }
        self.pos += 1;
        let mut layers: BTreeMap<u64, u32> = BTreeMap::new();
        loop {
            let p_pos = self.pos;
            let prime = self.integer_u64("layer prime")?;
            if !is_prime(prime) {
                return Err(self.err(p_pos, format!("layer key {prime} must be prime")));
            }
            if self.peek() != Some(b':') {
                return Err(self.err(self.pos, "expected ':' in layer"));
            }
            self.pos += 1;
            let o_pos = self.pos;
            let order = self.integer_big("layer order")?;
            let exponent = power_of(&order, prime).ok_or_else(|| {
                self.err(
                    o_pos,
                    format!("layer order {order} must be a proper power of {prime}"),
                )
            })?;
            if layers.insert(prime, exponent).is_some() {
                return Err(self.err(p_pos, format!("duplicate layer prime {prime}")));
            }
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b'}') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.err(self.pos, "expected ',' or '}' in layer")),
            }
        }
        GroupAtom::nilpotent(layers)
    }

    fn perm(&mut self) -> Result<GroupAtom> {
        let start = self.pos;
        self.pos += 1; // 'P'
        if self.peek() != Some(b'[') {
            return Err(self.err(start, "unknown atom name (expected P[...])"));
        }
        self.pos += 1;
        let body_start = self.pos;
        let close = self.text[self.pos..]
            .find(']')
            .map(|i| self.pos + i)
            .ok_or_else(|| self.err(start, "unterminated permutation atom"))?;
        let body = &self.text[body_start..close];
        let (generators, degree) = parse_generator_list(body, body_start)?;
        self.pos = close + 1;
        Ok(GroupAtom::Perm(PermAtom::new(generators, degree)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn parses_the_ten_factor_counterexample() {
        let g = parse_group(
            "A5 * C2 * C7 * C11 * C13 * C17 * C19 * C29 * C71 * C83",
        )
        .unwrap();
        assert_eq!(g.factors().len(), 10);
        assert_eq!(g.factors()[0], GroupAtom::A5);
        assert_eq!(
            g.order().unwrap().to_string(),
            "6630591687720"
        );
    }

    #[test]
    fn parses_trivial_group() {
        assert!(parse_group("1").unwrap().is_trivial());
        assert!(parse_group("  1  ").unwrap().is_trivial());
        assert!(parse_group("1 * A5").is_err());
    }

    #[test]
    fn parses_layers() {
        let g = parse_group("A5 * N{2:2, 7:49}").unwrap();
        assert_eq!(g.factors().len(), 2);
        match &g.factors()[1] {
            GroupAtom::Nilpotent(layers) => {
                assert_eq!(layers.get(&2), Some(&1));
                assert_eq!(layers.get(&7), Some(&2));
            }
            other => panic!("unexpected atom {other:?}"),
        }
    }

    #[test]
    fn parses_cyclic_forms() {
        // C8 is the cyclic group of order 8 = 2^3
        let g = parse_group("C8").unwrap();
        match &g.factors()[0] {
            GroupAtom::Cyclic(pp) => assert_eq!((pp.prime(), pp.exponent()), (2, 3)),
            other => panic!("unexpected atom {other:?}"),
        }
        let g = parse_group("C2^3").unwrap();
        match &g.factors()[0] {
            GroupAtom::Cyclic(pp) => assert_eq!((pp.prime(), pp.exponent()), (2, 3)),
            other => panic!("unexpected atom {other:?}"),
        }
    }

    #[test]
    fn parses_perm_atoms_lazily() {
        let g = parse_group("A5 * P[(1 2 3 4 5);(1 2 3)]").unwrap();
        match &g.factors()[1] {
            GroupAtom::Perm(atom) => {
                assert_eq!(atom.degree(), 5);
                assert_eq!(atom.generators().len(), 2);
                assert_eq!(atom.group().unwrap().order(), 60);
            }
            other => panic!("unexpected atom {other:?}"),
        }
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse_group("A5*C2*N{2:4,7:7}").unwrap();
        let b = parse_group("  A5 \t*\n C2 * N{ 2 : 4 , 7 : 7 }  ").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_input_with_positions() {
        for (text, expect_pos) in [
            ("", 0usize),
            ("A6", 0),
            ("C12", 1),
            ("C4^2", 1),
            ("C7^0", 3),
            ("N{4:4}", 2),
            ("N{2:6}", 4),
            ("N{2:2,2:4}", 6),
            ("N{2:1}", 4),
            ("A5 * ", 5),
            ("A5 C2", 3),
            ("A5 ** C2", 4),
            ("P[(1 2", 0),
            ("P[(0 1)]", 3),
            ("X5", 0),
        ] {
            match parse_group(text) {
                Err(Error::Parse { position, .. }) => {
                    assert_eq!(position, expect_pos, "position for {text:?}")
                }
                Err(other) => panic!("non-parse error for {text:?}: {other:?}"),
                Ok(_) => panic!("{text:?} should not parse"),
            }
        }
    }

    #[test]
    fn rejects_composite_cyclic_base_with_message() {
        let err = parse_group("C12").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("not a prime power"), "{msg}");
    }

    #[test]
    fn render_round_trip_on_fixed_examples() {
        for text in [
            "1",
            "A5",
            "A5 * C2 * C7 * C11 * C13 * C17 * C19 * C29 * C71 * C83",
            "A5 * N{2:2,7:49}",
            "C2^3 * C3^2",
            "P[(1 2 3 4 5);(1 2 3)] * C2",
            "P[()]",
        ] {
            let parsed = parse_group(text).unwrap();
            let rendered = parsed.render();
            assert_eq!(parse_group(&rendered).unwrap(), parsed, "through {rendered:?}");
        }
    }

    #[test]
    fn huge_layer_orders_are_exact() {
        let g = parse_group("N{2:1267650600228229401496703205376}").unwrap(); // 2^100
        match &g.factors()[0] {
            GroupAtom::Nilpotent(layers) => assert_eq!(layers.get(&2), Some(&100)),
            other => panic!("unexpected atom {other:?}"),
        }
        assert_eq!(
            g.order().unwrap(),
            BigUint::from(2u32).pow(100)
        );
        assert!(BigUint::one() < g.order().unwrap());
    }
}
