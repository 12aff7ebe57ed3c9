//! Crate-wide error type.
//!
//! Variants are grouped by how a front end should report them: input errors
//! (bad syntax, invalid values), refusals (explicit resource caps), and
//! internal cross-check failures, which indicate a bug in the engine itself
//! rather than in the input.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Syntax error in a group expression, rational, or certificate file.
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    /// A rational with denominator zero was requested.
    #[error("zero denominator")]
    ZeroDenominator,

    /// `lcm_all` was called on an empty list.
    #[error("lcm of empty list")]
    EmptyLcm,

    /// A value that must be prime is not, or lies outside the supported range.
    #[error("invalid prime {value}: {reason}")]
    InvalidPrime { value: String, reason: String },

    /// A structurally invalid value was supplied (bad exponent, bad layer
    /// order, certificate parts out of order, ...).
    #[error("invalid value: {0}")]
    Invalid(String),

    /// Permutation-group enumeration exceeded a configured cap.
    #[error("enumeration refused: {0}")]
    CapExceeded(String),

    /// The certificate search exceeded its node budget.
    #[error("search refused: explored {explored} nodes, budget {budget}")]
    BudgetExceeded { explored: u64, budget: u64 },

    /// Two independent computations of the same quantity disagreed, or an
    /// internal invariant failed. Always a bug, never an input problem.
    #[error("internal cross-check failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    /// Process exit class for front ends: 1 usage/parse, 2 refusal, 3 internal.
    pub fn exit_class(&self) -> i32 {
        match self {
            Error::CapExceeded(_) | Error::BudgetExceeded { .. } => 2,
            Error::Internal(_) => 3,
            _ => 1,
        }
    }
}
