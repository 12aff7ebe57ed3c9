//! Exact arithmetic for Sylow-counting invariants of finite direct products.
//!
//! The crate computes, with arbitrary-precision rational arithmetic throughout:
//!
//! - Sylow profiles (prime -> (count, order)) of direct-product expressions
//!   over a small atom language (`A5`, prime-power cyclic groups, nilpotent
//!   layers, explicit permutation groups), via the multiplicative product
//!   rule ([`engine`]);
//! - the Sylow polynomial `SP(G,x) = sum nu_p x^sigma_p` and its integral
//!   `gamma(G) = sum nu_p/(sigma_p+1)` over [0,1];
//! - the `A5 x N` compensation calculus: old-prime defects, new-prime gains,
//!   and the exact balance criterion for `gamma = 9/2` ([`compensation`]);
//! - Egyptian-fraction compensation certificates: exact verification over a
//!   common denominator and an exhaustive branch-and-bound search
//!   ([`certify`]);
//! - an independent brute-force permutation-group oracle (element closure,
//!   Sylow subgroups by normalizer growth, centers, derived series) used to
//!   cross-check everything at desk scale ([`oracle`]).
//!
//! No floating point is used anywhere; every equality the crate tests or
//! reports is an exact identity of reduced rationals.

pub mod certify;
pub mod compensation;
pub mod engine;
pub mod error;
pub mod group;
mod jsonutil;
pub mod numerics;
pub mod oracle;

pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
