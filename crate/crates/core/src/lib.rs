//! Exact distance-distribution arithmetic for Reed-Solomon codes over small
//! finite fields: brute-force counting oracles, closed-form main terms with
//! exact error bounds, character-sum machinery with Weil-bound checks, and a
//! distinct-coordinate sieve engine.

pub mod binom;
pub mod chars;
pub mod code;
pub mod counts;
pub mod cyclotomic;
pub mod dd;
pub mod error;
pub mod exec;
pub mod field;
pub mod fixtures;
pub mod formulas;
pub mod poly;
pub mod quad;
pub mod sieve;
pub mod suites;

pub use error::{Error, Result, DEFAULT_BUDGET};
pub use field::{Elem, Field, FiniteField};
pub use poly::Poly;
