//! Exact computation of the semiring of nonnegative integer combinations of
//! binomial coefficients binom(α, k) of an algebraic number α.

pub mod arith;
pub mod certificate;
pub mod cli;
pub mod error;
pub mod field;
pub mod finite_diff;
pub mod irreducible;
pub mod json;
pub mod linalg;
pub mod membership;
pub mod negone;
pub mod oracle;
pub mod padic;
pub mod poly;
pub mod rplus;

pub use arith::Rat;
pub use error::{Error, Result};
