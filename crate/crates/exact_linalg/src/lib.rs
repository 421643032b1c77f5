//! Exact matrix algebra over the integers and the rationals.
//!
//! Everything here is exact: integer matrices carry arbitrary precision
//! entries, rational work goes through `BigRational`, and there is no
//! floating point anywhere.

pub mod exterior;
mod int_matrix;
mod modp;
mod poly;
mod rat_matrix;
mod snf;
mod subspace;

pub use int_matrix::IntMatrix;
pub use modp::rank_mod_p;
pub use poly::{charpoly, charpoly_i64};
pub use rat_matrix::{rank_and_kernel, RatMatrix};
pub use snf::{elementary_divisors, integral_kernel, saturate, smith_normal_form, Snf};
pub use subspace::Subspace;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Errors raised by routines that need a particular shape or invertibility.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not unimodular")]
    NotUnimodular,
}

/// Convenience constructor for rationals from small integers.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
