//! Exact univariate representations for polynomial complementarity problems.

pub mod error;
pub mod interval;
pub mod poly;
pub mod groebner;
pub mod univar;
mod modular;
pub mod zero_dim;
pub mod pcp;
pub mod enumerate;
pub mod io;
pub mod cli;

pub use error::{Error, Result};

/// Arbitrary-precision rational number, always stored in lowest terms.
pub type Rational = num_rational::BigRational;
