//! Summation polynomials of Weierstrass curves over finite fields, Weil
//! descent to the prime field, degree-fall profiling of the descended
//! systems over GF(2), and the reduction chain from 3-SAT to summation
//! polynomial evaluation.

pub mod curves;
pub mod descent;
pub mod error;
pub mod fields;
pub mod gbprofiler;
pub mod reductions;
pub mod sumpoly;

pub use error::{Error, Result};
