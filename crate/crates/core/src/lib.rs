//! Exact circle combinatorics and numerical external rays for infinitely
//! renormalizable quadratic polynomials `z^2 + c`.

pub mod circle;
pub mod cli;
pub mod error;
pub mod lamination;
pub mod renorm;
pub mod plane;
pub mod rotation;
pub mod selftest;

pub use error::{Error, Result};
