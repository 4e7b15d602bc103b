//! Exact combinatorics of type B free probability.
//!
//! Everything here is computed over the commutative algebra of pairs
//! `(x, t)` with `(x, t)(y, s) = (xy, xs + ty)` ([`dual::DualScalar`]) with
//! rational entries, so every identity is checked with exact equality:
//!
//! - [`nc`]: the non-crossing partition lattices `NC(n)` and `NC^B(n)`,
//!   Kreweras complement and Möbius function.
//! - [`series`]: truncated series with dual-number coefficients, boxed
//!   convolution, compositional inversion and the S-transform.
//! - [`cumulant`]: moment/cumulant conversion, multilinear cumulants against
//!   a mixed-moment oracle, and freeness tests.
//! - [`matrix_model`]: a concrete type B space on rational matrices, with the
//!   bimodule extension and its conditional expectation.
//! - [`limits`]: central and Poisson limit theorems and the Hankel test.
//! - [`verify`]: the full battery of theorem checks behind `typeb verify-paper`.

pub mod cli;
pub mod cumulant;
pub mod dual;
pub mod error;
pub mod limits;
pub mod matrix_model;
pub mod nc;
pub mod numbers;
pub mod series;
mod tables;
pub mod verify;

pub use dual::{DualScalar, Rational};
pub use error::{Error, Result};
