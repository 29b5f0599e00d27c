//! Generalized trigonometric functions attached to a complex polynomial.
//!
//! Given a polynomial `P` of degree `m` with roots `r_1..r_m`, the functions
//!
//! ```text
//! S_l(x) = sum_j T[l][j] * exp(-i r_j x),   l = 0..m-1
//! ```
//!
//! (where `T[l][j]` is the sum of all products of `l` distinct roots that
//! contain `r_j`) behave like `cos`/`sin` do for `x^2 - 1`. This crate builds
//! them, certifies the algebraic identities they satisfy, specialises them to
//! `x^m - 1`, and uses their Fourier data to evaluate the two-sided sums
//! `sum_n n^k / P(n)` and `sum_n (-1)^n n^k / P(n)` in closed form. Every
//! closed-form result has an independent numerical oracle next to it.
//!
//! Modules, bottom-up:
//!
//! * [`poly`]: polynomials, parsing, root finding, symmetric functions.
//! * [`linalg`]: small dense complex matrices.
//! * [`gentrig`]: the `S_l` construction, Taylor data, derivative matrix and
//!   identity certificates.
//! * [`cyclotomic`]: the `x^m - 1` case.
//! * [`series`]: boundary functions, the associated matrix and series sums.
//! * [`oracle`]: brute-force summation and quadrature used for cross-checks.
//! * [`acceptance`]: the verification criteria driven by tests and the CLI.

pub mod acceptance;
pub mod complex;
pub mod cyclotomic;
mod error;
pub mod gentrig;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod series;

pub use complex::C64;
pub use error::{Error, ErrorKind, Result};
