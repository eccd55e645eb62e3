//! Exact arithmetic over Q: rationals, polynomials, simple extensions,
//! dense matrices and linear algebra.

pub mod ext;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use ext::ExtElement;
pub use linalg::{independent, kernel, rank, row_reduce, solve_linear, LinearSolution, RowReduction, Subspace};
pub use matrix::Matrix;
pub use poly::Polynomial;
pub use rational::{format_rational, frac, int, parse_rational, Rational};
