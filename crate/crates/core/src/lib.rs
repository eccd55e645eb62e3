//! Exact computations for almost Abelian Lie algebras `F e₀ ⋉ V` over Q.
//!
//! The structure of such an algebra is fixed by `ad_{e₀}`, and up to
//! isomorphism by the multiplicity function of its Jordan decomposition.
//! Everything here is exact rational arithmetic.

pub mod equations;
pub mod error;
pub mod exactfield;
pub mod jordan;
pub mod liealg;
pub mod multiplicity;
pub mod oracle;
pub mod spectrum;
pub mod wire;

pub use equations::SolutionSpace;
pub use error::{Error, Result};
pub use exactfield::{Matrix, Polynomial, Rational};
pub use jordan::{InvariantSubspaceSpec, JordanForm, MuKey};
pub use liealg::AlmostAbelianAlgebra;
pub use multiplicity::{DilationGroup, MultiplicityFunction};
pub use oracle::EquationSpec;
pub use spectrum::{Convention, IrreduciblePoly};
