//! Exact computations around quantum affine Schur-Weyl duality in type
//! A^{(1)}_{N-1}: normalized R-matrices of fundamental modules, the pole
//! quiver, its KLR algebra with polynomial representation and module
//! category, and the duality functor to modules over the quantum affine
//! algebra.

pub mod arith;
pub mod error;
pub mod functor;
pub mod klr;
pub mod klr_modules;
pub mod affine_rep;
pub mod linalg;
pub mod quiver;
pub mod rmatrix;
pub mod tensor;

pub use error::{Error, Result};
