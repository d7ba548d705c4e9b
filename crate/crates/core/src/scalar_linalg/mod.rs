//! Exact arithmetic over ℚ(i) and canonical-form linear algebra.
//!
//! Closures of subspaces (`P+Q‾`, `f(P)‾`) are identities in finite dimension
//! and are not represented.

mod gaussian;
mod matrix;
mod rational;
mod subspace;

pub use gaussian::{GaussianRational, ParseGaussianError};
pub use matrix::Matrix;
pub use rational::{ParseRationalError, Rational};
pub(crate) use subspace::Echelon;
pub use subspace::{
    span_canonicalize, span_canonicalize_in, subspace_intersect, subspace_leq, subspace_sum, Subspace, Vector,
};
