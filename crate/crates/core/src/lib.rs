//! Exact finite-scale models of measurement spaces.
//!
//! The crate provides finite involutive quantales, finite topological spaces,
//! finite discrete groupoids with their arrow-set quantales and convolution
//! algebras over ℚ(i), the linear powerspace of such an algebra, and observer
//! maps between them. Every law is decided by exhaustive enumeration where the
//! carrier is small enough and by seeded sampling otherwise.

pub mod error;
pub mod exec;
pub mod finite_quantale;
pub mod finite_space;
pub mod groupoid;
pub mod groupoid_algebra;
pub mod linear_powerspace;
pub mod measurement;
pub mod observer;
pub mod report;
pub mod scalar_linalg;

pub use error::{Error, Result};
pub use exec::Exec;
pub use measurement::{FiniteQuantale, InvolutiveQuantale};
pub use report::{Check, Report, Status};
