//! Graded simple algebras over cyclotomic fields, their graded polynomial
//! identities, and a decision procedure for strong verbal primeness.

pub mod classify;
pub mod cohomology;
pub mod error;
pub mod graded_algebra;
pub mod grassmann;
pub mod groups;
pub mod linalg;
pub mod par;
pub mod polynomials;
pub mod sample;
pub mod scalars;

pub use error::{Error, Result};
