//! Independent resolutions of group actions on finite semilattices, the
//! chain complexes they induce, and group homology of quadratic presentations.

pub mod error;
pub mod homology;
pub mod json;
pub mod linalg;
pub mod mu;
pub mod presentation;
pub mod random;
pub mod resolution;
pub mod semilattice;
pub mod suites;

pub use error::{Error, Result};
