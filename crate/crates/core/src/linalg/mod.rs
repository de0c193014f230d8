//! Exact integer linear algebra: dense matrices, Smith and Hermite normal forms.

mod hnf;
mod matrix;
mod snf;

pub use hnf::{hermite_normal_form, Lattice};
pub use matrix::IntMatrix;
pub use snf::{kernel_basis, rank, smith_normal_form, SmithForm};
