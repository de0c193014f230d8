//! The complexes `C` and `C̃` over an orbit basis, the chain map between
//! them and integral (co)homology through Smith normal form.

mod build;
mod compare;
mod complex;
mod model;

pub use build::{build_c, build_ctilde, chain_map_f};
pub use compare::{chain_map_violation, compare_homology, mapping_cone, ComparisonReport, DegreeComparison};
pub use complex::{ChainComplex, HomologyGroup};
pub use model::OrbitModel;
