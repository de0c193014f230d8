//! Finite covers, conditions (i)–(iii), the derived semilattice and the
//! resolution tower with its exactness and stabilizer checks.

mod conditions;
mod cover;
mod derive;
mod kernel;
mod tower;

pub use conditions::{check_conditions, ConditionReport};
pub use cover::{is_finite_cover, uncovered, Cover, CoverFile, CoverSystem};
pub use derive::{derive, expand, Derivation, DerivedElement, Level};
pub use kernel::{kernel_ideal, IndicatorMap};
pub use tower::{
    build_tower, fix_maximal_idem_check, ExactnessReport, ResolutionTower, StabilizerReport,
};
