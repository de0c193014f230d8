//! Quadratic presentations `⟨Σ | a·σ_l(a,b) = b·σ_r(a,b)⟩`: validity of σ,
//! right reversing, least common multiples, bounded checks of the lattice
//! conditions, group homology and the census of small σ.

mod abc;
mod census;
mod file;
mod homology;
mod sigma;
mod word;

pub use abc::{check_abc, positive_words, AbcReport, AbcStatus, DEFAULT_LENGTH_BOUND};
pub use census::{candidate_maps, canonical_form, census, CensusClass, CensusRow, CENSUS_LENGTH_BOUND, MAX_CENSUS_SIZE};
pub use file::PresentationFile;
pub use homology::{group_homology, orbit_model, sharp_from_lcm, GroupHomology, HomologyOptions};
pub use sigma::{validate_sigma, SigmaMap, SigmaReport};
pub use word::{cube_identity_violation, default_max_steps, equal_in_monoid, lcm, right_reverse, Letter, Reversal, SignedWord};
