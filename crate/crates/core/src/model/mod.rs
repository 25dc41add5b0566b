//! Graded subalgebras of the branch ring and their presentations.

mod generators;
mod ghost;
mod graded;
mod paths;
mod qring;
mod report;
mod rescale;
mod suspend;

pub use generators::{branch_maps, generates, minimal_algebra_generators, presentation, verify_generators, Generator, GeneratorSet};
pub use ghost::{ghost_conditions, GhostCondition, GhostConditionSet};
pub use graded::{assemble_abstract, cutoff_bound, gap_dimension, pieces_from_json, GradedSubalgebra, Provenance};
pub use paths::{computation_horizon, graded_pieces_direct, graded_pieces_dual, section_dimensions};
pub use qring::QRing;
pub use suspend::{suspend, suspension_digest, suspension_digest_with, SuspensionSpec};
pub use rescale::{
    normalize_units, rescale, rescaling_equivalence, scale_powers, BranchScale, Equivalence, NormalForm, Rescaling,
};
pub use report::ModelSummary;
