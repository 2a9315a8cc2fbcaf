//! Classical root systems, parabolic double cosets and the balanced-filtration
//! combinatorics, plus a finite-field census of bad self-dual flags.

mod datum;
mod linalg;
mod lw2;
mod parabolic;

pub use datum::{dot, Root, RootDatum, RootType, WeylElement};
pub use linalg::{linalg_census, LinalgCensus, MAX_CENSUS_FIELD, MAX_CENSUS_HALF_DIM};
pub use lw2::{
    lw2_harness, lw2_hypothesis, lw2_sweep_configs, root_hodge_numbers, Lw2Hypothesis, Lw2Report, Lw2Violation,
    MAX_LW2_RANK,
};
pub use parabolic::{
    double_cosets, fiber_codim, is_bad, root_lemma_check, wpq_enumerate, BadMode, ParabolicPair, RootLemmaReport,
    MAX_WPQ_RANK,
};
