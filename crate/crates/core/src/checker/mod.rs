//! Independent verification engine: closed-form Betti numbers, graded
//! exactness by per-weight linear algebra, Hilbert-series consistency, and
//! graded ideal membership.

pub mod betti;
pub mod exactness;
pub mod grading;
pub mod hilbert;
pub mod identities;
pub mod membership;
pub mod rank;
pub mod report;

pub use betti::{betti_all, betti_alternating_sum, betti_formula};
pub use exactness::{
    check_exactness, default_w_max, field_agreement_sample, graded_dim, graded_matrix,
    ExactnessFailure, ExactnessTable, RankPolicy,
};
pub use grading::DegreeTables;
pub use hilbert::{hilbert_consistency, numerator_from_resolution, numerator_from_semigroup};
pub use identities::{lemma24_part1, lemma24_part2};
pub use membership::graded_membership;
pub use rank::QMatrix;
pub use report::{run_verification, verify_pair, VerificationReport, VerifyOptions};
