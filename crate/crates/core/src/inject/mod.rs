//! Freeness and projectivity tests, and the harness that checks the
//! root-subalgebra criteria for injectivity against independent oracles.
//!
//! Over a local algebra freeness, projectivity and injectivity coincide and
//! are decided by Nakayama's lemma. Over the Hopf kernels projectivity is
//! decided by the trace criterion with the left integral; a literal
//! splitting of a free cover is available for small algebras.

pub mod freeness;
pub mod higman;
pub mod split;
pub mod verify;

pub use freeness::{free_over_local, free_over_root, root_top_power, FreenessReport, RootRef};
pub use higman::{higman_projective, restrict_to, HopfKind};
pub use split::{cover_generators, projective_split_test, RegularRep, DEFAULT_BUDGET};
pub use verify::{
    highest_root_index, highest_root_test, support_skeleton, verify_borel_criterion, verify_reduction_borel,
    verify_root_criterion, AgreementRecord, HighestRootRecord, SkeletonReport,
};
