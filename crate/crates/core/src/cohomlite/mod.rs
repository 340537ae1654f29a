//! Minimal graded free resolutions of the trivial module over the nilpotent
//! parts `u(u+-)`, and the dimensions of `H^n(u(b+-), k)` obtained from
//! them by keeping the torus invariant generators.

pub mod resolution;

pub use resolution::{
    borel_cohomology_dims, in_ell_lattice, minimal_resolution, torus_acts_trivially, GradedBetti,
    DEFAULT_RESOLUTION_BUDGET,
};
