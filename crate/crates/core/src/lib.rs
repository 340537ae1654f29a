//! Computational kernel for small quantum groups and their higher
//! Frobenius-Lusztig kernels.
//!
//! The crate is layered bottom-up:
//!
//! * [`rootdata`]: root systems, reduced words for the longest element,
//!   convex orderings of the positive roots and order functionals.
//! * [`scalars`]: Laurent polynomials in `q`, the localization used for
//!   structure constants, rational functions, and the concrete fields
//!   containing a primitive `ell`-th root of unity.
//! * [`linalg`]: dense exact linear algebra over any of those fields.
//! * [`genericuq`]: the generic quantum group over `Q(q)`: Serre relations,
//!   braid automorphisms, root vectors, PBW expansion and commutation tables.
//! * [`kernelalg`]: specialization at a root of unity and the finite
//!   dimensional kernel algebras built from the tables.
//! * [`qmodules`]: weight-graded modules, their constructions and characters.
//! * [`inject`]: freeness tests, projectivity oracles and the verification
//!   harness for the injectivity criteria.
//! * [`cohomlite`]: minimal resolutions over the nilpotent parts and Borel
//!   cohomology dimensions.

pub mod cohomlite;
pub mod error;
pub mod genericuq;
pub mod inject;
pub mod kernelalg;
pub mod linalg;
pub mod qmodules;
pub mod rootdata;
pub mod scalars;

pub use error::{Error, Result};
