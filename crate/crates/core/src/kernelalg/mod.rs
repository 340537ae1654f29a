//! The finite dimensional kernels at a root of unity.
//!
//! Structure constants from the generic tables are specialized at `zeta`.
//! Each half is a truncated PBW algebra multiplied by collection; the full
//! small quantum group is assembled from the two halves, the torus and the
//! commutators `[E_i, F_gamma]`. The rank one higher kernel is handled by
//! explicit divided-power formulas in [`higher`].

pub mod algebra;
pub mod half;
pub mod higher;
pub mod integral;
pub mod table;

pub use algebra::{AlgGen, Elem, Kind, KernelAlgebra, Mono};
pub use higher::{DElem, DMono, RankOneKernel, ZetaBinomials};
pub use half::{HalfAlgebra, SVec};
pub use integral::{integral, torus_character, normality_check, omega_algebra, socle_check, tables_mirror, IntegralElement, SocleReport};
pub use table::{check_ell, specialize_table, SpecEntry, SpecializedTable, ZetaData};
