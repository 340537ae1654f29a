//! The generic quantum group over `Q(q)`.
//!
//! Words in the generators are reduced modulo the quantum Serre relations one
//! weight space at a time. Mixed elements are kept in triangular form
//! `F * K * E`. Root vectors come from Lusztig's braid automorphisms; their
//! commutation relations are extracted by exact PBW expansion.

pub mod algebra;
pub mod cache;
pub mod mixed;
pub mod pbw;
pub mod words;

pub use cache::{parse_header, CacheHeader, CACHE_FORMAT_VERSION, CACHE_MAGIC};
pub use algebra::{default_height_bound, qpow, Gen, GenericUq};
pub use mixed::{Mixed, Tri};
pub use pbw::{Expansion, Exps, Pbw, Side, StructureEntry, StructureTable};
pub use words::{kostant_partition, serre_relations, Poly, Word, WordQuotient};
