//! Finite dimensional weight modules over the kernels: one dimensional
//! modules, baby Verma and coinduced modules, duals, tensor products,
//! simple heads, seeded sub- and quotient modules, characters and the
//! weight basis over `A_m`.

pub mod character;
pub mod construct;
pub mod module;
pub mod simple;
pub mod sparse;
pub mod spec;
pub mod zdual;

pub use character::{
    integral_op, tensor_character, unipotent_character, verma_character, verma_character_test, verma_decomposition,
    weight_basis_over_am,
};
pub use construct::{fmt_weight, 
    closure, coverma, dual, mixsub, onedim, quot, quotient, randsub, restrict, submodule, sum, tensor, trivial, twist,
    verma,
};
pub use module::{gen_side, Character, LiftFlags, ModContext, WeightedModule};
pub use simple::{certify_simple, raising_functionals, simple};
pub use sparse::SparseMat;
pub use spec::{parse_module_spec, realize, ModuleSpec};
pub use zdual::{find_isomorphism, hom_space, zdual_check, Identification, ZdualReport};
