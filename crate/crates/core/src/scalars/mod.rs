//! Scalars: Laurent polynomials, `Q(q)`, the localization at `q^2-q^-2` and
//! `q^3-q^-3`, and the concrete fields containing a root of unity.

pub mod field;
pub mod laurent;
pub mod localized;
pub mod ratfunc;

pub use field::{Cyclotomic, ExtField, Field, FieldOps, PrimeField, RatFuncField};
pub use laurent::{q_binomial, q_factorial, q_integer, Laurent, Q};
pub use localized::{DenominatorSet, LocalizedScalar};
pub use ratfunc::RatFunc;
