//! Exact arithmetic substrate: coefficient fields, polynomials,
//! endomorphisms and quotient relations.

pub mod endo;
pub mod field;
pub mod poly;
pub mod ratfunc;

pub use endo::{EndoKind, EndoSpec, Relation};
pub use field::{FieldKind, FieldSpec, Fp, Scalar};
pub use poly::{Monomial, Poly};
pub use ratfunc::{RatFn, UPoly};
