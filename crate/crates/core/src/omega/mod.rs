//! Twisted differential forms `Ω*_α(A)` in left normal form.

pub mod basis;
pub mod check;
pub mod ctx;
pub mod form;
pub mod label;
pub mod raw;

pub use basis::WordBlockBasis;
pub use check::{check_omega, OmegaLimits};
pub use ctx::{AlgebraCtx, Caps, Grading};
pub use form::Form;
pub use label::{words, Label, Word};
pub use raw::RawForm;

#[cfg(test)]
mod tests;
