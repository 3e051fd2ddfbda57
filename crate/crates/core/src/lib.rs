//! Exact computations with twisted Kähler differential forms: normal forms,
//! the twisted differential, the homotopy operator `I`, the braiding built
//! from them and the resulting braid-group representations.

pub mod braiding;
pub mod braidrep;
pub mod cli;
pub mod error;
pub mod kernel;
pub mod lincomb;
pub mod matrix;
pub mod omega;
pub mod report;

pub use error::{Error, Result};
