//! High-precision evaluation of hypergeometric series, q-series, Mahler
//! measures and modular L-values, plus a catalog of numerically checked
//! identities between them.

pub mod catalog;
pub mod error;
pub mod hypergeometric;
pub mod lseries;
pub mod mahler;
pub mod qseries;
pub mod precision;

pub use error::{Error, Result};
pub use precision::{AppValue, Cx, ExactRational, PrecisionContext, Rigor};
