//! Arbitrary-precision substrate shared by every numeric module.

pub mod combinatorics;
pub mod complex;
pub mod context;
pub mod rational;
pub mod summation;
pub mod value;

pub use combinatorics::{binomial, pochhammer};
pub use complex::Cx;
pub use context::PrecisionContext;
pub use rational::{rat, ExactRational};
pub use summation::{geometric_tail, sum_counted, sum_heuristic, sum_with_tail, NoTail, Summed};
pub use value::{AppValue, Rigor, Scalar};
