//! Mahler-measure series, binomial-sum sequences, torus quadrature and the
//! Bessel Laplace-transform identity.

mod bessel;
mod polynomial;
mod quadrature;
mod sequences;
mod series;
mod torus;

pub use bessel::{bessel_i0, bessel_laplace_sides};
pub use polynomial::{boyd_polynomial, LaurentPolynomial, MahlerFamily, MAX_VARS};
pub use quadrature::{gauss_legendre, gl_adaptive};
pub use sequences::{bseq_sequence, domb_a, domb_sequence, seq_b, BinomialSumSequence, SequenceKind};
pub use series::{f_lower, f_parameters, f_series, f_threshold, g_series};
pub use torus::{boyd_mahler_measure, mahler_torus_integral};
