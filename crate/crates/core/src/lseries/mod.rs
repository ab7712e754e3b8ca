//! Exact q-expansions of eta products and values of their L-series.

pub mod cache;
pub mod coeffs;
pub mod forms;
pub mod lvalue;
pub mod ntt;

pub use cache::{read_cache, write_cache};
pub use coeffs::{divisor_counts, eta_coeffs, CoefficientSeries};
pub use forms::{build_cache, named_coeffs, verify_cache, NamedForm};
pub use lvalue::{
    divisor_tail_bound, lvalue_direct, lvalue_direct_heuristic, lvalue_smoothed, smoothed_terms_needed,
    upper_gamma_int,
};
