use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};

/// Default cap on the number of terms any series loop may consume.
pub const DEFAULT_MAX_TERMS: u64 = 10_000_000;
/// Extra bits carried internally beyond the requested working precision.
pub const DEFAULT_GUARD_BITS: u32 = 64;
/// Precision used for error radii.
pub const ERR_PREC: u32 = 64;

/// Working precision, guard bits and term cap, threaded through every
/// numeric operation. There is no global precision state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    working_bits: u32,
    guard_bits: u32,
    max_terms: u64,
}

impl PrecisionContext {
    pub fn new(working_bits: u32) -> Result<Self> {
        Self::with_options(working_bits, DEFAULT_GUARD_BITS, DEFAULT_MAX_TERMS)
    }

    pub fn with_options(working_bits: u32, guard_bits: u32, max_terms: u64) -> Result<Self> {
        if working_bits < 64 {
            return Err(Error::InvalidPrecision(format!(
                "working_bits must be at least 64, got {working_bits}"
            )));
        }
        if guard_bits == 0 {
            return Err(Error::InvalidPrecision("guard_bits must be positive".into()));
        }
        if max_terms < 16 {
            return Err(Error::InvalidPrecision(format!(
                "max_terms must be at least 16, got {max_terms}"
            )));
        }
        Ok(Self { working_bits, guard_bits, max_terms })
    }

    pub fn working_bits(&self) -> u32 {
        self.working_bits
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    pub fn max_terms(&self) -> u64 {
        self.max_terms
    }

    /// Internal precision: working plus guard bits.
    pub fn prec(&self) -> u32 {
        self.working_bits + self.guard_bits
    }

    pub fn with_max_terms(mut self, max_terms: u64) -> Result<Self> {
        if max_terms < 16 {
            return Err(Error::InvalidPrecision(format!(
                "max_terms must be at least 16, got {max_terms}"
            )));
        }
        self.max_terms = max_terms;
        Ok(self)
    }

    /// The same context with `extra` more working bits.
    pub fn widened(&self, extra: u32) -> Self {
        Self { working_bits: self.working_bits + extra, ..*self }
    }

    /// 2^-working_bits.
    pub fn eps(&self) -> Float {
        Float::with_val(ERR_PREC, 1u32) >> self.working_bits
    }

    /// One unit in the last place of the internal precision, relative to 1.
    pub fn ulp(&self) -> Float {
        Float::with_val(ERR_PREC, 1u32) >> (self.prec() - 1)
    }

    pub fn float<T>(&self, val: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.prec(), val)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.prec(), Constant::Pi)
    }

    pub fn ln2(&self) -> Float {
        Float::with_val(self.prec(), Constant::Log2)
    }

    /// Number of decimal digits needed to round-trip a value at working precision.
    pub fn decimal_digits(&self) -> usize {
        (f64::from(self.working_bits) * std::f64::consts::LOG10_2).ceil() as usize + 2
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self { working_bits: 128, guard_bits: DEFAULT_GUARD_BITS, max_terms: DEFAULT_MAX_TERMS }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_precision() {
        assert!(PrecisionContext::new(63).is_err());
        assert!(PrecisionContext::new(64).is_ok());
        assert!(PrecisionContext::with_options(128, 64, 15).is_err());
        assert!(PrecisionContext::with_options(128, 0, 100).is_err());
    }

    #[test]
    fn eps_is_power_of_two() {
        let ctx = PrecisionContext::new(100).unwrap();
        assert_eq!(ctx.eps().get_exp(), Some(-99));
        assert_eq!(ctx.prec(), 164);
    }
}
