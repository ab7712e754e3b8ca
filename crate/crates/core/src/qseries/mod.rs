//! q-Pochhammer products, eta quotients, Eisenstein-type series, the elliptic
//! nome and the modular functions v, t, s.

mod eisenstein;
mod modular;
mod nome;
mod product;

pub use eisenstein::{eisenstein_g, eisenstein_m, lambert_sigma3};
pub use modular::{s_func, t_func, v_func, v_spec};
pub use nome::nome;
pub use product::{eta_quotient_value, qpoch_inf, Branch, EtaQuotientSpec};

use rug::Float;

use crate::error::{Error, Result};
use crate::precision::Cx;

/// A point strictly inside the punctured unit disk.
#[derive(Debug, Clone, PartialEq)]
pub struct QPoint {
    q: Cx,
}

impl QPoint {
    pub fn new(q: Cx) -> Result<Self> {
        let m = q.abs();
        if !q.is_finite() || m.is_zero() || m >= 1 {
            return Err(Error::domain(format!("q must satisfy 0 < |q| < 1, got |q| = {}", m.to_f64())));
        }
        Ok(Self { q })
    }

    pub fn real(q: Float) -> Result<Self> {
        Self::new(Cx::from_real(q))
    }

    pub fn value(&self) -> &Cx {
        &self.q
    }

    pub fn modulus(&self) -> Float {
        self.q.abs()
    }

    pub fn prec(&self) -> u32 {
        self.q.prec()
    }

    /// q^k for a positive integer k.
    pub fn pow(&self, k: u32) -> QPoint {
        QPoint { q: self.q.powi(i64::from(k)) }
    }

    /// -q.
    pub fn negated(&self) -> QPoint {
        QPoint { q: -self.q.clone() }
    }

    /// e^{2 pi i num/den} q.
    pub fn rotated(&self, num: i64, den: i64) -> QPoint {
        QPoint { q: &self.q * &Cx::root_of_unity(self.prec(), num, den) }
    }
}
