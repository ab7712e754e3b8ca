use std::fmt;

use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

use super::complex::Cx;
use super::context::ERR_PREC;

/// How an error radius was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rigor {
    /// Proven tail majorant plus rounding budget.
    Rigorous,
    /// Agreement-based estimate.
    Heuristic,
}

impl Rigor {
    pub fn and(self, other: Rigor) -> Rigor {
        if self == Rigor::Rigorous && other == Rigor::Rigorous {
            Rigor::Rigorous
        } else {
            Rigor::Heuristic
        }
    }
}

impl fmt::Display for Rigor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rigor::Rigorous => "rigorous",
            Rigor::Heuristic => "heuristic",
        })
    }
}

/// Numbers that series and products can be accumulated in.
pub trait Scalar: Clone + fmt::Debug + Send + Sync + 'static {
    fn zero(prec: u32) -> Self;
    fn from_real(x: Float) -> Self;
    fn prec(&self) -> u32;
    fn modulus(&self) -> Float;
    fn real_part(&self) -> Float;
    fn is_finite(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn div_ref(&self, other: &Self) -> Self;
    fn mul_real(&self, k: &Float) -> Self;
    fn to_cx(&self) -> Cx;

    fn one(prec: u32) -> Self {
        Self::from_real(Float::with_val(prec, 1u32))
    }
}

impl Scalar for Float {
    fn zero(prec: u32) -> Self {
        Float::new(prec)
    }
    fn from_real(x: Float) -> Self {
        x
    }
    fn prec(&self) -> u32 {
        Float::prec(self)
    }
    fn modulus(&self) -> Float {
        Float::with_val(Float::prec(self), self.abs_ref())
    }
    fn real_part(&self) -> Float {
        self.clone()
    }
    fn is_finite(&self) -> bool {
        Float::is_finite(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        Float::with_val(Float::prec(self).max(Float::prec(other)), self + other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        Float::with_val(Float::prec(self).max(Float::prec(other)), self - other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        Float::with_val(Float::prec(self).max(Float::prec(other)), self * other)
    }
    fn div_ref(&self, other: &Self) -> Self {
        Float::with_val(Float::prec(self).max(Float::prec(other)), self / other)
    }
    fn mul_real(&self, k: &Float) -> Self {
        Float::with_val(Float::prec(self), self * k)
    }
    fn to_cx(&self) -> Cx {
        Cx::from_real(self.clone())
    }
}

impl Scalar for Cx {
    fn zero(prec: u32) -> Self {
        Cx::zero(prec)
    }
    fn from_real(x: Float) -> Self {
        Cx::from_real(x)
    }
    fn prec(&self) -> u32 {
        Cx::prec(self)
    }
    fn modulus(&self) -> Float {
        self.abs()
    }
    fn real_part(&self) -> Float {
        self.re.clone()
    }
    fn is_finite(&self) -> bool {
        Cx::is_finite(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_ref(&self, other: &Self) -> Self {
        self.div(other)
    }
    fn mul_real(&self, k: &Float) -> Self {
        self.scale(k)
    }
    fn to_cx(&self) -> Cx {
        self.clone()
    }
}

/// An approximate value with an error radius. For complex values the radius
/// bounds the modulus of the total error.
#[derive(Debug, Clone, PartialEq)]
pub struct AppValue<T = Float> {
    pub value: T,
    pub err: Float,
    pub rigor: Rigor,
}

pub(crate) fn err_float<T>(v: T) -> Float
where
    Float: rug::Assign<T>,
{
    Float::with_val(ERR_PREC, v)
}

/// |x| * 2^(1-prec), the rounding charge of one operation.
fn ulp_of(x: &Float, prec: u32) -> Float {
    let mut a = err_float(x.abs_ref());
    a >>= prec.saturating_sub(1);
    a
}

impl<T: Scalar> AppValue<T> {
    pub fn new(value: T, err: Float, rigor: Rigor) -> Self {
        Self { value, err: err_float(&err), rigor }
    }

    /// A value that is exact up to a single rounding.
    pub fn exact(value: T) -> Self {
        let err = ulp_of(&value.modulus(), value.prec());
        Self { value, err, rigor: Rigor::Rigorous }
    }

    pub fn heuristic(mut self) -> Self {
        self.rigor = Rigor::Heuristic;
        self
    }

    pub fn with_extra_err(mut self, extra: &Float) -> Self {
        self.err += extra;
        self
    }

    pub fn prec(&self) -> u32 {
        self.value.prec()
    }

    pub fn modulus(&self) -> Float {
        self.value.modulus()
    }

    pub fn add(&self, other: &Self) -> Self {
        let value = self.value.add_ref(&other.value);
        let err = err_float(&self.err + &other.err) + ulp_of(&value.modulus(), value.prec());
        Self { value, err, rigor: self.rigor.and(other.rigor) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let value = self.value.sub_ref(&other.value);
        let err = err_float(&self.err + &other.err) + ulp_of(&value.modulus(), value.prec());
        Self { value, err, rigor: self.rigor.and(other.rigor) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let value = self.value.mul_ref(&other.value);
        let a = err_float(self.value.modulus());
        let b = err_float(other.value.modulus());
        let mut err = err_float(&a * &other.err);
        err += err_float(&b * &self.err);
        err += err_float(&self.err * &other.err);
        err += ulp_of(&value.modulus(), value.prec());
        Self { value, err, rigor: self.rigor.and(other.rigor) }
    }

    /// Quotient; the error radius is infinite when the divisor's disc contains zero.
    pub fn div(&self, other: &Self) -> Self {
        let value = self.value.div_ref(&other.value);
        let b = err_float(other.value.modulus());
        let room = err_float(&b - &other.err);
        let err = if room.is_sign_positive() && !room.is_zero() {
            let q = err_float(value.modulus());
            let num = err_float(&self.err + err_float(&q * &other.err));
            err_float(&num / &room) + ulp_of(&q, value.prec())
        } else {
            Float::with_val(ERR_PREC, rug::float::Special::Infinity)
        };
        Self { value, err, rigor: self.rigor.and(other.rigor) }
    }

    pub fn scale(&self, k: &Float) -> Self {
        let value = self.value.mul_real(k);
        let ka = err_float(k.abs_ref());
        let err = err_float(&self.err * &ka) + ulp_of(&value.modulus(), value.prec());
        Self { value, err, rigor: self.rigor }
    }

    pub fn neg(&self) -> Self {
        let value = self.value.mul_real(&Float::with_val(self.prec(), -1));
        Self { value, err: self.err.clone(), rigor: self.rigor }
    }

    /// Integer power; the radius is |n| e (|x| + e)^{|n|-1} (inverted for n < 0),
    /// a mean-value bound that avoids cancelling (|x| + e)^|n| - |x|^|n|.
    pub fn powi(&self, n: i64) -> Self {
        let base = if n < 0 { Self::one_like(self).div(self) } else { self.clone() };
        let k = n.unsigned_abs();
        let mut value = T::one(self.prec());
        let mut b = base.value.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                value = value.mul_ref(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_ref(&b);
            }
        }
        let m = err_float(base.value.modulus());
        let hi = err_float(&m + &base.err);
        let k32 = k.min(u64::from(u32::MAX)) as u32;
        let mut err = if k32 == 0 {
            err_float(0)
        } else {
            err_float(&base.err * k32) * err_float((&hi).pow(k32 - 1))
        };
        err += ulp_of(&value.modulus(), value.prec()) * (k32 + 1);
        Self { value, err, rigor: base.rigor }
    }

    fn one_like(other: &Self) -> Self {
        Self { value: T::one(other.prec()), err: Float::new(ERR_PREC), rigor: Rigor::Rigorous }
    }

    pub fn to_cx(&self) -> AppValue<Cx> {
        AppValue { value: self.value.to_cx(), err: self.err.clone(), rigor: self.rigor }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.err.is_finite()
    }
}

impl AppValue<Cx> {
    /// Real part; the radius is unchanged.
    pub fn re(&self) -> AppValue<Float> {
        AppValue { value: self.value.re.clone(), err: self.err.clone(), rigor: self.rigor }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> AppValue<Cx> {
        let m = err_float(self.value.abs());
        let value = self.value.ln();
        let err = log_err(&m, &self.err, &value.modulus(), value.prec());
        AppValue { value, err, rigor: self.rigor }
    }

    pub fn exp(&self) -> AppValue<Cx> {
        let value = self.value.exp();
        let m = err_float(value.abs());
        let grow = err_float(self.err.exp_m1_ref());
        let err = err_float(&m * &grow) + ulp_of(&m, value.prec()) * 4u32;
        AppValue { value, err, rigor: self.rigor }
    }

    /// Principal real power. The radius uses |d/dz z^r| = |r| |z|^(r-1) over the disc.
    pub fn pow_real(&self, r: &Float) -> AppValue<Cx> {
        let value = self.value.pow_real(r);
        let m = err_float(self.value.abs());
        let low = err_float(&m - &self.err);
        let err = if low.is_sign_positive() && !low.is_zero() {
            let rm1 = err_float(r - 1u32);
            let hi_base = if rm1.is_sign_negative() { low } else { err_float(&m + &self.err) };
            let deriv = err_float((&hi_base).pow(&rm1)) * err_float(r.abs_ref());
            err_float(&deriv * &self.err) + ulp_of(&value.modulus(), value.prec()) * 8u32
        } else {
            Float::with_val(ERR_PREC, rug::float::Special::Infinity)
        };
        AppValue { value, err, rigor: self.rigor }
    }
}

impl AppValue<Float> {
    pub fn ln(&self) -> AppValue<Float> {
        let m = err_float(self.value.abs_ref());
        let value = Float::with_val(self.value.prec(), self.value.ln_ref());
        let err = log_err(&m, &self.err, &err_float(value.abs_ref()), value.prec());
        AppValue { value, err, rigor: self.rigor }
    }

    pub fn sqrt(&self) -> AppValue<Float> {
        let value = Float::with_val(self.value.prec(), self.value.sqrt_ref());
        let low = err_float(&self.value - &self.err);
        let err = if low.is_sign_positive() && !low.is_zero() {
            let d = err_float(low.sqrt_ref()) + err_float(value.clone());
            err_float(&self.err / &d) + ulp_of(&value, value.prec())
        } else {
            err_float(self.err.sqrt_ref()) + ulp_of(&value, value.prec())
        };
        AppValue { value, err, rigor: self.rigor }
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

fn log_err(m: &Float, e: &Float, out: &Float, prec: u32) -> Float {
    let room = err_float(m - e);
    if room.is_sign_positive() && !room.is_zero() {
        // |ln(z + d) - ln z| <= -ln(1 - |d|/|z|)
        let ratio = err_float(e / m);
        let mut v = err_float(-ratio);
        v.ln_1p_mut();
        -v + ulp_of(out, prec) * 4u32
    } else {
        Float::with_val(ERR_PREC, rug::float::Special::Infinity)
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for AppValue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {} ({})", self.value, self.err.to_string_radix(10, Some(3)), self.rigor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, e: f64) -> AppValue<Float> {
        AppValue::new(Float::with_val(128, x), err_float(e), Rigor::Rigorous)
    }

    #[test]
    fn errors_accumulate_in_products() {
        let a = v(2.0, 1e-10);
        let b = v(3.0, 1e-10);
        let p = a.mul(&b);
        assert!((p.value.to_f64() - 6.0).abs() < 1e-30);
        assert!(p.err.to_f64() >= 5e-10 && p.err.to_f64() < 5.1e-10);
    }

    #[test]
    fn division_by_uncertain_zero_is_unbounded() {
        let a = v(1.0, 0.0);
        let b = v(1e-12, 1e-11);
        assert!(!a.div(&b).err.is_finite());
    }

    #[test]
    fn powi_radius_covers_perturbation() {
        let a = v(1.5, 1e-6);
        let p = a.powi(5);
        let hi = (1.5f64 + 1e-6).powi(5) - 1.5f64.powi(5);
        assert!(p.err.to_f64() >= hi * 0.999_999);
        let inv = a.powi(-2);
        assert!((inv.value.to_f64() - 1.0 / 2.25).abs() < 1e-15);
    }

    #[test]
    fn rigor_degrades_when_mixed() {
        let a = v(1.0, 0.0);
        let b = v(1.0, 0.0).heuristic();
        assert_eq!(a.add(&b).rigor, Rigor::Heuristic);
        assert_eq!(a.add(&a).rigor, Rigor::Rigorous);
    }
}
