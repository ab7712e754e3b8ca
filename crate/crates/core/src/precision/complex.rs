use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

/// Arbitrary-precision complex number as a pair of MPFR floats.
///
/// Elementary functions use principal branches: `ln` has imaginary part in
/// (-pi, pi], `pow_real` is `exp(r ln z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cx {
    pub re: Float,
    pub im: Float,
}

impl Cx {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Self { re: Float::with_val(prec, 1u32), im: Float::new(prec) }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// e^{2 pi i num/den}.
    pub fn root_of_unity(prec: u32, num: i64, den: i64) -> Self {
        let mut theta = Float::with_val(prec, Constant::Pi) * 2u32;
        theta *= num;
        theta /= den;
        let (s, c) = theta.sin_cos(Float::new(prec));
        Self { re: c, im: s }
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn scale(&self, k: &Float) -> Self {
        let p = self.prec();
        Self { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }

    pub fn recip(&self) -> Self {
        let p = self.prec();
        let d = Float::with_val(p, self.re.mul_add_mul_ref(&self.re, &self.im, &self.im));
        Self {
            re: Float::with_val(p, &self.re / &d),
            im: -Float::with_val(p, &self.im / &d),
        }
    }

    pub fn div(&self, other: &Cx) -> Self {
        if other.is_real() {
            let p = self.prec();
            return Self {
                re: Float::with_val(p, &self.re / &other.re),
                im: Float::with_val(p, &self.im / &other.re),
            };
        }
        self * &other.recip()
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Integer power by repeated squaring; negative exponents invert.
    pub fn powi(&self, n: i64) -> Self {
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Cx::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn ln(&self) -> Self {
        let p = self.prec();
        Self { re: Float::with_val(p, self.abs().ln()), im: self.arg() }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Self { re: Float::with_val(p, &m * &c), im: m * s }
    }

    /// Principal real power z^r.
    pub fn pow_real(&self, r: &Float) -> Self {
        if self.is_zero() {
            return Cx::zero(self.prec());
        }
        if self.is_real() && self.re.is_sign_positive() {
            return Cx::from_real(Float::with_val(self.prec(), (&self.re).pow(r)));
        }
        let l = self.ln();
        Cx { re: Float::with_val(self.prec(), &l.re * r), im: Float::with_val(self.prec(), &l.im * r) }
            .exp()
    }

    pub fn sqrt(&self) -> Self {
        let half = Float::with_val(self.prec(), 0.5);
        self.pow_real(&half)
    }

    /// log|1 - z|, accurate for small |z|.
    pub fn ln_abs_one_minus(&self) -> Float {
        let p = self.prec();
        // |1-z|^2 - 1 = |z|^2 - 2 Re z
        let mut t = Float::with_val(p, self.re.mul_add_mul_ref(&self.re, &self.im, &self.im));
        t -= Float::with_val(p, &self.re * 2u32);
        t.ln_1p() / 2u32
    }
}

impl<'a> Add<&'a Cx> for &'a Cx {
    type Output = Cx;
    fn add(self, rhs: &'a Cx) -> Cx {
        let p = self.prec().max(rhs.prec());
        Cx { re: Float::with_val(p, &self.re + &rhs.re), im: Float::with_val(p, &self.im + &rhs.im) }
    }
}

impl<'a> Sub<&'a Cx> for &'a Cx {
    type Output = Cx;
    fn sub(self, rhs: &'a Cx) -> Cx {
        let p = self.prec().max(rhs.prec());
        Cx { re: Float::with_val(p, &self.re - &rhs.re), im: Float::with_val(p, &self.im - &rhs.im) }
    }
}

impl<'a> Mul<&'a Cx> for &'a Cx {
    type Output = Cx;
    fn mul(self, rhs: &'a Cx) -> Cx {
        let p = self.prec().max(rhs.prec());
        if rhs.is_real() {
            return Cx { re: Float::with_val(p, &self.re * &rhs.re), im: Float::with_val(p, &self.im * &rhs.re) };
        }
        if self.is_real() {
            return Cx { re: Float::with_val(p, &rhs.re * &self.re), im: Float::with_val(p, &rhs.im * &self.re) };
        }
        let re = Float::with_val(p, self.re.mul_sub_mul_ref(&rhs.re, &self.im, &rhs.im));
        let im = Float::with_val(p, self.re.mul_add_mul_ref(&rhs.im, &self.im, &rhs.re));
        Cx { re, im }
    }
}

impl Neg for Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", self.re.to_string_radix(10, Some(20)))
        } else {
            write!(
                f,
                "{} {} {}i",
                self.re.to_string_radix(10, Some(20)),
                if self.im.is_sign_negative() { "-" } else { "+" },
                Float::with_val(self.im.prec(), self.im.abs_ref()).to_string_radix(10, Some(20))
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Cx {
        Cx::new(Float::with_val(128, re), Float::with_val(128, im))
    }

    #[test]
    fn arithmetic_matches_f64() {
        let a = c(1.5, -2.0);
        let b = c(0.25, 3.0);
        let m = &a * &b;
        assert!((m.re.to_f64() - (1.5 * 0.25 + 6.0)).abs() < 1e-15);
        assert!((m.im.to_f64() - (4.5 - 0.5)).abs() < 1e-15);
        let d = m.div(&b);
        assert!((d.re.to_f64() - 1.5).abs() < 1e-15 && (d.im.to_f64() + 2.0).abs() < 1e-15);
    }

    #[test]
    fn principal_log_and_sqrt_of_negative() {
        let z = c(-4.0, 0.0);
        let l = z.ln();
        assert!((l.im.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        let s = z.sqrt();
        assert!(s.re.to_f64().abs() < 1e-15 && (s.im.to_f64() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn roots_of_unity_cube_to_one() {
        let w = Cx::root_of_unity(200, 1, 3);
        let w3 = w.powi(3);
        assert!((w3.re.to_f64() - 1.0).abs() < 1e-50_f64.max(1e-15));
        assert!(w3.im.to_f64().abs() < 1e-15);
    }

    #[test]
    fn ln_abs_one_minus_small_argument() {
        let z = c(1e-30, 0.0);
        let v = z.ln_abs_one_minus();
        assert!((v.to_f64() + 1e-30).abs() < 1e-45);
    }
}
