use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Laurent polynomial in up to four variables with complex double coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPolynomial {
    vars: usize,
    terms: BTreeMap<Vec<i32>, Complex64>,
}

pub const MAX_VARS: usize = 4;

impl LaurentPolynomial {
    pub fn new(vars: usize, terms: impl IntoIterator<Item = (Vec<i32>, Complex64)>) -> Result<Self> {
        if vars == 0 || vars > MAX_VARS {
            return Err(Error::InvalidArgument(format!("Laurent polynomials take 1..=4 variables, got {vars}")));
        }
        let mut map: BTreeMap<Vec<i32>, Complex64> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != vars {
                return Err(Error::InvalidArgument(format!("exponent vector {e:?} has wrong length")));
            }
            *map.entry(e).or_default() += c;
        }
        map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        if map.is_empty() {
            return Err(Error::InvalidArgument("polynomial has no nonzero coefficient".into()));
        }
        Ok(Self { vars, terms: map })
    }

    pub fn constant(vars: usize, c: f64) -> Self {
        Self::new(vars, [(vec![0; vars], Complex64::new(c, 0.0))]).expect("nonzero constant")
    }

    /// The monomial x_i^k.
    pub fn monomial(vars: usize, i: usize, k: i32) -> Self {
        let mut e = vec![0; vars];
        e[i] = k;
        Self::new(vars, [(e, Complex64::new(1.0, 0.0))]).expect("valid monomial")
    }

    /// x_i + 1/x_i.
    pub fn cosine(vars: usize, i: usize) -> Self {
        &Self::monomial(vars, i, 1) + &Self::monomial(vars, i, -1)
    }

    pub fn scale(&self, k: f64) -> Self {
        Self { vars: self.vars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.vars, 1.0);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Complex64)> {
        self.terms.iter()
    }

    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(z).fold(*c, |acc, (&k, zi)| acc * zi.powi(k)))
            .sum()
    }

    /// Smallest and largest exponent of each variable.
    pub(crate) fn exponent_ranges(&self) -> Vec<(i32, i32)> {
        (0..self.vars)
            .map(|i| {
                let lo = self.terms.keys().map(|e| e[i]).min().unwrap_or(0);
                let hi = self.terms.keys().map(|e| e[i]).max().unwrap_or(0);
                (lo, hi)
            })
            .collect()
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, other: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.vars, other.vars, "variable count mismatch");
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            *terms.entry(e.clone()).or_default() += c;
        }
        terms.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        LaurentPolynomial { vars: self.vars, terms }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, other: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.vars, other.vars, "variable count mismatch");
        let mut terms: BTreeMap<Vec<i32>, Complex64> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *terms.entry(e).or_default() += c1 * c2;
            }
        }
        terms.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        LaurentPolynomial { vars: self.vars, terms }
    }
}

/// The five Mahler-measure families and the two-variable Boyd polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MahlerFamily {
    G1,
    G2,
    F2,
    F3,
    F4,
}

impl MahlerFamily {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name.to_ascii_lowercase().as_str() {
            "g1" => Self::G1,
            "g2" => Self::G2,
            "f2" => Self::F2,
            "f3" => Self::F3,
            "f4" => Self::F4,
            _ => return None,
        })
    }

    /// The polynomial P_u and the factor k with family(u) = k m(P_u), for real u > 0.
    pub fn polynomial(self, u: f64) -> (LaurentPolynomial, f64) {
        let one = |v| LaurentPolynomial::constant(3, v);
        let (x, y, z) = (
            LaurentPolynomial::cosine(3, 0),
            LaurentPolynomial::cosine(3, 1),
            LaurentPolynomial::cosine(3, 2),
        );
        match self {
            MahlerFamily::G1 => (&(&(&one(u) + &x) + &y) + &z, 1.0),
            MahlerFamily::G2 => {
                let p = &(&(&one(4.0 - u) + &(&x * &y)) + &(&x * &z)) + &(&y * &z);
                (p, 1.0)
            }
            MahlerFamily::F2 => (&one(u.sqrt()) + &(&(&x * &y) * &z), 2.0),
            MahlerFamily::F3 => {
                let zm = |k| LaurentPolynomial::monomial(3, 2, k);
                let w = &(&(&x.powi(2) * &y.powi(2)) * &(&one(1.0) + &zm(1)).powi(3)) * &zm(-2);
                (&one(u) + &w.scale(-1.0), 1.0)
            }
            MahlerFamily::F4 => {
                let m = |i| LaurentPolynomial::monomial(3, i, 4);
                let xyz = LaurentPolynomial::new(3, [(vec![1, 1, 1], Complex64::new(u.powf(0.25), 0.0))])
                    .expect("nonzero");
                (&(&(&(&m(0) + &m(1)) + &m(2)) + &one(1.0)) + &xyz, 4.0)
            }
        }
    }
}

/// 1 + x + 1/x + y + 1/y.
pub fn boyd_polynomial() -> LaurentPolynomial {
    let one = LaurentPolynomial::constant(2, 1.0);
    &(&one + &LaurentPolynomial::cosine(2, 0)) + &LaurentPolynomial::cosine(2, 1)
}
