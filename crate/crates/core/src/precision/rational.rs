use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(Rational);

impl ExactRational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(Self(Rational::from((num, den))))
    }

    pub fn from_int(n: i64) -> Self {
        Self(Rational::from(n))
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn inner(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.cmp0() == std::cmp::Ordering::Equal
    }

    pub fn is_integer(&self) -> bool {
        *self.0.denom() == 1
    }

    /// True for 0, -1, -2, ...
    pub fn is_nonpositive_integer(&self) -> bool {
        self.is_integer() && self.0.cmp0() != std::cmp::Ordering::Greater
    }

    pub fn to_float(&self, prec: u32) -> Float {
        Float::with_val(prec, &self.0)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
}

impl From<Rational> for ExactRational {
    fn from(r: Rational) -> Self {
        Self(r)
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<ExactRational> for Rational {
    fn from(r: ExactRational) -> Self {
        r.0
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    /// Accepts `p`, `p/q` or a finite decimal such as `-0.125`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("not a rational: `{s}`"));
        if let Some((n, d)) = s.split_once('/') {
            let n: Integer = n.trim().parse().map_err(|_| bad())?;
            let d: Integer = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(Error::InvalidArgument("zero denominator".into()));
            }
            return Ok(Self(Rational::from((n, d))));
        }
        if let Some((ip, fp)) = s.split_once('.') {
            if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let neg = ip.starts_with('-');
            let ip = if ip.is_empty() || ip == "-" || ip == "+" { "0" } else { ip };
            let whole: Integer = ip.parse().map_err(|_| bad())?;
            let frac: Integer = fp.parse().map_err(|_| bad())?;
            let scale = Integer::from(10).pow(fp.len() as u32);
            let mut r = Rational::from((frac, scale));
            if neg {
                r = -r;
            }
            return Ok(Self(r + whole));
        }
        let n: Integer = s.parse().map_err(|_| bad())?;
        Ok(Self(Rational::from(n)))
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for building parameter lists.
pub fn rat(num: i64, den: i64) -> ExactRational {
    ExactRational::new(num, den).expect("nonzero denominator")
}
