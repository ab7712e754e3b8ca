use std::collections::BTreeMap;

use rug::Float;
use serde::Serialize;

use super::QPoint;
use crate::error::{Error, Result};
use crate::precision::value::err_float;
use crate::precision::{AppValue, Cx, ExactRational, PrecisionContext, Rigor};

/// How q^r is taken for the leading power of an eta quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// exp(r Log q) with the principal logarithm.
    Principal,
    /// |q|^r, dropping the phase of q. Used only to diagnose sign and branch
    /// mismatches in printed formulas.
    Modulus,
}

/// (x; q)_inf, truncated once |x| |q|^N / (1 - |q|) < 2^-wb.
///
/// The dropped factors multiply the partial product by something within
/// exp(delta) - 1 of 1, which is added to the radius.
pub fn qpoch_inf(x: &Cx, q: &QPoint, ctx: &PrecisionContext) -> Result<AppValue<Cx>> {
    let prec = ctx.prec();
    let r = err_float(q.modulus());
    if r >= 1 {
        return Err(Error::domain("qpoch_inf needs |q| < 1"));
    }
    let one_minus_r = err_float(1 - &r);
    let eps = ctx.eps();
    let qv = q.value();
    let mut xq = Cx::new(Float::with_val(prec, &x.re), Float::with_val(prec, &x.im));
    let mut xa = err_float(xq.abs());
    let mut prod = Cx::one(prec);
    let mut growth = err_float(1);
    let mut n = 0u64;
    loop {
        let delta = err_float(&xa / &one_minus_r);
        if delta < eps || xa.is_zero() {
            let mut tail = delta;
            tail.exp_m1_mut();
            let pa = err_float(prod.abs());
            let mut round = err_float(&growth * (4 * (n + 1)));
            round >>= prec;
            let err = err_float(&pa * &tail) + round;
            return Ok(AppValue::new(prod, err, Rigor::Rigorous));
        }
        if n >= ctx.max_terms() {
            return Err(Error::TermCapExceeded { cap: ctx.max_terms() });
        }
        let factor = &Cx::one(prec) - &xq;
        if factor.is_zero() {
            return Ok(AppValue::new(Cx::zero(prec), err_float(0), Rigor::Rigorous));
        }
        prod = &prod * &factor;
        growth *= err_float(1 + &xa);
        xq = &xq * qv;
        xa = err_float(xq.abs());
        n += 1;
    }
}

/// q^{q_power} times the product over d of (q^d; q^d)_inf^{e_d}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EtaQuotientSpec {
    pub factors: BTreeMap<u32, i64>,
    pub q_power: ExactRational,
}

impl EtaQuotientSpec {
    pub fn new(factors: impl IntoIterator<Item = (u32, i64)>, q_power: ExactRational) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (d, e) in factors {
            if d == 0 {
                return Err(Error::InvalidArgument("eta quotient divisors must be positive".into()));
            }
            *map.entry(d).or_insert(0) += e;
        }
        map.retain(|_, e| *e != 0);
        Ok(Self { factors: map, q_power })
    }

    /// Weight of the corresponding eta product, sum(e_d) / 2.
    pub fn weight_times_two(&self) -> i64 {
        self.factors.values().sum()
    }

    /// The exponent sum(d e_d)/24 that makes the eta product modular; equal to
    /// `q_power` for the forms used here.
    pub fn eta_leading_power(&self) -> ExactRational {
        let s: i64 = self.factors.iter().map(|(d, e)| i64::from(*d) * e).sum();
        ExactRational::new(s, 24).expect("nonzero")
    }
}

pub fn eta_quotient_value(
    spec: &EtaQuotientSpec,
    q: &QPoint,
    branch: Branch,
    ctx: &PrecisionContext,
) -> Result<AppValue<Cx>> {
    let prec = ctx.prec();
    let mut acc = AppValue::new(Cx::one(prec), err_float(0), Rigor::Rigorous);
    for (&d, &e) in &spec.factors {
        let qd = q.pow(d);
        let p = qpoch_inf(qd.value(), &qd, ctx)?;
        acc = acc.mul(&p.powi(e));
    }
    if !spec.q_power.is_zero() {
        let base = match branch {
            Branch::Principal => q.value().clone(),
            Branch::Modulus => Cx::from_real(q.modulus()),
        };
        let r = spec.q_power.to_float(prec);
        let lead = if spec.q_power.is_integer() {
            AppValue::exact(base).powi(spec.q_power.numer().to_i64().expect("small exponent"))
        } else {
            AppValue::exact(base).pow_real(&r)
        };
        acc = acc.mul(&lead);
    }
    if !acc.is_finite() {
        return Err(Error::NonConvergent("eta quotient error radius is unbounded".into()));
    }
    Ok(acc)
}
