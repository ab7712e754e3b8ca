use rug::ops::PowAssign;
use rug::Float;

use super::QPoint;
use crate::error::Result;
use crate::precision::summation::sum_with_tail;
use crate::precision::value::err_float;
use crate::precision::{AppValue, Cx, PrecisionContext};

/// Bound on sum_{m > n} m^k r^m / (1 - r), or `None` before the ratio drops below 1.
fn power_tail(k: u32, n: u64, r: &Float) -> Option<Float> {
    let m = (n + 1) as f64;
    let rho = err_float(r * ((m + 1.0) / m).powi(k as i32));
    if rho >= 1 {
        return None;
    }
    let mut lead = err_float(r.clone());
    lead.pow_assign((n + 1) as u32);
    lead *= m.powi(k as i32);
    let den = err_float(1 - &rho) * err_float(1 - r);
    Some(lead / den)
}

/// G(q) = -log|q| + 240 sum n^2 log|1 - q^n|, the real part of the principal-log series.
pub fn eisenstein_g(q: &QPoint, ctx: &PrecisionContext) -> Result<AppValue<Float>> {
    let prec = ctx.prec();
    let qv = q.value();
    let r = err_float(q.modulus());
    let mut qn = Cx::one(prec);
    let series = sum_with_tail(
        |i| {
            let n = i + 1;
            qn = &qn * qv;
            let mut t = qn.ln_abs_one_minus();
            t *= n * n;
            t * 240u32
        },
        Some(|i: u64, _: &Float| power_tail(2, i + 1, &r).map(|b| b * 240u32)),
        ctx,
    )?;
    let lead = Float::with_val(prec, q.modulus().ln());
    Ok(AppValue::exact(-lead).add(&series))
}

/// sum_{n >= 1} n^3 q^n / (1 - q^n).
pub fn lambert_sigma3(q: &QPoint, ctx: &PrecisionContext) -> Result<AppValue<Cx>> {
    let prec = ctx.prec();
    let qv = q.value();
    let r = err_float(q.modulus());
    let mut qn = Cx::one(prec);
    sum_with_tail(
        |i| {
            let n = Float::with_val(prec, i + 1);
            qn = &qn * qv;
            let d = &Cx::one(prec) - &qn;
            let n3 = Float::with_val(prec, n.square_ref()) * &n;
            qn.div(&d).scale(&n3)
        },
        Some(|i: u64, _: &Float| power_tail(3, i + 1, &r)),
        ctx,
    )
}

/// M(q) = 1 + 240 sum n^3 q^n / (1 - q^n).
pub fn eisenstein_m(q: &QPoint, ctx: &PrecisionContext) -> Result<AppValue<Cx>> {
    let l = lambert_sigma3(q, ctx)?;
    let k = ctx.float(240);
    Ok(AppValue::exact(Cx::one(ctx.prec())).add(&l.scale(&k)))
}
