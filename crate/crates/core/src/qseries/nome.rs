use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};
use crate::hypergeometric::pfq_real;
use crate::precision::{rat, AppValue, PrecisionContext};

/// q_j(alpha) = exp(-pi / sin(pi/j) * F(1 - alpha) / F(alpha)),
/// F = 2F1(1/j, 1 - 1/j; 1; .).
pub fn nome(j: u32, alpha: &Float, ctx: &PrecisionContext) -> Result<AppValue<Float>> {
    if !(2..=4).contains(&j) {
        return Err(Error::InvalidArgument(format!("nome signature must be 2, 3 or 4, got {j}")));
    }
    if !(*alpha > 0 && *alpha < 1) {
        return Err(Error::domain(format!("nome needs 0 < alpha < 1, got {}", alpha.to_f64())));
    }
    let prec = ctx.prec();
    let jj = i64::from(j);
    let upper = [rat(1, jj), rat(jj - 1, jj)];
    let lower = [rat(1, 1)];
    let a = Float::with_val(prec, alpha);
    let comp = Float::with_val(prec, 1 - &a);
    let num = pfq_real(&upper, &lower, &comp, ctx)?;
    let den = pfq_real(&upper, &lower, &a, ctx)?;
    let pi = Float::with_val(prec, Constant::Pi);
    let s = Float::with_val(prec, &pi / jj).sin();
    let c = -(pi / s);
    let expo = num.div(&den).scale(&c);
    Ok(expo.to_cx().exp().re())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_point() {
        let c = PrecisionContext::new(128).unwrap();
        let q = nome(2, &c.float(0.5), &c).unwrap();
        let want = (-c.pi()).exp();
        let d = Float::with_val(c.prec(), &q.value - &want).abs();
        assert!(d <= q.err.clone() + c.eps(), "{d}");
        assert!(nome(2, &c.float(1), &c).is_err());
        assert!(nome(5, &c.float(0.5), &c).is_err());
    }
}
