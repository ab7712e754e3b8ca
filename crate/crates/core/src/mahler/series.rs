use rug::Float;

use super::sequences::{bseq_sequence, domb_sequence, BinomialSumSequence};
use crate::error::{Error, Result};
use crate::hypergeometric::pfq_complex;
use crate::precision::summation::{geometric_tail, sum_with_tail, NoTail};
use crate::precision::value::err_float;
use crate::precision::{rat, AppValue, Cx, ExactRational, PrecisionContext, Rigor};

/// (c_j, x_j, upper parameters) for f_j(u) = Re[log u - (c/u) 5F4(...; x/u)].
fn f_data(j: u32) -> Result<(u32, u32, [ExactRational; 5])> {
    Ok(match j {
        2 => (8, 64, [rat(3, 2), rat(3, 2), rat(3, 2), rat(1, 1), rat(1, 1)]),
        3 => (12, 108, [rat(4, 3), rat(3, 2), rat(5, 3), rat(1, 1), rat(1, 1)]),
        4 => (24, 256, [rat(5, 4), rat(3, 2), rat(7, 4), rat(1, 1), rat(1, 1)]),
        _ => return Err(Error::InvalidArgument(format!("f_{j} is not defined; use 2, 3 or 4"))),
    })
}

/// Upper parameters of the 5F4 behind f_j.
pub fn f_parameters(j: u32) -> Result<Vec<ExactRational>> {
    Ok(f_data(j)?.2.to_vec())
}

/// The four lower parameters (all 2) of those 5F4s.
pub fn f_lower() -> Vec<ExactRational> {
    vec![rat(2, 1); 4]
}

/// Radius below which the f_j series is not used.
pub fn f_threshold(j: u32) -> Result<u32> {
    Ok(f_data(j)?.1)
}

pub fn f_series(j: u32, u: &Cx, ctx: &PrecisionContext) -> Result<AppValue<Float>> {
    let (c, x, upper) = f_data(j)?;
    let ua = u.abs();
    if !(ua > x) {
        return Err(Error::domain(format!("f_{j}(u) series needs |u| > {x}, got |u| = {}", ua.to_f64())));
    }
    let prec = ctx.prec();
    let u = AppValue::exact(Cx::new(Float::with_val(prec, &u.re), Float::with_val(prec, &u.im)));
    let inv = AppValue::exact(Cx::one(prec)).div(&u);
    let arg = inv.scale(&ctx.float(x));
    let f = pfq_complex(&upper, &f_lower(), &arg.value, ctx)?;
    let corr = inv.scale(&ctx.float(c)).mul(&f);
    Ok(u.ln().sub(&corr).re())
}

/// g_1 (|u| > 6) and g_2 (|u| > 16) via their binomial-sum Taylor series.
pub fn g_series(j: u32, u: &Cx, ctx: &PrecisionContext) -> Result<AppValue<Float>> {
    let (seq, bound, step): (&BinomialSumSequence, u32, u32) = match j {
        1 => (bseq_sequence(), 6, 2),
        2 => (domb_sequence(), 16, 1),
        _ => return Err(Error::InvalidArgument(format!("g_{j} is not defined; use 1 or 2"))),
    };
    let ua = u.abs();
    if !(ua > bound) {
        return Err(Error::domain(format!("g_{j}(u) series needs |u| > {bound}, got |u| = {}", ua.to_f64())));
    }
    let prec = ctx.prec();
    let uc = Cx::new(Float::with_val(prec, &u.re), Float::with_val(prec, &u.im));
    // z = 1/u^step; term n is seq_n z^n / (step n)
    let z = uc.powi(-i64::from(step));
    let rho = err_float(seq.kind().ratio_limit()) / err_float(z.abs().recip());
    let mut zn = Cx::one(prec);
    let mut ok_until = 0usize;
    let term = |i: u64| {
        let n = i + 1;
        zn = &zn * &z;
        let a = Float::with_val(prec, &seq.get(n as usize));
        let k = Float::with_val(prec, a / (n * u64::from(step)));
        zn.scale(&k)
    };
    let tail = |i: u64, abs_t: &Float| {
        let n = (i + 1) as usize;
        if n >= ok_until {
            // audit a block ahead so the check is amortized
            let ahead = 2 * n + 16;
            if !seq.ratio_bound_holds(ahead + 1) {
                return None;
            }
            ok_until = ahead;
        }
        geometric_tail(abs_t, &rho)
    };
    let s = if rho < 1 {
        sum_with_tail(term, Some(tail), ctx)?
    } else {
        sum_with_tail(term, None::<NoTail>, ctx)?
    };
    let l = AppValue::exact(uc).ln();
    let v = l.sub(&s).re();
    Ok(if v.rigor == Rigor::Rigorous { v } else { v.heuristic() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_guards() {
        let c = PrecisionContext::new(128).unwrap();
        let five = Cx::from_real(c.float(5));
        assert!(matches!(g_series(1, &five, &c), Err(Error::Domain(_))));
        assert!(matches!(g_series(2, &Cx::from_real(c.float(16)), &c), Err(Error::Domain(_))));
        assert!(matches!(f_series(4, &Cx::from_real(c.float(200)), &c), Err(Error::Domain(_))));
    }

    #[test]
    fn g2_tends_to_log() {
        let c = PrecisionContext::new(128).unwrap();
        let u = c.float(1e12);
        let g = g_series(2, &Cx::from_real(u.clone()), &c).unwrap();
        let d = Float::with_val(64, &g.value - u.ln()).abs();
        assert!(d < 1e-11);
        assert_eq!(g.rigor, Rigor::Rigorous);
    }
}
