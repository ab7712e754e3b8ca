use rug::Float;

use super::quadrature::gl_adaptive;
use crate::error::{Error, Result};
use crate::hypergeometric::pfq_real;
use crate::precision::summation::{geometric_tail, sum_with_tail};
use crate::precision::value::err_float;
use crate::precision::{rat, AppValue, PrecisionContext};

/// I_0(2u) = sum u^{2n} / n!^2.
pub fn bessel_i0(u: &Float, ctx: &PrecisionContext) -> Result<AppValue<Float>> {
    let prec = ctx.prec();
    let u2 = Float::with_val(prec, u.square_ref());
    let u2e = err_float(&u2);
    let mut t = Float::with_val(prec, 1u32);
    sum_with_tail(
        |n| {
            if n > 0 {
                t *= &u2;
                t /= n * n;
            }
            t.clone()
        },
        Some(|n: u64, a: &Float| {
            let m = (n + 1) as f64;
            geometric_tail(a, &(err_float(&u2e) / (m * m)))
        }),
        ctx,
    )
}

/// Both sides, for 0 < x < 1/3, of int_0^inf e^{-3(x+1/x)u} I_0(2u)^3 du
/// = x/(3(1+3x^2)) 3F2(1/4,1/2,3/4;1,1; 256x^2/(9(1+3x^2)^4)).
///
/// The integral is cut at U with e^{-(c-6)U} = 2^-wb, c = 3(x + 1/x); since
/// I_0(2u) <= e^{2u} the dropped part is at most e^{-(c-6)U}/(c-6).
pub fn bessel_laplace_sides(x: &Float, ctx: &PrecisionContext) -> Result<(AppValue<Float>, AppValue<Float>)> {
    // the 3F2 argument reaches 1 at x = 1/3; past it the right side is a
    // different branch and the identity fails
    if !(*x > 0 && Float::with_val(64, x * 3u32) < 1) {
        return Err(Error::domain(format!("Laplace identity needs 0 < x < 1/3, got {}", x.to_f64())));
    }
    let prec = ctx.prec();
    let x = Float::with_val(prec, x);
    let c = Float::with_val(prec, &x + x.clone().recip()) * 3u32;
    let decay = Float::with_val(prec, &c - 6u32);
    if !(decay > 0) {
        return Err(Error::domain("integrand does not decay"));
    }
    let upper = Float::with_val(prec, ctx.ln2() * ctx.working_bits()) / &decay;
    let tail = err_float((-Float::with_val(prec, &decay * &upper)).exp() / &decay);

    let integrand = |s: &Float| -> Result<Float> {
        let i0 = bessel_i0(s, ctx)?.value;
        let damp = Float::with_val(prec, -Float::with_val(prec, &c * s)).exp();
        Ok(damp * Float::with_val(prec, i0.square_ref()) * i0)
    };
    let lhs = gl_adaptive(integrand, &Float::new(prec), &upper, 24, ctx)?.with_extra_err(&tail);

    let x2 = Float::with_val(prec, x.square_ref());
    let d = Float::with_val(prec, &x2 * 3u32) + 1u32;
    let d2 = Float::with_val(prec, d.square_ref());
    let arg = Float::with_val(prec, &x2 * 256u32) / (Float::with_val(prec, d2.square_ref()) * 9u32);
    let f = pfq_real(&[rat(1, 4), rat(1, 2), rat(3, 4)], &[rat(1, 1), rat(1, 1)], &arg, ctx)?;
    let pre = Float::with_val(prec, &x / Float::with_val(prec, &d * 3u32));
    let rhs = f.scale(&pre);
    Ok((lhs, rhs))
}
