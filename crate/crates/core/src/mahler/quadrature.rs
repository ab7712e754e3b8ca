use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};
use crate::precision::value::err_float;
use crate::precision::{AppValue, PrecisionContext, Rigor};

/// Gauss-Legendre nodes and weights on [-1, 1] at `prec` bits.
pub fn gauss_legendre(n: usize, prec: u32) -> Vec<(Float, Float)> {
    let pi = Float::with_val(prec, Constant::Pi);
    let tol = Float::with_val(prec, 1u32) >> (prec - 4);
    let mut out = Vec::with_capacity(n);
    for i in 0..n.div_ceil(2) {
        let guess = (Float::with_val(53, &pi * (i as f64 + 0.75)) / (n as f64 + 0.5)).cos();
        let mut x = Float::with_val(prec, guess);
        let mut dp = Float::new(prec);
        for _ in 0..100 {
            let (p, d) = legendre(n, &x);
            let dx = Float::with_val(prec, &p / &d);
            x -= &dx;
            dp = d;
            if dx.abs() < tol {
                let (_, d) = legendre(n, &x);
                dp = d;
                break;
            }
        }
        let x2 = Float::with_val(prec, x.square_ref());
        let w = Float::with_val(prec, 2u32) / ((1u32 - x2) * dp.square());
        out.push((Float::with_val(prec, -&x), w.clone()));
        if 2 * i + 1 != n {
            out.push((x, w));
        }
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite nodes"));
    out
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre(n: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut p0 = Float::with_val(prec, 1u32);
    let mut p1 = x.clone();
    for k in 2..=n {
        let a = Float::with_val(prec, x * &p1) * (2 * k - 1) as u32;
        let p2 = (a - Float::with_val(prec, &p0 * (k - 1) as u32)) / k as u32;
        p0 = p1;
        p1 = p2;
    }
    let x2m1 = Float::with_val(prec, x.square_ref()) - 1u32;
    let d = Float::with_val(prec, x * &p1) - &p0;
    let d = d * n as u32 / x2m1;
    (p1, d)
}

/// Composite Gauss-Legendre rule on `panels` equal panels.
pub fn gl_composite<F>(f: &mut F, a: &Float, b: &Float, panels: usize, rule: &[(Float, Float)]) -> Result<Float>
where
    F: FnMut(&Float) -> Result<Float>,
{
    let prec = a.prec();
    let h = Float::with_val(prec, b - a) / panels as u32;
    let half = Float::with_val(prec, &h / 2u32);
    let mut total = Float::new(prec);
    for p in 0..panels {
        let mid = Float::with_val(prec, a + Float::with_val(prec, &h * p as u32)) + &half;
        let mut s = Float::new(prec);
        for (x, w) in rule {
            let t = Float::with_val(prec, &mid + Float::with_val(prec, x * &half));
            s += Float::with_val(prec, w * f(&t)?);
        }
        total += s * &half;
    }
    Ok(total)
}

/// Doubles the panel count until two successive rules agree to 2^-wb
/// relative; the error estimate is their difference.
pub fn gl_adaptive<F>(mut f: F, a: &Float, b: &Float, order: usize, ctx: &PrecisionContext) -> Result<AppValue<Float>>
where
    F: FnMut(&Float) -> Result<Float>,
{
    let rule = gauss_legendre(order, ctx.prec());
    let mut panels = 2usize;
    let mut prev = gl_composite(&mut f, a, b, panels, &rule)?;
    while panels < 1 << 14 {
        panels *= 2;
        let cur = gl_composite(&mut f, a, b, panels, &rule)?;
        let diff = err_float(Float::with_val(ctx.prec(), &cur - &prev).abs());
        let scale = err_float(cur.abs_ref());
        let unit = if scale > 1 { scale } else { err_float(1) };
        if diff <= err_float(&unit * &ctx.eps()) {
            let round = err_float(&unit * &ctx.ulp()) * (panels * order) as u32;
            return Ok(AppValue::new(cur, diff + round, Rigor::Heuristic));
        }
        prev = cur;
    }
    Err(Error::NonConvergent("Gauss-Legendre panels did not settle".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_exp() {
        let c = PrecisionContext::new(128).unwrap();
        let v = gl_adaptive(|x| Ok(Float::with_val(x.prec(), x.exp_ref())), &c.float(0), &c.float(1), 20, &c).unwrap();
        let want = c.float(1).exp() - 1u32;
        let d = Float::with_val(c.prec(), &v.value - &want).abs();
        assert!(d < 1e-36, "{d}");
    }

    #[test]
    fn weights_sum_to_two() {
        let r = gauss_legendre(7, 128);
        let s: Float = r.iter().fold(Float::new(128), |acc, (_, w)| acc + w);
        assert!((s.to_f64() - 2.0).abs() < 1e-30);
        assert_eq!(r.len(), 7);
    }
}
