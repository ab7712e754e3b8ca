use rug::Float;

use super::context::{PrecisionContext, ERR_PREC};
use super::value::{err_float, AppValue, Rigor, Scalar};
use crate::error::{Error, Result};

/// Tail bound callback: given the index n and |t_n|, bound |sum_{m>n} t_m|,
/// or `None` while no bound is available yet.
pub type NoTail = fn(u64, &Float) -> Option<Float>;

/// A finished sum together with the number of terms consumed.
#[derive(Debug, Clone)]
pub struct Summed<T> {
    pub value: AppValue<T>,
    pub terms: u64,
}

/// Sums `term(0) + term(1) + ...` at `ctx.prec()`.
///
/// With a majorant the loop stops once the bound is below 2^-wb relative to
/// max(1, |S|) and the result is rigorous. Where no majorant is available it
/// stops after two consecutive terms fall below that threshold, and the
/// result is heuristic. Terms exceeding 2^(4 wb) times the
/// first nonzero term are treated as divergence.
pub fn sum_with_tail<T, G, M>(term: G, tail: Option<M>, ctx: &PrecisionContext) -> Result<AppValue<T>>
where
    T: Scalar,
    G: FnMut(u64) -> T,
    M: FnMut(u64, &Float) -> Option<Float>,
{
    sum_counted(term, tail, ctx).map(|s| s.value)
}

/// Heuristic-only summation.
pub fn sum_heuristic<T, G>(term: G, ctx: &PrecisionContext) -> Result<AppValue<T>>
where
    T: Scalar,
    G: FnMut(u64) -> T,
{
    sum_with_tail(term, None::<NoTail>, ctx)
}

pub fn sum_counted<T, G, M>(mut term: G, mut tail: Option<M>, ctx: &PrecisionContext) -> Result<Summed<T>>
where
    T: Scalar,
    G: FnMut(u64) -> T,
    M: FnMut(u64, &Float) -> Option<Float>,
{
    let prec = ctx.prec();
    let eps = ctx.eps();
    let mut s = T::zero(prec);
    let mut abs_sum = Float::new(ERR_PREC);
    let mut first: Option<Float> = None;
    let mut small_run = 0u32;
    // entire series with large arguments legitimately pass through huge terms
    // (I_0(2u) near u = 60 peaks around 2^170); genuine divergence is caught long
    // before the term cap by this much looser bound
    let blowup_bits = 4 * ctx.working_bits();
    let blowup = Float::with_val(ERR_PREC, 1) << blowup_bits;

    for n in 0..ctx.max_terms() {
        let t = term(n);
        if !t.is_finite() {
            return Err(Error::NonConvergent(format!("term {n} is not finite")));
        }
        let m = err_float(t.modulus());
        s = s.add_ref(&t);
        abs_sum += &m;

        if first.is_none() && !m.is_zero() {
            first = Some(m.clone());
        }
        if let Some(f) = &first {
            let scale = if *f > 1 { f.clone() } else { err_float(1) };
            if m > err_float(&scale * &blowup) {
                return Err(Error::NonConvergent(format!("terms grow past 2^{blowup_bits} at n = {n}")));
            }
        }

        let s_abs = err_float(s.modulus());
        let unit = if s_abs > 1 { s_abs.clone() } else { err_float(1) };
        let threshold = err_float(&eps * &unit);

        let mut bounded = false;
        if let Some(f) = tail.as_mut() {
            if let Some(bound) = f(n, &m) {
                bounded = bound.is_finite();
                if bounded && bound <= threshold {
                    let err = bound + rounding(&abs_sum, n, prec);
                    return Ok(Summed { value: AppValue::new(s, err, Rigor::Rigorous), terms: n + 1 });
                }
            }
        }

        let rel = err_float(&eps * &s_abs);
        if m <= rel {
            small_run += 1;
        } else {
            small_run = 0;
        }
        // a usable majorant that is still too large means the tail is not small yet,
        // however small the current terms look
        if small_run >= 2 && !bounded {
            let err = err_float(&m * 2u32) + rounding(&abs_sum, n, prec);
            return Ok(Summed { value: AppValue::new(s, err, Rigor::Heuristic), terms: n + 1 });
        }
    }
    Err(Error::TermCapExceeded { cap: ctx.max_terms() })
}

/// 2^-prec * 8(n+1) * sum|t|: one ulp per operation across the term recurrence and the add.
fn rounding(abs_sum: &Float, n: u64, prec: u32) -> Float {
    let mut r = err_float(abs_sum * (8 * (n + 1)));
    r >>= prec;
    r
}

/// Geometric tail bound |t_n| r / (1 - r) for a ratio bound r < 1.
pub fn geometric_tail(abs_term: &Float, ratio: &Float) -> Option<Float> {
    if *ratio >= 1 || ratio.is_sign_negative() {
        return None;
    }
    let one_minus = err_float(1 - ratio);
    Some(err_float(abs_term * ratio) / one_minus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::ops::Pow;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(128).unwrap()
    }

    #[test]
    fn geometric_series_is_rigorous() {
        let c = ctx();
        let half = c.float(0.5);
        let v: AppValue<Float> = sum_with_tail(
            |n| Float::with_val(c.prec(), (&half).pow(n as u32)),
            Some(|n: u64, _: &Float| Some(err_float(2f64).pow(1 - n as i32))),
            &c,
        )
        .unwrap();
        assert_eq!(v.rigor, Rigor::Rigorous);
        let d = Float::with_val(c.prec(), &v.value - 2u32).abs();
        assert!(d <= v.err);
    }

    #[test]
    fn zero_series_has_zero_error() {
        let c = ctx();
        let v: AppValue<Float> = sum_heuristic(|_| Float::new(c.prec()), &c).unwrap();
        assert!(v.value.is_zero());
        assert!(v.err.is_zero());
    }

    #[test]
    fn exponential_series() {
        let c = ctx();
        let mut t = c.float(1);
        let v: AppValue<Float> = sum_with_tail(
            |n| {
                if n > 0 {
                    t /= n as u32;
                }
                t.clone()
            },
            // sum_{m>n} 1/m! <= 2/(n+1)!  <= 2|t_n|/(n+1)
            Some(|n: u64, a: &Float| Some(err_float(a * 2u32) / (n + 1) as u32)),
            &c,
        )
        .unwrap();
        let e = c.float(1).exp();
        let d = Float::with_val(c.prec(), &v.value - &e).abs();
        assert!(d <= v.err, "{d} > {}", v.err);
        assert!(v.err < c.eps() * 4u32);
    }

    #[test]
    fn divergence_and_cap() {
        let c = ctx();
        let r: Result<AppValue<Float>> = sum_heuristic(|n| c.float(2).pow(n as u32), &c);
        assert!(matches!(r, Err(Error::NonConvergent(_))));
        let c2 = PrecisionContext::with_options(128, 64, 100).unwrap();
        let r: Result<AppValue<Float>> = sum_heuristic(|n| c2.float(1) / (n as u32 + 1), &c2);
        assert_eq!(r.unwrap_err(), Error::TermCapExceeded { cap: 100 });
    }
}
