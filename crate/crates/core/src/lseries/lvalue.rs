use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer};

use super::coeffs::{divisor_counts, CoefficientSeries};
use crate::error::{Error, Result};
use crate::precision::{AppValue, PrecisionContext, Rigor};

/// Fixed chunk width so the reduction order never depends on the pool size.
const CHUNK: usize = 1 << 16;

/// |D(x) - x log x - (2 gamma - 1) x| <= DELTA_C sqrt(x) for x >= 1.
const DELTA_C: f64 = 0.961;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Sum of a_n n^{-s} over n in [lo, hi], chunked and reduced in index order.
fn partial_sum(cs: &CoefficientSeries, s: u32, lo: usize, hi: usize, prec: u32) -> (Float, Float) {
    let starts: Vec<usize> = (lo..=hi).step_by(CHUNK).collect();
    let parts: Vec<(Float, Float)> = starts
        .par_iter()
        .map(|&a| {
            let b = (a + CHUNK - 1).min(hi);
            let mut acc = Float::new(prec);
            let mut abs = Float::new(64);
            for n in a..=b {
                let c = cs.coeffs[n];
                if c == 0 {
                    continue;
                }
                let t = match (n as u128).checked_pow(s) {
                    Some(p) => Float::with_val(prec, c) / Float::with_val(prec, p),
                    None => Float::with_val(prec, c) / Float::with_val(prec, Integer::from(n).pow(s)),
                };
                abs += t.clone().abs();
                acc += &t;
            }
            (acc, abs)
        })
        .collect();
    let mut total = Float::new(prec);
    let mut abs = Float::new(64);
    for (p, a) in parts {
        total += &p;
        abs += &a;
    }
    (total, abs)
}

fn check_direct(cs: &CoefficientSeries, s: i64) -> Result<(u32, f64)> {
    let w = cs.weight;
    if w == 0 {
        return Err(Error::InvalidArgument("coefficient series has no integral weight".into()));
    }
    // sum d(n) n^{(w-1)/2 - s} converges iff s > (w+1)/2
    if 2 * s <= (w as i64) + 1 {
        return Err(Error::Diverges { s, weight: w });
    }
    let sigma = s as f64 - (w as f64 - 1.0) / 2.0;
    Ok((s as u32, sigma))
}

/// Upper bound for sum_{n>N} d(n) n^{-sigma}, sigma > 1, given D(N) exactly.
pub fn divisor_tail_bound(n: usize, d_sum: u64, sigma: f64) -> f64 {
    let nf = n as f64;
    let ln = nf.ln();
    let s1 = sigma - 1.0;
    let main = nf.powf(1.0 - sigma) * (ln / s1 + 1.0 / (s1 * s1) + (2.0 * EULER_GAMMA - 1.0) / s1);
    let delta = DELTA_C * nf.powf(0.5 - sigma) / (sigma - 0.5);
    let bound = -(d_sum as f64) * nf.powf(-sigma) + sigma * (main + delta);
    // f64 slack; the bound is a difference of nearby terms
    bound.max(0.0) * (1.0 + 1e-9) + 1e-300
}

/// L(f, s) as the truncated Dirichlet series over every stored coefficient,
/// with a proven tail bound from |a_n| <= d(n) n^{(w-1)/2}.
pub fn lvalue_direct(cs: &CoefficientSeries, s: i64, ctx: &PrecisionContext) -> Result<AppValue> {
    let (s, sigma) = check_direct(cs, s)?;
    let n = cs.len();
    let prec = ctx.prec();
    if n == 0 || cs.coeffs[1..].iter().all(|&c| c == 0) && n < 2 {
        return Ok(AppValue::exact(Float::new(prec)));
    }
    let (value, abs) = partial_sum(cs, s, 1, n, prec);
    let d = divisor_counts(n);
    let d_sum: u64 = d[1..].iter().map(|&x| x as u64).sum();
    let tail = divisor_tail_bound(n, d_sum, sigma);
    let rounding = Float::with_val(64, &abs * (n as f64 + 2.0)) >> (prec - 1);
    let err = Float::with_val(64, tail) + rounding;
    Ok(AppValue::new(value, err, Rigor::Rigorous))
}

/// Direct sum whose error is estimated from how the partial sums move over the
/// last few doublings of N. Used where the proven tail is too weak to be
/// informative (weight 2 at s = 2).
pub fn lvalue_direct_heuristic(cs: &CoefficientSeries, s: i64, ctx: &PrecisionContext) -> Result<AppValue> {
    let (s, _) = check_direct(cs, s)?;
    let n = cs.len();
    let prec = ctx.prec();
    if n < 16 {
        return Err(Error::InsufficientCoefficients { needed: 16, have: n });
    }
    let cuts = [n / 8, n / 4, n / 2, n];
    let mut partials = Vec::with_capacity(4);
    let mut acc = Float::new(prec);
    let mut lo = 1;
    let mut abs_total = Float::new(64);
    for &c in &cuts {
        let (p, a) = partial_sum(cs, s, lo, c, prec);
        acc += &p;
        abs_total += &a;
        partials.push(acc.clone());
        lo = c + 1;
    }
    let last = partials[3].clone();
    let mut spread = Float::new(64);
    for p in &partials[..3] {
        let d = Float::with_val(64, &last - p).abs();
        if d > spread {
            spread = d;
        }
    }
    let rounding = Float::with_val(64, &abs_total * (n as f64 + 2.0)) >> (prec - 1);
    Ok(AppValue::new(last, spread + rounding, Rigor::Heuristic))
}

/// Gamma(m, x) for integer m and x > 0.
pub fn upper_gamma_int(m: i64, x: &Float) -> Float {
    let prec = x.prec();
    let ex = Float::with_val(prec, -x).exp();
    if m >= 1 {
        // (m-1)! e^{-x} sum_{k<m} x^k / k!
        let mut term = Float::with_val(prec, 1);
        let mut sum = Float::with_val(prec, 1);
        for k in 1..m {
            term *= x;
            term /= k;
            sum += &term;
        }
        let fact = Float::with_val(prec, Float::factorial((m - 1) as u32));
        return sum * ex * fact;
    }
    // E1(x) = -Ei(-x)
    let mut g = -Float::with_val(prec, -x).eint();
    let mut a = 0i64;
    while a > m {
        // Gamma(a-1, x) = (Gamma(a, x) - x^{a-1} e^{-x}) / (a-1)
        let xa = Float::with_val(prec, x.pow(a - 1));
        g = (g - xa * &ex) / (a - 1);
        a -= 1;
    }
    g
}

/// Number of coefficients the smoothed sum needs at this precision.
pub fn smoothed_terms_needed(level: u32, ctx: &PrecisionContext) -> usize {
    let a = (level as f64).sqrt() / (2.0 * std::f64::consts::PI);
    let bits = ctx.prec() as f64 * std::f64::consts::LN_2 + 40.0;
    (a * bits * 1.2).ceil() as usize + 8
}

fn smoothed_at(
    cs: &CoefficientSeries,
    s: i64,
    weight: i64,
    sign: i32,
    a: &Float,
    t: &Float,
    terms: usize,
    prec: u32,
) -> Float {
    let mut lam = Float::new(prec);
    let t_inv = Float::with_val(prec, t.recip_ref());
    for n in 1..=terms {
        let c = cs.get(n);
        if c == 0 {
            continue;
        }
        let r = Float::with_val(prec, a / n as f64);
        let x1 = Float::with_val(prec, t / &r);
        let x2 = Float::with_val(prec, &t_inv / &r);
        let mut term = Float::with_val(prec, r.clone().pow(s)) * upper_gamma_int(s, &x1);
        let dual = Float::with_val(prec, r.pow(weight - s)) * upper_gamma_int(weight - s, &x2);
        if sign > 0 {
            term += dual;
        } else {
            term -= dual;
        }
        lam += term * c;
    }
    lam
}

/// L(f, s) from the completed L-function A^s Gamma(s) L(f, s), A = sqrt(level)/(2 pi),
/// assuming Lambda(s) = sign * Lambda(weight - s). The split point t is
/// varied; disagreement between t = 1 and t = 6/5 rejects the
/// functional-equation data.
pub fn lvalue_smoothed(
    cs: &CoefficientSeries,
    s: i64,
    level: u32,
    weight: u32,
    sign: i32,
    ctx: &PrecisionContext,
) -> Result<AppValue> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidArgument(format!("sign must be +1 or -1, got {sign}")));
    }
    if level == 0 || weight == 0 {
        return Err(Error::InvalidArgument("level and weight must be positive".into()));
    }
    if s < 1 {
        return Err(Error::InvalidArgument(format!("smoothed sum needs s >= 1, got {s}")));
    }
    let prec = ctx.prec();
    if cs.coeffs.iter().all(|&c| c == 0) {
        return Ok(AppValue::new(Float::new(prec), Float::new(64), Rigor::Heuristic));
    }
    let terms = smoothed_terms_needed(level, ctx);
    if cs.len() < terms {
        return Err(Error::InsufficientCoefficients { needed: terms, have: cs.len() });
    }
    let a = Float::with_val(prec, level).sqrt() / (2 * ctx.pi());
    let t1 = Float::with_val(prec, 1);
    let t2 = Float::with_val(prec, 6) / 5;
    let w = weight as i64;
    let l1 = smoothed_at(cs, s, w, sign, &a, &t1, terms, prec);
    let l2 = smoothed_at(cs, s, w, sign, &a, &t2, terms, prec);
    let norm = Float::with_val(prec, a.pow(s)) * Float::with_val(prec, Float::factorial((s - 1) as u32));
    let v1 = l1 / &norm;
    let v2 = l2 / &norm;
    let spread = Float::with_val(64, &v1 - &v2).abs();
    let scale = Float::with_val(64, v1.clone().abs()).max(&Float::with_val(64, 1));
    let tol = Float::with_val(64, &scale) >> (ctx.working_bits() / 2);
    if spread > tol {
        return Err(Error::InconsistentFunctionalEquation { spread: spread.to_f64() });
    }
    let floor = scale >> ctx.working_bits();
    Ok(AppValue::new(v1, spread + floor, Rigor::Heuristic))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::rat;
    use crate::qseries::EtaQuotientSpec;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(128).unwrap()
    }

    #[test]
    fn incomplete_gamma_values() {
        let x = ctx().float(1);
        // E1(1)
        assert!((upper_gamma_int(0, &x).to_f64() - 0.219_383_934_395_520_27).abs() < 1e-15);
        // Gamma(3,1) = 5/e
        assert!((upper_gamma_int(3, &x).to_f64() - 5.0 / std::f64::consts::E).abs() < 1e-15);
        // Gamma(-1,1) = e^{-1} - E1(1)
        let want = (-1f64).exp() - 0.219_383_934_395_520_27;
        assert!((upper_gamma_int(-1, &x).to_f64() - want).abs() < 1e-15);
    }

    #[test]
    fn zero_series_is_zero() {
        let spec = EtaQuotientSpec::new([(1, 2), (2, 1), (4, 1), (8, 2)], rat(1, 1)).unwrap();
        let cs = CoefficientSeries::from_coeffs(vec![0; 200], spec);
        let v = lvalue_direct(&cs, 3, &ctx()).unwrap();
        assert!(v.value.is_zero());
        let v = lvalue_smoothed(&cs, 3, 8, 3, 1, &ctx()).unwrap();
        assert!(v.value.is_zero());
    }

    #[test]
    fn divergent_direct_sum_is_rejected() {
        let spec = EtaQuotientSpec::new([(1, 1), (3, 1), (5, 1), (15, 1)], rat(1, 1)).unwrap();
        let cs = CoefficientSeries::from_coeffs(vec![0, 1, -1, -1], spec);
        assert!(matches!(lvalue_direct(&cs, 1, &ctx()), Err(Error::Diverges { .. })));
        assert!(lvalue_direct(&cs, 2, &ctx()).is_ok());
    }

    #[test]
    fn tail_bound_matches_brute_force_shape() {
        // compare with sum_{N<n<=M} d(n) n^{-2} plus the bound at M
        let m = 200_000;
        let d = divisor_counts(m);
        let n = 1000;
        let dn: u64 = d[1..=n].iter().map(|&x| x as u64).sum();
        let dm: u64 = d[1..=m].iter().map(|&x| x as u64).sum();
        let partial: f64 = (n + 1..=m).map(|k| d[k] as f64 / (k as f64).powi(2)).sum();
        let bound = divisor_tail_bound(n, dn, 2.0);
        assert!(partial < bound);
        assert!(partial + divisor_tail_bound(m, dm, 2.0) > 0.0);
        assert!(bound < 1.1 * (partial + divisor_tail_bound(m, dm, 2.0)));
    }
}
