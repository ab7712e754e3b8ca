//! Generalized hypergeometric series with exact rational parameters.

use rug::ops::Pow;
use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::precision::summation::sum_counted;
use crate::precision::value::err_float;
use crate::precision::{AppValue, Cx, ExactRational, PrecisionContext, Rigor, Scalar};

/// Parameters and argument of pFq.
#[derive(Debug, Clone)]
pub struct HypergeometricSpec<T = Float> {
    pub upper: Vec<ExactRational>,
    pub lower: Vec<ExactRational>,
    pub argument: T,
}

impl<T: Scalar> HypergeometricSpec<T> {
    pub fn new(upper: Vec<ExactRational>, lower: Vec<ExactRational>, argument: T) -> Result<Self> {
        if let Some(b) = lower.iter().find(|b| b.is_nonpositive_integer()) {
            return Err(Error::InvalidArgument(format!("lower parameter {b} is a nonpositive integer")));
        }
        Ok(Self { upper, lower, argument })
    }

    fn terminates(&self) -> bool {
        self.upper.iter().any(|a| a.is_nonpositive_integer())
    }
}

/// (a + n) for a = p/q as the integer p + nq over q; the denominators are
/// collected once in [`TermRatio::scale`].
#[derive(Debug, Clone)]
struct TermRatio {
    upper: Vec<(Integer, Integer)>,
    lower: Vec<(Integer, Integer)>,
}

impl TermRatio {
    fn new(upper: &[ExactRational], lower: &[ExactRational]) -> Self {
        let split = |v: &[ExactRational]| v.iter().map(|r| (r.numer().clone(), r.denom().clone())).collect();
        let mut lower: Vec<(Integer, Integer)> = split(lower);
        // the n! in the denominator
        lower.push((Integer::from(1), Integer::from(1)));
        Self { upper: split(upper), lower }
    }

    /// Exact t_{n+1}/t_n without the argument, as numerator and denominator.
    fn at(&self, n: u64) -> (Integer, Integer) {
        let mut num = Integer::from(1);
        let mut den = Integer::from(1);
        for (p, q) in &self.upper {
            num *= Integer::from(q * n) + p;
            den *= q;
        }
        for (p, q) in &self.lower {
            den *= Integer::from(q * n) + p;
            num *= q;
        }
        (num, den)
    }
}

/// sup over m >= n of the coefficient ratio |c_{m+1}/c_m|, valid once every
/// parameter plus n is positive. Upper parameters are paired with lower ones
/// (including the factorial's 1); each pair (a+m)/(b+m) is monotone in m.
fn ratio_sup(upper: &[ExactRational], lower: &[ExactRational], n: u64) -> Option<Float> {
    let mut lows: Vec<f64> = lower.iter().map(|b| b.to_f64()).collect();
    lows.push(1.0);
    let ups: Vec<f64> = upper.iter().map(|a| a.to_f64()).collect();
    if ups.len() > lows.len() {
        return None;
    }
    let nf = n as f64;
    if ups.iter().chain(lows.iter()).any(|&v| v + nf <= 0.0) {
        return None;
    }
    let mut bound = 1.0f64;
    for (i, b) in lows.iter().enumerate() {
        match ups.get(i) {
            Some(a) => bound *= ((a + nf) / (b + nf)).max(1.0),
            None => bound /= b + nf,
        }
    }
    Some(err_float(bound * (1.0 + 1e-12)))
}

/// Sum of the series for p <= q + 1.
pub fn pfq<T: Scalar>(spec: &HypergeometricSpec<T>, ctx: &PrecisionContext) -> Result<AppValue<T>> {
    pfq_counted(spec, ctx).map(|(v, _)| v)
}

/// Like [`pfq`], also returning the number of terms summed.
pub fn pfq_counted<T: Scalar>(spec: &HypergeometricSpec<T>, ctx: &PrecisionContext) -> Result<(AppValue<T>, u64)> {
    let p = spec.upper.len();
    let q = spec.lower.len();
    let prec = ctx.prec();
    let x = spec.argument.clone();
    let xabs = err_float(x.modulus());
    let ratio = TermRatio::new(&spec.upper, &spec.lower);

    if spec.terminates() {
        let degree = spec
            .upper
            .iter()
            .filter(|a| a.is_nonpositive_integer())
            .map(|a| a.numer().to_i64().map(|v| v.unsigned_abs()).unwrap_or(u64::MAX))
            .min()
            .unwrap_or(0);
        let mut t = T::one(prec);
        let mut s = T::zero(prec);
        let mut abs_sum = Float::new(64);
        for n in 0..=degree {
            s = s.add_ref(&t);
            abs_sum += t.modulus();
            let (num, den) = ratio.at(n);
            t = t.mul_real(&Float::with_val(prec, &num)).mul_ref(&x);
            t = t.mul_real(&Float::with_val(prec, Float::with_val(prec, 1u32) / &den));
        }
        let mut err = err_float(abs_sum * (8 * (degree + 1)));
        err >>= prec;
        return Ok((AppValue::new(s, err, Rigor::Rigorous), degree + 1));
    }

    if p > q + 1 {
        return Err(Error::domain(format!("{p}F{q} has zero radius of convergence")));
    }
    if p == q + 1 && xabs >= 1 {
        return Err(Error::domain(format!("{p}F{q} needs |x| < 1, got |x| = {}", xabs.to_f64())));
    }

    let rigorous = xabs <= 0.5;
    let mut t = T::one(prec);
    let upper = spec.upper.clone();
    let lower = spec.lower.clone();
    let term = |n: u64| {
        if n > 0 {
            let (num, den) = ratio.at(n - 1);
            let r = Float::with_val(prec, &num) / Float::with_val(prec, &den);
            t = t.mul_real(&r).mul_ref(&x);
        }
        t.clone()
    };
    let tail = |n: u64, abs_t: &Float| {
        let r = ratio_sup(&upper, &lower, n)? * &xabs;
        crate::precision::geometric_tail(abs_t, &r)
    };
    let summed = sum_counted(term, Some(tail), ctx)?;
    let mut v = summed.value;
    if !rigorous {
        v.rigor = Rigor::Heuristic;
    }
    Ok((v, summed.terms))
}

/// Convenience: real argument.
pub fn pfq_real(upper: &[ExactRational], lower: &[ExactRational], x: &Float, ctx: &PrecisionContext) -> Result<AppValue<Float>> {
    pfq(&HypergeometricSpec::new(upper.to_vec(), lower.to_vec(), x.clone())?, ctx)
}

/// Convenience: complex argument.
pub fn pfq_complex(upper: &[ExactRational], lower: &[ExactRational], x: &Cx, ctx: &PrecisionContext) -> Result<AppValue<Cx>> {
    pfq(&HypergeometricSpec::new(upper.to_vec(), lower.to_vec(), x.clone())?, ctx)
}

/// Default starting block and level cap for [`pfq_unit`].
pub const UNIT_BASE_TERMS: u64 = 64;
pub const UNIT_MAX_LEVELS: u32 = 14;

/// pFq at x = 1 when sum(lower) - sum(upper) > 0.
///
/// Partial sums S_N behave like S + N^-gap (d_0 + d_1/N + ...), so Richardson
/// extrapolation over N = N0, 2N0, 4N0, ... removes one power per level. The
/// error estimate is the change between the last two diagonal entries.
pub fn pfq_unit(upper: &[ExactRational], lower: &[ExactRational], ctx: &PrecisionContext) -> Result<AppValue<Float>> {
    pfq_unit_with(upper, lower, UNIT_BASE_TERMS, UNIT_MAX_LEVELS, ctx)
}

pub fn pfq_unit_with(
    upper: &[ExactRational],
    lower: &[ExactRational],
    base_terms: u64,
    max_levels: u32,
    ctx: &PrecisionContext,
) -> Result<AppValue<Float>> {
    let spec = HypergeometricSpec::new(upper.to_vec(), lower.to_vec(), Float::with_val(ctx.prec(), 1u32))?;
    if spec.terminates() {
        return pfq(&spec, ctx);
    }
    let gap: rug::Rational = lower.iter().map(|b| b.inner()).sum::<rug::Rational>() - upper.iter().map(|a| a.inner()).sum::<rug::Rational>();
    if gap.cmp0() != std::cmp::Ordering::Greater || upper.len() != lower.len() + 1 {
        return Err(Error::domain(format!("unit argument needs p = q + 1 and positive parameter excess, got {gap}")));
    }
    if base_terms < 2 || max_levels < 2 {
        return Err(Error::InvalidArgument("pfq_unit needs at least 2 base terms and 2 levels".into()));
    }
    let last = base_terms << max_levels;
    if last > ctx.max_terms() {
        return Err(Error::TermCapExceeded { cap: ctx.max_terms() });
    }

    // extra bits absorb the cancellation in the extrapolation table
    let prec = ctx.prec() + 2 * max_levels;
    let gap = Float::with_val(prec, &gap);
    let ratio = TermRatio::new(upper, lower);
    let mut t = Float::with_val(prec, 1u32);
    let mut s = Float::new(prec);
    let mut n = 0u64;
    let mut checkpoint = base_terms;

    // table[j] holds the level-k entry after j eliminations
    let mut diag: Vec<Float> = Vec::new();
    let mut row: Vec<Float> = Vec::new();
    let target = ctx.eps();
    for level in 0..=max_levels {
        while n < checkpoint {
            s += &t;
            let (num, den) = ratio.at(n);
            t *= Float::with_val(prec, &num);
            t /= Float::with_val(prec, &den);
            n += 1;
        }
        let mut new_row = vec![s.clone()];
        for (j, prev) in row.iter().enumerate() {
            let e = Float::with_val(prec, &gap + j as u32);
            let f = Float::with_val(prec, 2u32).pow(&e);
            let num = Float::with_val(prec, &f * &new_row[j]) - prev;
            new_row.push(num / (f - 1u32));
        }
        diag.push(new_row.last().expect("row nonempty").clone());
        row = new_row;
        checkpoint <<= 1;

        if level >= 3 {
            let k = diag.len();
            let d = Float::with_val(64, &diag[k - 1] - &diag[k - 2]).abs();
            let scale = Float::with_val(64, diag[k - 1].abs_ref());
            if d <= Float::with_val(64, &target * &scale) {
                break;
            }
        }
    }
    let k = diag.len();
    let err = Float::with_val(64, &diag[k - 1] - &diag[k - 2]).abs();
    let value = Float::with_val(ctx.prec(), &diag[k - 1]);
    Ok(AppValue::new(value, err, Rigor::Heuristic))
}
