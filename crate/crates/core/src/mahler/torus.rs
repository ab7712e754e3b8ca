use num_complex::Complex64;
use rayon::prelude::*;
use rug::float::Constant;
use rug::Float;

use super::polynomial::LaurentPolynomial;
use super::quadrature::gl_adaptive;
use crate::error::{Error, Result};
use crate::precision::value::err_float;
use crate::precision::{AppValue, PrecisionContext, Rigor};

/// Per-variable tables of e^{2 pi i e k / N} for every exponent e in use.
struct PowerTable {
    lo: i32,
    rows: Vec<Vec<Complex64>>,
}

impl PowerTable {
    fn new(lo: i32, hi: i32, n: usize) -> Self {
        let rows = (0..n)
            .map(|k| {
                (lo..=hi)
                    .map(|e| {
                        // reduce e*k mod n before scaling keeps the angle exact-ish
                        let m = (i64::from(e) * k as i64).rem_euclid(n as i64) as f64;
                        Complex64::from_polar(1.0, std::f64::consts::TAU * m / n as f64)
                    })
                    .collect()
            })
            .collect();
        Self { lo, rows }
    }

    fn get(&self, k: usize, e: i32) -> Complex64 {
        self.rows[k][(e - self.lo) as usize]
    }
}

/// Trapezoidal rule for m(P) on an N^m grid over the torus. The value is the
/// N-point rule; its error estimate is the change from the N/2 subgrid.
pub fn mahler_torus_integral(p: &LaurentPolynomial, grid_per_dim: usize, ctx: &PrecisionContext) -> Result<AppValue<Float>> {
    let n = grid_per_dim;
    if n < 4 || n % 2 != 0 {
        return Err(Error::InvalidArgument(format!("grid size must be even and at least 4, got {n}")));
    }
    let m = p.vars();
    let tables: Vec<PowerTable> = p.exponent_ranges().into_iter().map(|(lo, hi)| PowerTable::new(lo, hi, n)).collect();
    let terms: Vec<(Vec<i32>, Complex64)> = p.terms().map(|(e, c)| (e.clone(), *c)).collect();
    let rest = n.pow((m - 1) as u32);

    // (full sum, even-subgrid sum, min |P|) per first-coordinate slab, reduced in index order
    let slabs: Vec<(f64, f64, f64)> = (0..n)
        .into_par_iter()
        .map(|k0| {
            let mut full = 0.0;
            let mut half = 0.0;
            let mut min = f64::INFINITY;
            let mut idx = vec![0usize; m];
            idx[0] = k0;
            for r in 0..rest {
                let mut rr = r;
                for slot in idx.iter_mut().skip(1) {
                    *slot = rr % n;
                    rr /= n;
                }
                let v: Complex64 = terms
                    .iter()
                    .map(|(e, c)| e.iter().enumerate().fold(*c, |acc, (j, &k)| acc * tables[j].get(idx[j], k)))
                    .sum();
                let a = v.norm();
                min = min.min(a);
                let l = a.ln();
                full += l;
                if idx.iter().all(|k| k % 2 == 0) {
                    half += l;
                }
            }
            (full, half, min)
        })
        .collect();

    let (mut full, mut half, mut min) = (0.0f64, 0.0f64, f64::INFINITY);
    for (f, h, mn) in slabs {
        full += f;
        half += h;
        min = min.min(mn);
    }
    // double-precision evaluation cannot resolve |P| below ~1e-12 of its coefficient scale
    let scale: f64 = terms.iter().map(|(_, c)| c.norm()).sum();
    let threshold = (-(f64::from(ctx.working_bits()) / 2.0) * std::f64::consts::LN_2).exp().max(1e-12 * scale);
    if !(min >= threshold) {
        return Err(Error::NearZeroOnTorus { min });
    }
    let i_full = full / (n as f64).powi(m as i32);
    let i_half = half / ((n / 2) as f64).powi(m as i32);
    // the f64 accumulation itself limits accuracy to roughly grid-size ulps
    let round = f64::EPSILON * (n as f64).powi(m as i32).sqrt() * i_full.abs().max(1.0) * 16.0;
    let err = (i_full - i_half).abs() + round;
    Ok(AppValue::new(Float::with_val(ctx.prec(), i_full), err_float(err), Rigor::Heuristic))
}

/// m(1 + x + 1/x + y + 1/y) by Jensen's formula in x: for y = e^{i theta} the
/// x-roots have product 1 and lie off the circle exactly when cos theta > 1/2,
/// giving (1/pi) int_0^{pi/3} arccosh(1/2 + cos theta) d theta. Substituting
/// theta = (pi/3)(1 - t^2) removes the square-root endpoint.
pub fn boyd_mahler_measure(ctx: &PrecisionContext) -> Result<AppValue<Float>> {
    let prec = ctx.prec() + 32;
    let pi3 = Float::with_val(prec, Constant::Pi) / 3u32;
    let f = |t: &Float| -> Result<Float> {
        let t2 = Float::with_val(prec, t.square_ref());
        // cos(theta) - cos(pi/3) = 2 sin((theta + pi/3)/2) sin((pi/3 - theta)/2)
        let gap = Float::with_val(prec, &pi3 * &t2);
        let theta = Float::with_val(prec, &pi3 - &gap);
        let s1 = (Float::with_val(prec, &theta + &pi3) / 2u32).sin();
        let s2 = (gap / 2u32).sin();
        let delta = s1 * s2 * 2u32;
        // arccosh(1 + d) = log1p(d + sqrt(d (d + 2)))
        let root = Float::with_val(prec, &delta * Float::with_val(prec, &delta + 2u32)).sqrt();
        let ach = (delta + root).ln_1p();
        Ok(ach * t * 2u32 / 3u32)
    };
    let v = gl_adaptive(f, &Float::with_val(prec, 0u32), &Float::with_val(prec, 1u32), 24, ctx)?;
    Ok(AppValue::new(Float::with_val(ctx.prec(), &v.value), v.err, Rigor::Heuristic))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jensen_cases() {
        let c = PrecisionContext::new(128).unwrap();
        let two_plus_x = LaurentPolynomial::new(
            1,
            [(vec![0], Complex64::new(2.0, 0.0)), (vec![1], Complex64::new(1.0, 0.0))],
        )
        .unwrap();
        let v = mahler_torus_integral(&two_plus_x, 64, &c).unwrap();
        assert!((v.value.to_f64() - 2f64.ln()).abs() < 1e-12);
        let cx = LaurentPolynomial::new(2, [(vec![1, 0], Complex64::new(3.0, 4.0))]).unwrap();
        let v = mahler_torus_integral(&cx, 8, &c).unwrap();
        assert!((v.value.to_f64() - 5f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn vanishing_on_torus_is_reported() {
        let c = PrecisionContext::new(128).unwrap();
        let one_plus_x = LaurentPolynomial::new(
            1,
            [(vec![0], Complex64::new(1.0, 0.0)), (vec![1], Complex64::new(1.0, 0.0))],
        )
        .unwrap();
        assert!(matches!(mahler_torus_integral(&one_plus_x, 16, &c), Err(Error::NearZeroOnTorus { .. })));
    }

    #[test]
    fn boyd_value() {
        let c = PrecisionContext::new(128).unwrap();
        let v = boyd_mahler_measure(&c).unwrap();
        assert!((v.value.to_f64() - 0.251_330_433_713_252_2).abs() < 1e-15, "{}", v.value);
    }
}
