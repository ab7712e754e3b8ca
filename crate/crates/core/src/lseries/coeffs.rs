use serde::Serialize;

use super::ntt::multiply_all;
use crate::error::{Error, Result};
use crate::qseries::EtaQuotientSpec;

/// Sparse power series: (exponent, coefficient), exponents increasing.
type Sparse = Vec<(usize, i64)>;

/// (q^d; q^d)_inf up to q^n: sum (-1)^k q^{d k(3k-1)/2} over all integers k.
fn euler(d: usize, n: usize) -> Sparse {
    let mut out = vec![(0, 1)];
    for k in 1usize.. {
        let lo = d * k * (3 * k - 1) / 2;
        if lo > n {
            break;
        }
        let sign = if k % 2 == 1 { -1 } else { 1 };
        out.push((lo, sign));
        let hi = d * k * (3 * k + 1) / 2;
        if hi <= n {
            out.push((hi, sign));
        }
    }
    out
}

/// (q^d; q^d)_inf^3 up to q^n: sum_{k >= 0} (-1)^k (2k+1) q^{d k(k+1)/2}.
fn jacobi_cube(d: usize, n: usize) -> Sparse {
    (0usize..)
        .map(|k| (d * k * (k + 1) / 2, k))
        .take_while(|(e, _)| *e <= n)
        .map(|(e, k)| (e, if k % 2 == 1 { -(2 * k as i64 + 1) } else { 2 * k as i64 + 1 }))
        .collect()
}

fn sparse_to_dense(s: &Sparse, n: usize) -> Vec<i64> {
    let mut out = vec![0i64; n + 1];
    for &(e, c) in s {
        out[e] = c;
    }
    out
}

fn sparse_product(a: &Sparse, b: &Sparse, n: usize) -> Result<Vec<i64>> {
    let mut out = vec![0i64; n + 1];
    for &(e1, c1) in a {
        for &(e2, c2) in b {
            let e = e1 + e2;
            if e > n {
                break;
            }
            out[e] = out[e].checked_add(c1 * c2).ok_or(Error::CoefficientOverflow(e))?;
        }
    }
    Ok(out)
}

/// a / s for a sparse s with constant term 1, by forward substitution.
fn divide_sparse(a: &mut [i64], s: &Sparse) -> Result<()> {
    debug_assert_eq!(s.first(), Some(&(0, 1)));
    for i in 0..a.len() {
        let mut v = a[i] as i128;
        for &(e, c) in &s[1..] {
            if e > i {
                break;
            }
            v -= c as i128 * a[i - e] as i128;
        }
        a[i] = i64::try_from(v).map_err(|_| Error::CoefficientOverflow(i))?;
    }
    Ok(())
}

/// Exact integer q-expansion of an eta quotient with integral leading power.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientSeries {
    /// coeffs[n] is the coefficient of q^n for 0 <= n <= N.
    #[serde(skip)]
    pub coeffs: Vec<i64>,
    pub source: EtaQuotientSpec,
    /// sum(e_d)/2; zero for quotients of odd total exponent.
    pub weight: u32,
    /// True when the constant term vanishes.
    pub is_cusp: bool,
    /// Human-readable description of the tail bound assumed for L-series sums.
    pub divisor_bound: String,
}

impl CoefficientSeries {
    pub fn from_coeffs(coeffs: Vec<i64>, source: EtaQuotientSpec) -> Self {
        let two_w = source.weight_times_two();
        let weight = if two_w > 0 && two_w % 2 == 0 { (two_w / 2) as u32 } else { 0 };
        let is_cusp = coeffs.first().copied().unwrap_or(0) == 0;
        let divisor_bound = format!("|a_n| <= d(n) n^{}", half_string(weight));
        Self { coeffs, source, weight, is_cusp, divisor_bound }
    }

    /// Largest n with a known coefficient.
    pub fn len(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, n: usize) -> i64 {
        self.coeffs.get(n).copied().unwrap_or(0)
    }

    /// Checks |a_n| <= d(n) n^{(w-1)/2} for every stored n.
    pub fn deligne_audit(&self) -> Result<()> {
        if self.weight == 0 {
            return Err(Error::InvalidArgument("Deligne audit needs a positive integral weight".into()));
        }
        let n = self.len();
        let d = divisor_counts(n);
        let w1 = self.weight - 1;
        for i in 1..=n {
            let a = self.coeffs[i].unsigned_abs() as u128;
            // a^2 <= d^2 n^{w-1}, exact in u128 for the sizes used
            let lhs = a * a;
            let dn = d[i] as u128;
            let rhs = (dn * dn).saturating_mul((i as u128).saturating_pow(w1));
            if lhs > rhs {
                return Err(Error::DeligneViolation { n: i, coeff: self.coeffs[i] });
            }
        }
        Ok(())
    }
}

fn half_string(w: u32) -> String {
    if w == 0 {
        "?".into()
    } else if (w - 1) % 2 == 0 {
        format!("{}", (w - 1) / 2)
    } else {
        format!("{}/2", w - 1)
    }
}

/// d(n) for 0 <= n <= limit (d(0) = 0).
pub fn divisor_counts(limit: usize) -> Vec<u32> {
    let mut d = vec![0u32; limit + 1];
    for k in 1..=limit {
        let mut m = k;
        while m <= limit {
            d[m] += 1;
            m += k;
        }
    }
    d
}

/// Coefficients of q^0..q^N of the eta quotient.
///
/// Positive exponents become sparse pentagonal series (or Jacobi's cube
/// series for each full power of three); sparse factors are paired into dense
/// blocks and the blocks multiplied by NTT. Negative exponents divide by the
/// sparse series at the end.
pub fn eta_coeffs(spec: &EtaQuotientSpec, n: usize) -> Result<CoefficientSeries> {
    let qp = &spec.q_power;
    if !qp.is_integer() || qp.numer().cmp0() == std::cmp::Ordering::Less {
        return Err(Error::FractionalLeadingPower(qp.to_string()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one coefficient".into()));
    }
    let shift = qp.numer().to_usize().ok_or_else(|| Error::FractionalLeadingPower(qp.to_string()))?;
    let mut out = vec![0i64; n + 1];
    if shift > n {
        return Ok(CoefficientSeries::from_coeffs(out, spec.clone()));
    }
    let m = n - shift;

    let mut sparse: Vec<Sparse> = Vec::new();
    let mut divisors: Vec<Sparse> = Vec::new();
    for (&d, &e) in &spec.factors {
        let d = d as usize;
        if e > 0 {
            for _ in 0..e / 3 {
                sparse.push(jacobi_cube(d, m));
            }
            for _ in 0..e % 3 {
                sparse.push(euler(d, m));
            }
        } else {
            for _ in 0..(-e) {
                divisors.push(euler(d, m));
            }
        }
    }
    // fewest terms first keeps the pairwise products cheap
    sparse.sort_by_key(|s| s.len());

    let mut blocks: Vec<Vec<i64>> = Vec::new();
    for pair in sparse.chunks(2) {
        blocks.push(match pair {
            [a, b] => sparse_product(a, b, m)?,
            [a] => sparse_to_dense(a, m),
            _ => unreachable!(),
        });
    }
    let refs: Vec<&[i64]> = blocks.iter().map(|b| b.as_slice()).collect();
    let mut acc = multiply_all(&refs, m + 1)?;
    drop(blocks);
    for s in &divisors {
        divide_sparse(&mut acc, s)?;
    }
    out[shift..].copy_from_slice(&acc[..=m]);
    Ok(CoefficientSeries::from_coeffs(out, spec.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::rat;

    fn naive(spec: &EtaQuotientSpec, n: usize) -> Vec<i64> {
        // wrapping arithmetic is exact modulo 2^64, and the final values fit
        let mut c = vec![0i64; n + 1];
        c[0] = 1;
        for (&d, &e) in &spec.factors {
            for _ in 0..e.unsigned_abs() {
                let d = d as usize;
                for k in (d..=n).step_by(d) {
                    if e > 0 {
                        for i in (k..=n).rev() {
                            c[i] = c[i].wrapping_sub(c[i - k]);
                        }
                    } else {
                        for i in k..=n {
                            c[i] = c[i].wrapping_add(c[i - k]);
                        }
                    }
                }
            }
        }
        let s = spec.q_power.numer().to_usize().unwrap();
        let mut out = vec![0i64; n + 1];
        out[s..].copy_from_slice(&c[..=n - s]);
        out
    }

    #[test]
    fn agrees_with_schoolbook_products() {
        let specs = [
            EtaQuotientSpec::new([(2, 3), (6, 3)], rat(1, 1)).unwrap(),
            EtaQuotientSpec::new([(1, 2), (2, 1), (4, 1), (8, 2)], rat(1, 1)).unwrap(),
            EtaQuotientSpec::new([(1, 1), (3, 1), (5, 1), (15, 1)], rat(1, 1)).unwrap(),
            EtaQuotientSpec::new([(1, -2), (2, 5)], rat(0, 1)).unwrap(),
        ];
        for s in &specs {
            assert_eq!(eta_coeffs(s, 300).unwrap().coeffs, naive(s, 300), "{s:?}");
        }
    }

    #[test]
    fn trivial_and_error_cases() {
        let one = eta_coeffs(&EtaQuotientSpec::new([], rat(0, 1)).unwrap(), 5).unwrap();
        assert_eq!(one.coeffs, [1, 0, 0, 0, 0, 0]);
        assert!(!one.is_cusp);
        let frac = EtaQuotientSpec::new([(1, 1)], rat(1, 24)).unwrap();
        assert!(matches!(eta_coeffs(&frac, 10), Err(Error::FractionalLeadingPower(_))));
    }

    #[test]
    fn divisor_counts_small() {
        assert_eq!(divisor_counts(12), [0, 1, 2, 2, 3, 2, 4, 2, 4, 3, 4, 2, 6]);
    }
}
