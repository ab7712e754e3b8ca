//! Exact convolution of i64 sequences by number-theoretic transforms over two
//! 62-bit primes, recombined with the Chinese remainder theorem.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
struct Montgomery {
    p: u64,
    // -p^{-1} mod 2^64
    neg_inv: u64,
    // 2^128 mod p
    r2: u64,
}

impl Montgomery {
    const fn new(p: u64) -> Self {
        let mut inv = 1u64;
        let mut i = 0;
        while i < 6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
            i += 1;
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Self { p, neg_inv: inv.wrapping_neg(), r2 }
    }

    #[inline(always)]
    fn reduce(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        // branch-free: exactly one of u, u - p (wrapping) is below p
        u.min(u.wrapping_sub(self.p))
    }

    #[inline(always)]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    fn to_mont(&self, a: u64) -> u64 {
        let a = if a < self.p { a } else { a % self.p };
        self.mul(a, self.r2)
    }

    fn from_mont(&self, a: u64) -> u64 {
        self.reduce(a as u128)
    }

    fn pow(&self, base: u64, mut e: u64) -> u64 {
        let mut acc = self.to_mont(1);
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    #[inline(always)]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        s.min(s.wrapping_sub(self.p))
    }

    #[inline(always)]
    fn sub(&self, a: u64, b: u64) -> u64 {
        let d = a.wrapping_sub(b);
        d.min(d.wrapping_add(self.p))
    }
}

/// 29 * 2^57 + 1 with primitive root 3.
const P1: u64 = 4_179_340_454_199_820_289;
/// 177 * 2^54 + 1 with primitive root 7.
const P2: u64 = 3_188_548_536_178_311_169;
const MAX_LOG: u32 = 54;

struct Field {
    m: Montgomery,
    root: u64,
}

/// rt[k + j] = w_{2k}^j (Montgomery form) for every power of two k < n.
fn twiddles(f: &Field, n: usize) -> Vec<u64> {
    let m = &f.m;
    let mut rt = vec![0u64; n.max(2)];
    rt[1] = m.to_mont(1);
    let g = m.to_mont(f.root);
    let mut k = 2;
    while k < n {
        let z = m.pow(g, (m.p - 1) / (2 * k as u64));
        for i in k..2 * k {
            rt[i] = if i & 1 == 1 { m.mul(rt[i / 2], z) } else { rt[i / 2] };
        }
        k *= 2;
    }
    rt
}

/// Blocks at or below this length are transformed level by level in cache;
/// larger ones do one level and recurse into the halves.
const LEAF: usize = 1 << 14;

#[inline(always)]
fn dif_level(m: &Montgomery, w: &[u64], lo: &mut [u64], hi: &mut [u64]) {
    for ((x, y), &z) in lo.iter_mut().zip(hi.iter_mut()).zip(w) {
        let u = *x;
        let v = *y;
        *x = m.add(u, v);
        *y = m.mul(m.sub(u, v), z);
    }
}

/// Uses w^{-j} = -w^{k-j} for a 2k-th root w.
#[inline(always)]
fn dit_level(m: &Montgomery, rt: &[u64], lo: &mut [u64], hi: &mut [u64]) {
    let k = lo.len();
    let u = lo[0];
    let v = hi[0];
    lo[0] = m.add(u, v);
    hi[0] = m.sub(u, v);
    for j in 1..k {
        let t = m.mul(hi[j], rt[2 * k - j]);
        let u = lo[j];
        lo[j] = m.sub(u, t);
        hi[j] = m.add(u, t);
    }
}

/// Decimation in frequency: natural order in, bit-reversed order out.
fn forward(m: &Montgomery, rt: &[u64], a: &mut [u64]) {
    let n = a.len();
    if n > LEAF {
        let k = n / 2;
        let (lo, hi) = a.split_at_mut(k);
        dif_level(m, &rt[k..2 * k], lo, hi);
        forward(m, rt, lo);
        forward(m, rt, hi);
        return;
    }
    let mut k = n / 2;
    while k >= 1 {
        let w = &rt[k..2 * k];
        for block in a.chunks_exact_mut(2 * k) {
            let (lo, hi) = block.split_at_mut(k);
            dif_level(m, w, lo, hi);
        }
        k /= 2;
    }
}

/// Decimation in time with inverse roots: bit-reversed in, natural out,
/// without the 1/n factor.
fn inverse(m: &Montgomery, rt: &[u64], a: &mut [u64]) {
    let n = a.len();
    if n > LEAF {
        let k = n / 2;
        let (lo, hi) = a.split_at_mut(k);
        inverse(m, rt, lo);
        inverse(m, rt, hi);
        dit_level(m, rt, lo, hi);
        return;
    }
    let mut k = 1;
    while k < n {
        for block in a.chunks_exact_mut(2 * k) {
            let (lo, hi) = block.split_at_mut(k);
            dit_level(m, rt, lo, hi);
        }
        k *= 2;
    }
}

fn residues(f: &Field, a: &[i64], size: usize) -> Vec<u64> {
    let p = f.m.p;
    let mut out = vec![0u64; size];
    for (o, &v) in out.iter_mut().zip(a) {
        let r = if v >= 0 { v as u64 % p } else { p - 1 - ((-(v + 1)) as u64 % p) };
        *o = f.m.to_mont(r);
    }
    out
}

fn product_mod(f: &Field, blocks: &[&[i64]], size: usize, keep: usize) -> Vec<u64> {
    let m = &f.m;
    let rt = twiddles(f, size);
    let mut acc = residues(f, blocks[0], size);
    forward(m, &rt, &mut acc);
    for b in &blocks[1..] {
        let mut fb = residues(f, b, size);
        forward(m, &rt, &mut fb);
        for (x, y) in acc.iter_mut().zip(&fb) {
            *x = m.mul(*x, *y);
        }
    }
    inverse(m, &rt, &mut acc);
    drop(rt);
    acc.truncate(keep);
    // from_mont(mul(v, n^{-1} R)) folds the scaling into the conversion
    let n_inv = m.pow(m.to_mont(size as u64), m.p - 2);
    for v in acc.iter_mut() {
        *v = m.from_mont(m.mul(*v, n_inv));
    }
    acc
}

/// First `keep` coefficients of the product of all `blocks`, exact as long as
/// every coefficient of the result has magnitude below p1 p2 / 2 (about
/// 6.6e36). Intermediate partial products may be arbitrarily large. Results
/// outside the i64 range are reported as overflow.
pub fn multiply_all(blocks: &[&[i64]], keep: usize) -> Result<Vec<i64>> {
    if blocks.is_empty() {
        let mut one = vec![0; keep];
        if keep > 0 {
            one[0] = 1;
        }
        return Ok(one);
    }
    if keep == 0 || blocks.iter().any(|b| b.is_empty()) {
        return Ok(vec![0; keep]);
    }
    let blocks: Vec<&[i64]> = blocks.iter().map(|b| &b[..b.len().min(keep)]).collect();
    if blocks.len() == 1 {
        let mut out = blocks[0].to_vec();
        out.resize(keep, 0);
        return Ok(out);
    }
    // the cyclic product is clean below index `keep` once size exceeds the
    // largest full-product degree that could wrap onto it
    let degree: usize = blocks.iter().map(|b| b.len() - 1).sum();
    let size = (degree + 1).next_power_of_two();
    if size.trailing_zeros() > MAX_LOG {
        return Err(Error::InvalidArgument(format!("transform of size {size} is too large")));
    }
    let f1 = Field { m: Montgomery::new(P1), root: 3 };
    let f2 = Field { m: Montgomery::new(P2), root: 7 };
    let r1 = product_mod(&f1, &blocks, size, keep);
    let r2 = product_mod(&f2, &blocks, size, keep);

    // x = r1 + p1 * ((r2 - r1) p1^{-1} mod p2), then centre
    let m2 = f2.m;
    let p1_inv = m2.pow(m2.to_mont(P1 % P2), P2 - 2);
    let modulus = P1 as u128 * P2 as u128;
    let half = modulus / 2;
    let mut out = Vec::with_capacity(keep);
    for (i, (&x1, &x2)) in r1.iter().zip(&r2).enumerate() {
        let d = m2.sub(m2.to_mont(x2), m2.to_mont(x1 % P2));
        let k = m2.from_mont(m2.mul(d, p1_inv));
        let x = x1 as u128 + P1 as u128 * k as u128;
        let v: i128 = if x > half { x as i128 - modulus as i128 } else { x as i128 };
        out.push(i64::try_from(v).map_err(|_| Error::CoefficientOverflow(i))?);
    }
    out.resize(keep, 0);
    Ok(out)
}

/// First `keep` coefficients of a * b.
pub fn convolve(a: &[i64], b: &[i64], keep: usize) -> Result<Vec<i64>> {
    multiply_all(&[a, b], keep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(a: &[i64], b: &[i64], keep: usize) -> Vec<i64> {
        let mut c = vec![0i64; keep];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if i + j < keep {
                    c[i + j] += x * y;
                }
            }
        }
        c
    }

    #[test]
    fn matches_schoolbook() {
        let a: Vec<i64> = (0..300).map(|i| ((i * 7919) % 2001) as i64 - 1000).collect();
        let b: Vec<i64> = (0..257).map(|i| ((i * 104729) % 3001) as i64 - 1500).collect();
        assert_eq!(convolve(&a, &b, 400).unwrap(), naive(&a, &b, 400));
        assert_eq!(convolve(&a, &b, 600).unwrap(), naive(&a, &b, 600));
    }

    #[test]
    fn large_values_survive_crt() {
        let big = 3_000_000_000_000i64;
        let a = vec![big, -big, 1];
        let b = vec![big, 7];
        assert_eq!(convolve(&a, &b, 4), Err(Error::CoefficientOverflow(0)));
        let a = vec![1i64 << 40, -(1i64 << 40)];
        let b = vec![1i64 << 20, 3];
        assert_eq!(convolve(&a, &b, 3).unwrap(), naive(&a, &b, 3));
    }

    #[test]
    fn recursive_path_matches_schoolbook() {
        let a: Vec<i64> = (0..LEAF + 37).map(|i| ((i * 31) % 11) as i64 - 5).collect();
        let b: Vec<i64> = (0..LEAF / 2 + 5).map(|i| ((i * 17) % 13) as i64 - 6).collect();
        let got = convolve(&a, &b, 2 * LEAF).unwrap();
        for i in [0usize, 1, 100, LEAF - 1, LEAF, LEAF + 1, 2 * LEAF - 1] {
            let want: i64 = (0..=i).filter(|&j| j < a.len() && i - j < b.len()).map(|j| a[j] * b[i - j]).sum();
            assert_eq!(got[i], want, "index {i}");
        }
    }

    #[test]
    fn three_way_product() {
        let a: Vec<i64> = (0..100).map(|i| (i % 7) as i64 - 3).collect();
        let b: Vec<i64> = (0..90).map(|i| (i % 5) as i64 - 2).collect();
        let c: Vec<i64> = (0..80).map(|i| (i % 3) as i64 - 1).collect();
        let want = naive(&naive(&a, &b, 270), &c, 270);
        assert_eq!(multiply_all(&[&a, &b, &c], 270).unwrap(), want);
        assert_eq!(multiply_all(&[&a, &b, &c], 120).unwrap(), want[..120]);
        assert_eq!(multiply_all(&[], 3).unwrap(), [1, 0, 0]);
    }
}

