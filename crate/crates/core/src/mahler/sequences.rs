use std::sync::{OnceLock, RwLock};

use rug::ops::Pow;
use rug::Integer;
use serde::Serialize;

use crate::precision::binomial;

/// Which binomial-sum sequence a cache holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceKind {
    /// a_n = sum_k C(2n-2k, n-k) C(2k, k) C(n, k)^2 (Domb numbers).
    DombA,
    /// b_n = C(2n, n) sum_k C(2k, k) C(n, k)^2.
    BSeq,
}

impl SequenceKind {
    /// lim a_{n+1}/a_n; also an upper bound for every ratio on the audited range.
    pub fn ratio_limit(self) -> u32 {
        match self {
            SequenceKind::DombA => 16,
            SequenceKind::BSeq => 36,
        }
    }
}

#[derive(Debug, Default)]
struct Store {
    values: Vec<Integer>,
    // c_n = sum_k C(2k,k) C(n,k)^2 for BSeq; unused for DombA
    inner: Vec<Integer>,
    // index up to which a_{n+1} <= limit * a_n has been confirmed
    ratio_ok_until: usize,
    ratio_broken: bool,
}

/// Append-only, thread-safe cache of a binomial-sum sequence.
#[derive(Debug)]
pub struct BinomialSumSequence {
    kind: SequenceKind,
    store: RwLock<Store>,
}

impl BinomialSumSequence {
    pub fn new(kind: SequenceKind) -> Self {
        Self { kind, store: RwLock::new(Store::default()) }
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn get(&self, n: usize) -> Integer {
        self.ensure(n + 1);
        self.store.read().expect("sequence lock").values[n].clone()
    }

    /// Terms 0..len.
    pub fn prefix(&self, len: usize) -> Vec<Integer> {
        self.ensure(len);
        self.store.read().expect("sequence lock").values[..len].to_vec()
    }

    /// Whether every ratio among the first `len` terms stays below the limit.
    pub fn ratio_bound_holds(&self, len: usize) -> bool {
        self.ensure(len);
        let s = self.store.read().expect("sequence lock");
        !s.ratio_broken || s.ratio_ok_until + 1 >= len
    }

    fn ensure(&self, len: usize) {
        if self.store.read().expect("sequence lock").values.len() >= len {
            return;
        }
        let mut s = self.store.write().expect("sequence lock");
        let limit = self.kind.ratio_limit();
        while s.values.len() < len {
            let n = s.values.len();
            let next = match self.kind {
                SequenceKind::DombA => domb_step(&s.values, n),
                SequenceKind::BSeq => {
                    let c = c_step(&s.inner, n);
                    s.inner.push(c.clone());
                    binomial(2 * n as u64, n as i64) * c
                }
            };
            if n > 0 && !s.ratio_broken {
                if next <= Integer::from(&s.values[n - 1] * limit) {
                    s.ratio_ok_until = n;
                } else {
                    s.ratio_broken = true;
                }
            }
            s.values.push(next);
        }
    }
}

// n^3 a_n = 2(2n-1)(5n^2-5n+2) a_{n-1} - 64(n-1)^3 a_{n-2}
fn domb_step(a: &[Integer], n: usize) -> Integer {
    match n {
        0 => Integer::from(1),
        1 => Integer::from(4),
        _ => {
            let m = Integer::from(n);
            let p = Integer::from(2 * (2 * n - 1)) * Integer::from(5 * n * n - 5 * n + 2);
            let q = Integer::from(n - 1).pow(3) * 64u32;
            let num = p * &a[n - 1] - q * &a[n - 2];
            let den = m.pow(3);
            debug_assert!(num.is_divisible(&den));
            num.div_exact(&den)
        }
    }
}

// n^2 c_n = (10n^2 - 10n + 3) c_{n-1} - 9(n-1)^2 c_{n-2}
fn c_step(c: &[Integer], n: usize) -> Integer {
    match n {
        0 => Integer::from(1),
        1 => Integer::from(3),
        _ => {
            let p = Integer::from(10 * n * n - 10 * n + 3);
            let q = Integer::from(9 * (n - 1) * (n - 1));
            let num = p * &c[n - 1] - q * &c[n - 2];
            num.div_exact(&Integer::from(n * n))
        }
    }
}

static DOMB: OnceLock<BinomialSumSequence> = OnceLock::new();
static BSEQ: OnceLock<BinomialSumSequence> = OnceLock::new();

/// Process-wide cache for the Domb numbers.
pub fn domb_sequence() -> &'static BinomialSumSequence {
    DOMB.get_or_init(|| BinomialSumSequence::new(SequenceKind::DombA))
}

/// Process-wide cache for b_n.
pub fn bseq_sequence() -> &'static BinomialSumSequence {
    BSEQ.get_or_init(|| BinomialSumSequence::new(SequenceKind::BSeq))
}

pub fn domb_a(n: usize) -> Integer {
    domb_sequence().get(n)
}

pub fn seq_b(n: usize) -> Integer {
    bseq_sequence().get(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_terms() {
        let a: Vec<i64> = domb_sequence().prefix(6).iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(a, [1, 4, 28, 256, 2716, 31504]);
        assert_eq!(seq_b(1), 6);
        assert_eq!(seq_b(2), 90);
    }

    #[test]
    fn ratios_stay_below_limits() {
        assert!(domb_sequence().ratio_bound_holds(400));
        assert!(bseq_sequence().ratio_bound_holds(400));
    }
}
