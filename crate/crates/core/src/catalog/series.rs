//! Weighted power series sum_n w(n) c_n x^n over the integer sequences that
//! appear in the catalog, with geometric tail majorants.

use rug::ops::Pow;
use rug::{Float, Integer};

use crate::error::Result;
use crate::mahler::{bseq_sequence, domb_sequence, BinomialSumSequence};
use crate::precision::summation::{geometric_tail, sum_counted, NoTail, Summed};
use crate::precision::value::err_float;
use crate::precision::{binomial, AppValue, PrecisionContext};

/// Integer (or rational) coefficient sequences c_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coeffs {
    /// Domb numbers a_n.
    Domb,
    /// b_n = C(2n,n) sum_k C(2k,k) C(n,k)^2.
    BSeq,
    /// (1/4)_n (1/2)_n (3/4)_n / n!^3.
    Quartic,
    /// sum_k C(n,k)^4.
    Binomial4,
    /// (6n)! / ((3n)! n!^3).
    Sextic,
}

impl Coeffs {
    /// Bound on c_{n+1}/c_n; audited on the computed range for the recursive
    /// sequences, exact for the hypergeometric ones.
    fn ratio_bound(self) -> u32 {
        match self {
            Coeffs::Domb => 16,
            Coeffs::BSeq => 36,
            Coeffs::Quartic => 1,
            Coeffs::Binomial4 => 16,
            Coeffs::Sextic => 1728,
        }
    }

    fn sequence(self) -> Option<&'static BinomialSumSequence> {
        match self {
            Coeffs::Domb => Some(domb_sequence()),
            Coeffs::BSeq => Some(bseq_sequence()),
            _ => None,
        }
    }
}

/// Weight w(n) multiplying c_n x^n.
#[derive(Debug, Clone)]
pub enum Weight {
    One,
    /// A n + B with A >= 0 and B > 0.
    Linear(Float, Float),
    /// 1/n, for sums starting at n = 1.
    InvN,
}

impl Weight {
    fn at(&self, n: u64, prec: u32) -> Float {
        match self {
            Weight::One => Float::with_val(prec, 1),
            Weight::Linear(a, b) => Float::with_val(prec, a * n) + b,
            Weight::InvN => Float::with_val(prec, n).recip(),
        }
    }

    /// sup over m >= n of w(m+1)/w(m).
    fn ratio_sup(&self, n: u64) -> Float {
        match self {
            Weight::One | Weight::InvN => err_float(1),
            Weight::Linear(a, b) => {
                let lo = err_float(a * n) + b;
                let hi = err_float(a * (n + 1)) + b;
                let mut r = hi / lo;
                r.next_up();
                r
            }
        }
    }
}

/// Generates c_start, c_{start+1}, ... as exact integers or rationals.
struct CoeffStream {
    kind: Coeffs,
    n: u64,
    state: Integer,
    quartic: rug::Rational,
    audited_until: u64,
    broken: bool,
}

impl CoeffStream {
    fn new(kind: Coeffs, start: u64) -> Self {
        let mut s = Self {
            kind,
            n: 0,
            state: Integer::from(1),
            quartic: rug::Rational::from(1),
            audited_until: 0,
            broken: false,
        };
        for _ in 0..start {
            s.advance();
        }
        s
    }

    fn current(&self, prec: u32) -> Float {
        match self.kind {
            Coeffs::Domb | Coeffs::BSeq => Float::with_val(prec, &self.kind.sequence().expect("sequence").get(self.n as usize)),
            Coeffs::Quartic => Float::with_val(prec, &self.quartic),
            Coeffs::Binomial4 => Float::with_val(prec, binomial4(self.n)),
            Coeffs::Sextic => Float::with_val(prec, &self.state),
        }
    }

    fn advance(&mut self) {
        let n = self.n;
        match self.kind {
            Coeffs::Quartic => {
                let r = rug::Rational::from(((4 * n + 1) * (2 * n + 1) * (4 * n + 3), 32 * (n + 1).pow(3)));
                self.quartic *= r;
            }
            Coeffs::Sextic => {
                let mut num = Integer::from(1);
                for k in 1..=6 {
                    num *= 6 * n + k;
                }
                let den = Integer::from((3 * n + 1) * (3 * n + 2) * (3 * n + 3)) * Integer::from(n + 1).pow(3);
                self.state = Integer::from(&self.state * &num).div_exact(&den);
            }
            _ => {}
        }
        self.n += 1;
    }

    /// Whether c_{m+1} <= R c_m has been confirmed for all m below `upto`.
    fn audit(&mut self, upto: u64) -> bool {
        if self.broken {
            return false;
        }
        if upto <= self.audited_until {
            return true;
        }
        let ok = match self.kind {
            Coeffs::Domb | Coeffs::BSeq => self.kind.sequence().expect("sequence").ratio_bound_holds(upto as usize + 1),
            Coeffs::Binomial4 => {
                let mut prev = binomial4(self.audited_until);
                (self.audited_until..upto).all(|m| {
                    let next = binomial4(m + 1);
                    let ok = next <= Integer::from(&prev * 16u32);
                    prev = next;
                    ok
                })
            }
            // exact ratios: Quartic below 1, Sextic increasing to 1728
            Coeffs::Quartic | Coeffs::Sextic => true,
        };
        if ok {
            self.audited_until = upto;
        } else {
            self.broken = true;
        }
        ok
    }
}

fn binomial4(n: u64) -> Integer {
    (0..=n as i64).map(|k| binomial(n, k).pow(4)).sum()
}

/// sum_{n >= start} w(n) c_n x^n.
pub fn weighted_sum(
    coeffs: Coeffs,
    weight: &Weight,
    x: &Float,
    start: u64,
    ctx: &PrecisionContext,
) -> Result<Summed<Float>> {
    let prec = ctx.prec();
    let stream = std::cell::RefCell::new(CoeffStream::new(coeffs, start));
    let mut xn = Float::with_val(prec, x).pow(start as u32);
    let ax = err_float(x.clone().abs());
    let term = |i: u64| {
        let n = start + i;
        let mut s = stream.borrow_mut();
        let c = s.current(prec);
        s.advance();
        let t = Float::with_val(prec, &c * &xn) * weight.at(n, prec);
        xn *= x;
        t
    };
    let tail = |i: u64, abs_t: &Float| {
        let n = start + i;
        if !stream.borrow_mut().audit(2 * n + 16) {
            return None;
        }
        let rho = err_float(&ax * coeffs.ratio_bound()) * weight.ratio_sup(n);
        geometric_tail(abs_t, &rho)
    };
    let rho0 = err_float(&ax * coeffs.ratio_bound());
    if rho0 < 1 {
        sum_counted(term, Some(tail), ctx)
    } else {
        sum_counted(term, None::<NoTail>, ctx)
    }
}

/// The first `terms` terms of the same series, with only a rounding radius.
pub fn weighted_partial(
    coeffs: Coeffs,
    weight: &Weight,
    x: &Float,
    start: u64,
    terms: u64,
    ctx: &PrecisionContext,
) -> AppValue<Float> {
    let prec = ctx.prec();
    let mut stream = CoeffStream::new(coeffs, start);
    let mut xn = Float::with_val(prec, x).pow(start as u32);
    let mut s = Float::new(prec);
    let mut abs = err_float(0);
    for i in 0..terms {
        let c = stream.current(prec);
        stream.advance();
        let t = Float::with_val(prec, &c * &xn) * weight.at(start + i, prec);
        abs += err_float(t.clone().abs());
        s += &t;
        xn *= x;
    }
    let err = (abs * (8 * (terms + 1))) >> prec;
    AppValue::new(s, err, crate::precision::Rigor::Heuristic)
}
