use rug::{Complete, Integer, Rational};

use super::rational::ExactRational;

/// C(n, k), zero outside 0 <= k <= n.
pub fn binomial(n: u64, k: i64) -> Integer {
    if k < 0 || k as u64 > n {
        return Integer::new();
    }
    Integer::binomial_u(n as u32, k as u32).complete()
}

/// Rising factorial a(a+1)...(a+n-1).
pub fn pochhammer(a: &ExactRational, n: u64) -> ExactRational {
    let mut acc = Rational::from(1);
    let mut x = a.inner().clone();
    for _ in 0..n {
        acc *= &x;
        if acc.cmp0() == std::cmp::Ordering::Equal {
            break;
        }
        x += 1;
    }
    acc.into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::rational::rat;

    #[test]
    fn binomial_cases() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(7, 9), 0);
        assert_eq!(binomial(7, -1), 0);
        assert_eq!(binomial(60, 30), Integer::from(118264581564861424u64));
    }

    #[test]
    fn pochhammer_cases() {
        assert_eq!(pochhammer(&rat(1, 2), 3), rat(15, 8));
        assert_eq!(pochhammer(&rat(5, 7), 0), rat(1, 1));
        assert_eq!(pochhammer(&rat(1, 1), 6), rat(720, 1));
        assert_eq!(pochhammer(&rat(-2, 1), 5), rat(0, 1));
    }
}
