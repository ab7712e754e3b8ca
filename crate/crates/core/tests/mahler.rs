use hyperforge::mahler::{
    bessel_i0, bessel_laplace_sides, bseq_sequence, domb_a, domb_sequence, f_series, g_series, mahler_torus_integral,
    seq_b, LaurentPolynomial, MahlerFamily,
};
use hyperforge::{Cx, Error, PrecisionContext};
use num_complex::Complex64;
use proptest::prelude::*;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

fn ctx() -> PrecisionContext {
    PrecisionContext::new(128).unwrap()
}

fn binom(n: u32, k: u32) -> Integer {
    Integer::from(n).binomial(k)
}

fn brute_a(n: u32) -> Integer {
    (0..=n).map(|k| binom(2 * n - 2 * k, n - k) * binom(2 * k, k) * binom(n, k).square()).sum()
}

fn brute_b(n: u32) -> Integer {
    binom(2 * n, n) * (0..=n).map(|k| binom(2 * k, k) * binom(n, k).square()).sum::<Integer>()
}

#[test]
fn sequence_examples() {
    assert_eq!(domb_a(0), 1);
    assert_eq!(domb_a(1), 4);
    assert_eq!(domb_a(2), 28);
    assert_eq!(domb_a(4), 2716);
    assert_eq!(seq_b(0), 1);
    assert_eq!(seq_b(1), 6);
    assert_eq!(seq_b(2), 90);
}

#[test]
fn sequences_match_nested_sums() {
    for n in 0..60 {
        assert_eq!(domb_a(n as usize), brute_a(n), "a_{n}");
        assert_eq!(seq_b(n as usize), brute_b(n), "b_{n}");
    }
}

#[test]
fn radius_consistency() {
    let a = domb_sequence().prefix(300);
    for (n, v) in a.iter().enumerate().skip(1) {
        assert!(*v > 0);
        let root = Float::with_val(64, v).ln() / n as f64;
        assert!(root.exp() <= 17.0, "a_{n}^(1/n) too large");
    }
    assert!(domb_sequence().ratio_bound_holds(300));
    assert!(bseq_sequence().ratio_bound_holds(300));
}

fn raw_f(j: u32, u: u32, c: &PrecisionContext) -> Float {
    // log u - sum c_n / (n u^n) with the constant-term sequences of the defining polynomials
    let coef = |n: u32| -> Integer {
        match j {
            2 => binom(2 * n, n).pow(3),
            3 => binom(2 * n, n) * Integer::from(Integer::factorial(3 * n)) / Integer::from(Integer::factorial(n)).pow(3),
            _ => binom(2 * n, n).square() * binom(4 * n, 2 * n),
        }
    };
    let prec = c.prec();
    let mut s = Float::with_val(prec, u).ln();
    let mut upow = Integer::from(1);
    for n in 1u32.. {
        upow *= u;
        let t = Float::with_val(prec, Rational::from((coef(n), upow.clone() * n)));
        if t < 1e-50 {
            break;
        }
        s -= t;
    }
    s
}

#[test]
fn f_series_against_raw_sums() {
    let c = ctx();
    for (j, u) in [(2u32, 128u32), (3, 200), (3, 500), (4, 1024)] {
        let v = f_series(j, &Cx::from_real(c.float(u)), &c).unwrap();
        let raw = raw_f(j, u, &c);
        let d = Float::with_val(64, &v.value - &raw).abs();
        assert!(d <= Float::with_val(64, &v.err * 10u32) + 1e-45, "f{j}({u}): {d}");
    }
}

#[test]
fn leading_log_behavior() {
    let c = ctx();
    let big = c.float(1e12);
    let f = f_series(2, &Cx::from_real(big.clone()), &c).unwrap();
    let g = g_series(2, &Cx::from_real(big.clone()), &c).unwrap();
    let l = big.ln();
    assert!(Float::with_val(64, &f.value - &l).abs() < 1e-10);
    assert!(Float::with_val(64, &g.value - &l).abs() < 1e-10);
}

#[test]
fn series_domain_guards() {
    let c = ctx();
    assert!(matches!(g_series(1, &Cx::from_real(c.float(5)), &c), Err(Error::Domain(_))));
    assert!(matches!(g_series(2, &Cx::from_real(c.float(16)), &c), Err(Error::Domain(_))));
    assert!(matches!(f_series(2, &Cx::from_real(c.float(50)), &c), Err(Error::Domain(_))));
    assert!(matches!(f_series(4, &Cx::from_real(c.float(-200)), &c), Err(Error::Domain(_))));
}

#[test]
fn quadrature_matches_series_for_all_families() {
    let c = ctx();
    let cases = [
        (MahlerFamily::G1, 8.0),
        (MahlerFamily::G2, 32.0),
        (MahlerFamily::F2, 128.0),
        (MahlerFamily::F3, 216.0),
        (MahlerFamily::F4, 512.0),
    ];
    for (fam, u) in cases {
        let (p, k) = fam.polynomial(u);
        let quad = mahler_torus_integral(&p, 64, &c).unwrap().value.to_f64() * k;
        let uu = Cx::from_real(c.float(u));
        let series = match fam {
            MahlerFamily::G1 => g_series(1, &uu, &c),
            MahlerFamily::G2 => g_series(2, &uu, &c),
            MahlerFamily::F2 => f_series(2, &uu, &c),
            MahlerFamily::F3 => f_series(3, &uu, &c),
            MahlerFamily::F4 => f_series(4, &uu, &c),
        }
        .unwrap()
        .value
        .to_f64();
        assert!((quad - series).abs() < 1e-6, "{fam:?}({u}): {quad} vs {series}");
    }
}

#[test]
fn torus_trivial_cases() {
    let c = ctx();
    let mono = LaurentPolynomial::new(2, [(vec![1, -2], Complex64::new(-3.0, 4.0))]).unwrap();
    assert!((mahler_torus_integral(&mono, 8, &c).unwrap().value.to_f64() - 5f64.ln()).abs() < 1e-14);
    let two_x = LaurentPolynomial::new(1, [(vec![0], Complex64::new(2.0, 0.0)), (vec![1], Complex64::new(1.0, 0.0))]).unwrap();
    assert!((mahler_torus_integral(&two_x, 64, &c).unwrap().value.to_f64() - 2f64.ln()).abs() < 1e-12);
    let (p, _) = MahlerFamily::G1.polynomial(6.0);
    assert!(matches!(mahler_torus_integral(&p, 64, &c), Err(Error::NearZeroOnTorus { .. })));
}

#[test]
fn bessel_series_examples() {
    let c = ctx();
    assert_eq!(bessel_i0(&c.float(0), &c).unwrap().value, 1);
    let v = bessel_i0(&c.float(1), &c).unwrap();
    let mut s = Float::new(c.prec());
    let mut t = Float::with_val(c.prec(), 1);
    for n in 0..30u32 {
        if n > 0 {
            t /= n * n;
        }
        s += &t;
    }
    assert!(Float::with_val(64, &v.value - &s).abs() <= Float::with_val(64, &v.err) + 1e-60);
}

#[test]
fn bessel_square_coefficients() {
    // Cauchy product of sum u^{2n}/n!^2 with itself
    let fact = |n: u32| Integer::from(Integer::factorial(n));
    for n in 0..25u32 {
        let conv: Rational = (0..=n).map(|k| Rational::from((1, (fact(k) * fact(n - k)).square()))).sum();
        assert_eq!(conv, Rational::from((binom(2 * n, n), fact(n).square())));
    }
}

#[test]
fn laplace_identity() {
    let c = ctx();
    let (l, r) = bessel_laplace_sides(&(c.float(1) / 10.0), &c).unwrap();
    assert!(Float::with_val(64, &l.value - &r.value).abs() < 1e-10);
    let x = c.float(1e-3);
    let (l, _) = bessel_laplace_sides(&x, &c).unwrap();
    let slope = Float::with_val(64, &l.value / &x);
    assert!((slope.to_f64() - 1.0 / 3.0).abs() < 1e-4);
    for bad in [0.5, 1.0 / 3.0, 0.0] {
        assert!(matches!(bessel_laplace_sides(&c.float(bad), &c), Err(Error::Domain(_))), "{bad}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn g2_series_refines(u in 17i64..400) {
        let lo = PrecisionContext::new(96).unwrap();
        let hi = PrecisionContext::new(160).unwrap();
        let a = g_series(2, &Cx::from_real(lo.float(u)), &lo).unwrap();
        let b = g_series(2, &Cx::from_real(hi.float(u)), &hi).unwrap();
        prop_assert!(Float::with_val(64, &a.value - &b.value).abs() <= a.err);
    }
}
