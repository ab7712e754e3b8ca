use hyperforge::lseries::{
    build_cache, eta_coeffs, lvalue_direct, lvalue_direct_heuristic, lvalue_smoothed, named_coeffs, read_cache,
    verify_cache, write_cache, CoefficientSeries, NamedForm,
};
use hyperforge::precision::rat;
use hyperforge::qseries::EtaQuotientSpec;
use hyperforge::{Error, PrecisionContext};
use proptest::prelude::*;
use rug::Float;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(128).unwrap()
}

fn primes(limit: usize) -> Vec<usize> {
    (2..limit).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

/// Representation p = a^2 + k b^2 with a, b > 0.
fn rep(p: usize, k: usize) -> Option<(i64, i64)> {
    (1..).take_while(|b| k * b * b < p).find_map(|b| {
        let r = p - k * b * b;
        let a = (r as f64).sqrt().round() as usize;
        (a * a == r).then_some((a as i64, b as i64))
    })
}

/// Naive product of (1 - q^{dk})^{e} over k, then shifted by q.
fn naive(factors: &[(usize, i64)], n: usize) -> Vec<i64> {
    let mut c = vec![0i64; n + 1];
    c[0] = 1;
    for &(d, e) in factors {
        for _ in 0..e {
            for k in (d..=n).step_by(d) {
                for i in (k..=n).rev() {
                    c[i] -= c[i - k];
                }
            }
        }
    }
    let mut out = vec![0i64; n + 1];
    out[1..].copy_from_slice(&c[..n]);
    out
}

#[test]
fn first_coefficients_against_naive_products() {
    let g = named_coeffs(NamedForm::G, 50, None).unwrap();
    assert_eq!(g.coeffs, naive(&[(2, 3), (6, 3)], 50));
    assert_eq!(&g.coeffs[..11], [0, 1, 0, -3, 0, 0, 0, 2, 0, 9, 0]);
    let f = named_coeffs(NamedForm::F, 50, None).unwrap();
    assert_eq!(f.coeffs, naive(&[(1, 2), (2, 1), (4, 1), (8, 2)], 50));
    assert_eq!(f.get(1), 1);
    let f15 = named_coeffs(NamedForm::F15, 50, None).unwrap();
    assert_eq!(f15.coeffs, naive(&[(1, 1), (3, 1), (5, 1), (15, 1)], 50));
    assert!(g.is_cusp && f.is_cusp && f15.is_cusp);
    assert_eq!((g.weight, f.weight, f15.weight), (3, 3, 2));
}

#[test]
fn trivial_spec_is_one() {
    let one = eta_coeffs(&EtaQuotientSpec::new([], rat(0, 1)).unwrap(), 8).unwrap();
    assert_eq!(one.coeffs, [1, 0, 0, 0, 0, 0, 0, 0, 0]);
}

#[test]
fn truncation_is_prefix_stable() {
    for form in NamedForm::ALL {
        let a = named_coeffs(form, 20_000, None).unwrap();
        let b = named_coeffs(form, 40_000, None).unwrap();
        assert_eq!(a.coeffs[..], b.coeffs[..=20_000], "{form:?}");
    }
}

#[test]
fn deligne_bound_holds() {
    for form in NamedForm::ALL {
        named_coeffs(form, 100_000, None).unwrap().deligne_audit().unwrap();
    }
    let bad = CoefficientSeries::from_coeffs(vec![0, 1, 9], NamedForm::G.spec());
    assert!(matches!(bad.deligne_audit(), Err(Error::DeligneViolation { n: 2, .. })));
}

#[test]
fn g_coefficients_are_hecke_characters_of_q_sqrt_minus_3() {
    let g = named_coeffs(NamedForm::G, 3000, None).unwrap();
    for p in primes(3000) {
        let want = match p {
            2 => 0,
            3 => -3,
            _ if p % 3 == 2 => 0,
            _ => {
                let (a, b) = rep(p, 3).unwrap();
                2 * (a * a - 3 * b * b)
            }
        };
        assert_eq!(g.get(p), want, "a_{p}");
    }
}

#[test]
fn f_coefficients_are_hecke_characters_of_q_sqrt_minus_2() {
    let f = named_coeffs(NamedForm::F, 3000, None).unwrap();
    for p in primes(3000) {
        let want = match p {
            2 => -2,
            _ if p % 8 == 1 || p % 8 == 3 => {
                let (a, b) = rep(p, 2).unwrap();
                2 * (a * a - 2 * b * b)
            }
            _ => 0,
        };
        assert_eq!(f.get(p), want, "a_{p}");
    }
}

#[test]
fn f15_coefficients_count_points() {
    // y^2 + xy + y = x^3 + x^2
    let f15 = named_coeffs(NamedForm::F15, 3000, None).unwrap();
    for p in primes(3000) {
        if p == 3 || p == 5 {
            continue;
        }
        let p64 = p as i64;
        let mut count = 1i64;
        for x in 0..p64 {
            for y in 0..p64 {
                if (y * y + x * y + y - x * x % p64 * x - x * x).rem_euclid(p64) == 0 {
                    count += 1;
                }
            }
        }
        assert_eq!(f15.get(p), p64 + 1 - count, "a_{p}");
    }
}

#[test]
fn direct_and_smoothed_agree() {
    let c = ctx();
    for form in NamedForm::ALL {
        let cs = named_coeffs(form, 200_000, None).unwrap();
        let s = form.weight() as i64;
        let d = lvalue_direct_heuristic(&cs, s, &c).unwrap();
        let sm = lvalue_smoothed(&cs, s, form.level(), form.weight(), form.sign(), &c).unwrap();
        let diff = Float::with_val(64, &d.value - &sm.value).abs();
        assert!(diff < 1e-6, "{form:?}: {diff}");
        if form.weight() == 3 {
            let r = lvalue_direct(&cs, 3, &c).unwrap();
            assert!(Float::with_val(64, &r.value - &sm.value).abs() <= r.err);
        }
    }
}

#[test]
fn wrong_root_number_is_rejected() {
    let c = ctx();
    for form in NamedForm::ALL {
        let cs = named_coeffs(form, 2000, None).unwrap();
        let r = lvalue_smoothed(&cs, form.weight() as i64, form.level(), form.weight(), -1, &c);
        assert!(matches!(r, Err(Error::InconsistentFunctionalEquation { .. })), "{form:?}");
    }
}

#[test]
fn lvalue_edge_cases() {
    let c = ctx();
    let zero = CoefficientSeries::from_coeffs(vec![0; 500], NamedForm::F.spec());
    assert!(lvalue_direct(&zero, 3, &c).unwrap().value.is_zero());
    let f15 = named_coeffs(NamedForm::F15, 500, None).unwrap();
    assert!(matches!(lvalue_direct(&f15, 1, &c), Err(Error::Diverges { .. })));
    let few = named_coeffs(NamedForm::G, 10, None).unwrap();
    assert!(matches!(lvalue_smoothed(&few, 3, 12, 3, 1, &c), Err(Error::InsufficientCoefficients { .. })));
}

#[test]
fn cache_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let path = build_cache(NamedForm::G, 5000, dir.path()).unwrap();
    assert_eq!(verify_cache(NamedForm::G, dir.path()).unwrap(), 5000);
    let stored = read_cache(&path).unwrap();
    assert_eq!(stored[..], named_coeffs(NamedForm::G, 5000, None).unwrap().coeffs[1..]);

    let mut bytes = std::fs::read(&path).unwrap();
    let last = bytes.len() - 1;
    bytes[last] ^= 1;
    std::fs::write(&path, &bytes).unwrap();
    assert!(read_cache(&path).is_ok());
    let e = verify_cache(NamedForm::G, dir.path()).unwrap_err();
    assert!(e.to_string().contains("a_5000"), "{e}");

    let other = dir.path().join("x.etacoef");
    write_cache(&other, &[1, -2, 3]).unwrap();
    assert_eq!(read_cache(&other).unwrap(), [1, -2, 3]);
    std::fs::write(&other, b"junk").unwrap();
    assert!(matches!(read_cache(&other), Err(Error::Cache(_))));
}

#[test]
fn cache_directory_is_used() {
    let dir = tempfile::tempdir().unwrap();
    build_cache(NamedForm::F15, 3000, dir.path()).unwrap();
    let via_cache = named_coeffs(NamedForm::F15, 2999, Some(dir.path())).unwrap();
    assert_eq!(via_cache.coeffs[..], named_coeffs(NamedForm::F15, 3000, None).unwrap().coeffs[..3000]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn eta_coeffs_match_naive(e1 in 0i64..4, e2 in 0i64..4, e3 in 0i64..3, n in 10usize..400) {
        let factors = [(1usize, e1), (2, e2), (3, e3)];
        let spec = EtaQuotientSpec::new(factors.iter().map(|&(d, e)| (d as u32, e)), rat(1, 1)).unwrap();
        prop_assert_eq!(eta_coeffs(&spec, n).unwrap().coeffs, naive(&factors, n));
    }

    #[test]
    fn multiplicativity_of_g(m in 1usize..60, k in 1usize..60) {
        let g = named_coeffs(NamedForm::G, 3600, None).unwrap();
        let gcd = (1..=m.min(k)).rev().find(|d| m % d == 0 && k % d == 0).unwrap();
        if gcd == 1 {
            prop_assert_eq!(g.get(m * k), g.get(m) * g.get(k));
        }
    }
}
