use hyperforge::hypergeometric::{pfq_complex, pfq_real, pfq_unit, pfq_unit_with, UNIT_BASE_TERMS, UNIT_MAX_LEVELS};
use hyperforge::precision::{rat, ExactRational};
use hyperforge::{Cx, Error, PrecisionContext};
use proptest::prelude::*;
use rug::Float;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(128).unwrap()
}

fn r(v: &[(i64, i64)]) -> Vec<ExactRational> {
    v.iter().map(|&(n, d)| rat(n, d)).collect()
}

fn close(a: &Float, b: &Float, tol: &Float) -> bool {
    Float::with_val(a.prec(), a - b).abs() <= *tol
}

#[test]
fn zero_argument_gives_one() {
    let c = ctx();
    let v = pfq_real(&r(&[(1, 3), (5, 7)]), &r(&[(3, 2)]), &c.float(0), &c).unwrap();
    assert_eq!(v.value, 1);
}

#[test]
fn log_closed_form() {
    let c = ctx();
    let v = pfq_real(&r(&[(1, 1), (1, 1)]), &r(&[(2, 1)]), &c.float(0.5), &c).unwrap();
    let want = Float::with_val(c.prec(), c.ln2() * 2u32);
    assert!(close(&v.value, &want, &v.err));
    assert_eq!(v.rigor, hyperforge::Rigor::Rigorous);
}

#[test]
fn clausen_at_three_quarters() {
    let c = ctx();
    let lhs = pfq_real(&r(&[(1, 3), (1, 2), (2, 3)]), &r(&[(1, 1), (1, 1)]), &c.float(0.75), &c).unwrap();
    let f = pfq_real(&r(&[(1, 3), (2, 3)]), &r(&[(1, 1)]), &c.float(0.25), &c).unwrap();
    let rhs = f.powi(2);
    let tol = Float::with_val(64, &lhs.err + &rhs.err) * 10u32;
    assert!(close(&lhs.value, &rhs.value, &tol));
}

#[test]
fn unit_domain_guard() {
    let c = ctx();
    // gap 1/2 - 1 < 0: diverges at 1
    assert!(matches!(pfq_unit(&r(&[(1, 1), (1, 2)]), &r(&[(1, 1)]), &c), Err(Error::Domain(_))));
    assert!(matches!(
        pfq_real(&r(&[(1, 2), (1, 2)]), &r(&[(1, 1)]), &c.float(1.5), &c),
        Err(Error::Domain(_))
    ));
}

#[test]
fn unit_value_agrees_with_gauss() {
    // 2F1(1/2,1/2;2;1) = Gamma(2)Gamma(1)/Gamma(3/2)^2 = 4/pi
    let c = ctx();
    let v = pfq_unit(&r(&[(1, 2), (1, 2)]), &r(&[(2, 1)]), &c).unwrap();
    let want = Float::with_val(c.prec(), 4u32 / c.pi());
    assert!(close(&v.value, &want, &Float::with_val(64, 1e-12)));
    assert!(close(&v.value, &want, &Float::with_val(64, &v.err * 10u32)));
}

#[test]
fn unit_value_stable_under_doubling() {
    let c = ctx();
    for up in [[(4, 3), (3, 2), (5, 3), (1, 1), (1, 1)], [(5, 4), (3, 2), (7, 4), (1, 1), (1, 1)]] {
        let low = r(&[(2, 1), (2, 1), (2, 1), (2, 1)]);
        let a = pfq_unit_with(&r(&up), &low, UNIT_BASE_TERMS, UNIT_MAX_LEVELS, &c).unwrap();
        let b = pfq_unit_with(&r(&up), &low, 2 * UNIT_BASE_TERMS, UNIT_MAX_LEVELS, &c).unwrap();
        assert!(close(&a.value, &b.value, &a.err.clone().max(&b.err)), "{up:?}");
        assert!(a.err < 1e-12);
    }
}

#[test]
fn complex_argument_conjugate_symmetry() {
    let c = ctx();
    let x = Cx::new(c.float(0.2), c.float(0.3));
    let a = pfq_complex(&r(&[(1, 4), (3, 4)]), &r(&[(1, 1)]), &x, &c).unwrap();
    let b = pfq_complex(&r(&[(1, 4), (3, 4)]), &r(&[(1, 1)]), &x.conj(), &c).unwrap();
    assert!(close(&a.value.re, &b.value.re, &a.err));
    assert!(close(&a.value.im, &Float::with_val(c.prec(), -&b.value.im), &a.err));
}

proptest! {
    #[test]
    fn contiguity_collapse(a in 1i64..30, b in 1i64..30, c0 in 1i64..30, x in -45i64..45) {
        let c = ctx();
        let x = c.float(x) / 100u32;
        let shared = rat(c0, 7);
        let full = pfq_real(&[rat(a, 5), rat(b, 3), shared.clone()], &[rat(c0 + 3, 4), shared], &x, &c).unwrap();
        let small = pfq_real(&[rat(a, 5), rat(b, 3)], &[rat(c0 + 3, 4)], &x, &c).unwrap();
        let tol = Float::with_val(64, &full.err + &small.err) * 10u32;
        prop_assert!(close(&full.value, &small.value, &tol));
    }

    #[test]
    fn clausen_squaring(k in 1i64..50, quartic in any::<bool>()) {
        let c = ctx();
        let x = rat(k, 100);
        let arg = Float::with_val(c.prec(), rug::Rational::from(x.inner() * 4u32) * (1 - x.inner().clone()));
        let (up3, up2) = if quartic { ([(1, 4), (1, 2), (3, 4)], [(1, 4), (3, 4)]) } else { ([(1, 3), (1, 2), (2, 3)], [(1, 3), (2, 3)]) };
        let lhs = pfq_real(&r(&up3), &r(&[(1, 1), (1, 1)]), &arg, &c).unwrap();
        let f = pfq_real(&r(&up2), &r(&[(1, 1)]), &x.to_float(c.prec()), &c).unwrap().powi(2);
        let tol = Float::with_val(64, &lhs.err + &f.err) * 10u32;
        prop_assert!(close(&lhs.value, &f.value, &tol));
    }

    #[test]
    fn refinement_within_reported_err(num in -40i64..40) {
        let lo = PrecisionContext::new(128).unwrap();
        let hi = PrecisionContext::new(192).unwrap();
        let up = r(&[(1, 3), (1, 2), (2, 3)]);
        let low = r(&[(1, 1), (1, 1)]);
        let a = pfq_real(&up, &low, &(lo.float(num) / 50u32), &lo).unwrap();
        let b = pfq_real(&up, &low, &(hi.float(num) / 50u32), &hi).unwrap();
        prop_assert!(close(&a.value, &b.value, &a.err));
    }
}
