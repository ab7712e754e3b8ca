// rug arithmetic yields incomplete values; the conversions are not redundant
#![allow(clippy::useless_conversion)]

use std::sync::OnceLock;

use rug::ops::Pow;
use rug::{Float, Rational};

use super::series::{weighted_partial, weighted_sum, Coeffs, Weight};
use super::{Env, Expect, IdentityCheck, Point, Sides, Tolerance};
use crate::error::{Error, Result};
use crate::hypergeometric::{pfq_real, pfq_unit};
use crate::lseries::{lvalue_direct, lvalue_direct_heuristic, named_coeffs, NamedForm};
use crate::mahler::{bessel_laplace_sides, boyd_mahler_measure, f_lower, f_parameters, f_series, g_series};
use crate::precision::value::err_float;
use crate::precision::{rat, AppValue, Cx, ExactRational, PrecisionContext};
use crate::qseries::{eisenstein_g, nome, s_func, t_func, Branch, QPoint};

const TIGHT: Tolerance = Tolerance { abs: 1e-30, rel: 1e-30 };

// ---------------------------------------------------------------- helpers

fn param(p: &Point, name: &str) -> Result<Rational> {
    p.iter()
        .find(|(k, _)| k == name)
        .map(|(_, v)| v.inner().clone())
        .ok_or_else(|| Error::InvalidArgument(format!("missing parameter `{name}`")))
}

fn fl(env: &Env, r: &Rational) -> Float {
    Float::with_val(env.ctx.prec(), r)
}

fn exact(env: &Env, r: &Rational) -> AppValue<Float> {
    let v = fl(env, r);
    let e = err_float(v.clone().abs()) >> (env.ctx.prec() - 1);
    AppValue::new(v, e, crate::precision::Rigor::Rigorous)
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn points(name: &str, vals: &[(i64, i64)]) -> Vec<Point> {
    vals.iter().map(|&(n, d)| vec![(name.to_string(), rat(n, d))]).collect()
}

/// sum c_i * v_i with exact rational weights.
fn lin(env: &Env, terms: &[(Rational, &AppValue<Float>)]) -> AppValue<Float> {
    let mut acc = AppValue::exact(Float::new(env.ctx.prec()));
    for (c, v) in terms {
        acc = acc.add(&v.scale(&fl(env, c)));
    }
    acc
}

fn qpoint(env: &Env, r: &Rational) -> Result<QPoint> {
    QPoint::real(fl(env, r))
}

fn big_g(q: &QPoint, env: &Env) -> Result<AppValue<Float>> {
    eisenstein_g(q, &env.ctx)
}

/// Uncertainty in an argument u moves f_j(u), g_j(u) by about |du|/|u|.
fn arg_err(u: &AppValue<Cx>) -> Float {
    let m = err_float(u.value.abs());
    err_float(&u.err * 2u32) / m
}

fn f_at(j: u32, u: &AppValue<Cx>, env: &Env) -> Result<AppValue<Float>> {
    Ok(f_series(j, &u.value, &env.ctx)?.with_extra_err(&arg_err(u)))
}

fn g_at(j: u32, u: &AppValue<Cx>, env: &Env) -> Result<AppValue<Float>> {
    Ok(g_series(j, &u.value, &env.ctx)?.with_extra_err(&arg_err(u)))
}

fn f_rat(j: u32, u: &Rational, env: &Env) -> Result<AppValue<Float>> {
    f_series(j, &Cx::from_real(fl(env, u)), &env.ctx)
}

fn g_rat(j: u32, u: &Rational, env: &Env) -> Result<AppValue<Float>> {
    g_series(j, &Cx::from_real(fl(env, u)), &env.ctx)
}

fn upper(v: &[(i64, i64)]) -> Vec<ExactRational> {
    v.iter().map(|&(n, d)| rat(n, d)).collect()
}

fn hyp(up: &[(i64, i64)], low: &[(i64, i64)], x: &Rational, env: &Env) -> Result<AppValue<Float>> {
    pfq_real(&upper(up), &upper(low), &fl(env, x), &env.ctx)
}

const CUBIC_3F2: [(i64, i64); 3] = [(1, 3), (1, 2), (2, 3)];
const QUARTIC_3F2: [(i64, i64); 3] = [(1, 4), (1, 2), (3, 4)];
const ONE_ONE: [(i64, i64); 2] = [(1, 1), (1, 1)];

fn f5(j: u32, x: &Rational, env: &Env) -> Result<AppValue<Float>> {
    pfq_real(&f_parameters(j)?, &f_lower(), &fl(env, x), &env.ctx)
}

fn ln_rat(env: &Env, r: &Rational) -> AppValue<Float> {
    exact(env, r).ln()
}

fn sqrt3(env: &Env) -> Float {
    Float::with_val(env.ctx.prec(), 3).sqrt()
}

// ------------------------------------------------------- q-series checks

fn bertin_g1(p: &Point, b: Branch, env: &Env) -> Result<Sides> {
    let qv = param(p, "q")?;
    let qp = qpoint(env, &qv)?;
    let t = t_func(1, &qp, b, &env.ctx)?;
    let lhs = g_at(1, &t, env)?;
    let g: Vec<_> = [1, 2, 3, 6].iter().map(|&k| big_g(&qp.pow(k), env)).collect::<Result<_>>()?;
    let rhs = lin(env, &[(q(-1, 60), &g[0]), (q(1, 30), &g[1]), (q(-1, 20), &g[2]), (q(1, 10), &g[3])]);
    Ok(Sides::real(lhs, rhs))
}

fn bertin_g2(p: &Point, b: Branch, env: &Env) -> Result<Sides> {
    let qv = param(p, "q")?;
    let qp = qpoint(env, &qv)?;
    let t = t_func(2, &qp, b, &env.ctx)?;
    let lhs = g_at(2, &t, env)?;
    let g: Vec<_> = [1, 2, 3, 6].iter().map(|&k| big_g(&qp.pow(k), env)).collect::<Result<_>>()?;
    let rhs = lin(env, &[(q(1, 120), &g[0]), (q(-1, 15), &g[1]), (q(-1, 40), &g[2]), (q(1, 5), &g[3])]);
    Ok(Sides::real(lhs, rhs))
}

fn fj_of_g(j: u32, p: &Point, b: Branch, env: &Env) -> Result<Sides> {
    let qp = qpoint(env, &param(p, "q")?)?;
    let s = s_func(j, &qp, b, &env.ctx)?;
    let lhs = f_at(j, &s, env)?;
    let g1 = big_g(&qp, env)?;
    let rhs = match j {
        2 => {
            let gm = big_g(&qp.negated(), env)?;
            let g2 = big_g(&qp.pow(2), env)?;
            lin(env, &[(q(-2, 15), &g1), (q(-1, 15), &gm), (q(3, 5), &g2)])
        }
        3 => lin(env, &[(q(-1, 8), &g1), (q(3, 8), &big_g(&qp.pow(3), env)?)]),
        _ => lin(env, &[(q(-1, 3), &g1), (q(2, 3), &big_g(&qp.pow(2), env)?)]),
    };
    Ok(Sides::real(lhs, rhs))
}

fn f2_g(p: &Point, b: Branch, env: &Env) -> Result<Sides> {
    fj_of_g(2, p, b, env)
}
fn f3_g(p: &Point, b: Branch, env: &Env) -> Result<Sides> {
    fj_of_g(3, p, b, env)
}
fn f4_g(p: &Point, b: Branch, env: &Env) -> Result<Sides> {
    fj_of_g(4, p, b, env)
}

/// G(q) = sum c_i f_j(s_j(q_i)).
fn ginv(j: u32, p: &Point, b: Branch, env: &Env) -> Result<Sides> {
    let qp = qpoint(env, &param(p, "q")?)?;
    let terms: Vec<(Rational, QPoint)> = match j {
        2 => vec![
            (q(-19, 1), qp.clone()),
            (q(-4, 1), qp.negated()),
            (q(24, 1), qp.pow(2)),
            (q(-12, 1), qp.pow(2).negated()),
        ],
        3 => vec![
            (q(-19, 2), qp.clone()),
            (q(-3, 2), qp.rotated(1, 3)),
            (q(-3, 2), qp.rotated(2, 3)),
            (q(9, 2), qp.pow(3)),
        ],
        _ => vec![(q(-5, 1), qp.clone()), (q(-2, 1), qp.negated()), (q(4, 1), qp.pow(2))],
    };
    let vals: Vec<AppValue<Float>> =
        terms.iter().map(|(_, x)| f_at(j, &s_func(j, x, b, &env.ctx)?, env)).collect::<Result<_>>()?;
    let pairs: Vec<(Rational, &AppValue<Float>)> = terms.iter().map(|(c, _)| c.clone()).zip(vals.iter()).collect();
    Ok(Sides::real(big_g(&qp, env)?, lin(env, &pairs)))
}

fn ginv_f2(p: &Point, b: Branch, env: &Env) -> Result<Sides> {
    ginv(2, p, b, env)
}
fn ginv_f3(p: &Point, b: Branch, env: &Env) -> Result<Sides> {
    ginv(3, p, b, env)
}
fn ginv_f4(p: &Point, b: Branch, env: &Env) -> Result<Sides> {
    ginv(4, p, b, env)
}

fn gfunc(prime: u32, nine: i64, p: &Point, env: &Env) -> Result<Sides> {
    let qp = qpoint(env, &param(p, "q")?)?;
    if prime == 2 {
        let l = big_g(&qp, env)?.add(&big_g(&qp.negated(), env)?);
        let a = big_g(&qp.pow(2), env)?;
        let c = big_g(&qp.pow(4), env)?;
        return Ok(Sides::real(l, lin(env, &[(q(nine, 1), &a), (q(-4, 1), &c)])));
    }
    let l = big_g(&qp, env)?.add(&big_g(&qp.rotated(1, 3), env)?).add(&big_g(&qp.rotated(2, 3), env)?);
    let a = big_g(&qp.pow(3), env)?;
    let c = big_g(&qp.pow(9), env)?;
    Ok(Sides::real(l, lin(env, &[(q(28, 1), &a), (q(-9, 1), &c)])))
}

fn gfunc_p2(p: &Point, _: Branch, env: &Env) -> Result<Sides> {
    gfunc(2, 9, p, env)
}
fn gfunc_p2_perturbed(p: &Point, _: Branch, env: &Env) -> Result<Sides> {
    gfunc(2, 8, p, env)
}
fn gfunc_p3(p: &Point, _: Branch, env: &Env) -> Result<Sides> {
    gfunc(3, 9, p, env)
}

// ----------------------------------------------------- rational formulas

/// c * prod poly_i(p)^e_i, polynomials as ascending coefficient lists.
struct Factored {
    c: i64,
    factors: &'static [(&'static [i64], i32)],
}

impl Factored {
    fn eval(&self, p: &Rational) -> Rational {
        let mut acc = Rational::from(self.c);
        for (coeffs, e) in self.factors {
            let mut v = Rational::new();
            for c in coeffs.iter().rev() {
                v *= p;
                v += *c;
            }
            let e = *e;
            if e >= 0 {
                acc *= v.pow(e as u32);
            } else {
                acc /= v.pow((-e) as u32);
            }
        }
        acc
    }
}

#[derive(Clone, Copy)]
enum LemmaSide {
    S(u32),
    T1Squared,
    T2,
}

struct LemmaEntry {
    id: &'static str,
    side: LemmaSide,
    power: u32,
    negate: bool,
    rhs: Factored,
    expect: Expect,
}

const P: &[i64] = &[0, 1];
const ONE_P: &[i64] = &[1, 1];
const ONE_MP: &[i64] = &[1, -1];
const TWO_P: &[i64] = &[2, 1];
const ONE_2P: &[i64] = &[1, 2];
const ONE_MP2: &[i64] = &[1, 0, -1];

static LEMMA: [LemmaEntry; 18] = [
    LemmaEntry { id: "LEMMA23_s2_q", side: LemmaSide::S(2), power: 1, negate: false, expect: Expect::Pass,
        rhs: Factored { c: 16, factors: &[(ONE_2P, 6), (P, -1), (ONE_MP, -3), (ONE_P, -1), (TWO_P, -3)] } },
    LemmaEntry { id: "LEMMA23_s2_q3", side: LemmaSide::S(2), power: 3, negate: false, expect: Expect::Pass,
        rhs: Factored { c: 16, factors: &[(ONE_2P, 2), (P, -3), (ONE_MP, -1), (ONE_P, -3), (TWO_P, -1)] } },
    LemmaEntry { id: "LEMMA23_s2_mq", side: LemmaSide::S(2), power: 1, negate: true, expect: Expect::Pass,
        rhs: Factored { c: -16, factors: &[(ONE_MP, 6), (ONE_P, 2), (P, -1), (TWO_P, -3), (ONE_2P, -3)] } },
    LemmaEntry { id: "LEMMA23_s2_mq3", side: LemmaSide::S(2), power: 3, negate: true, expect: Expect::Pass,
        rhs: Factored { c: -16, factors: &[(ONE_MP, 2), (ONE_P, 6), (P, -3), (TWO_P, -1), (ONE_2P, -1)] } },
    LemmaEntry { id: "LEMMA23_s2_mq2", side: LemmaSide::S(2), power: 2, negate: true, expect: Expect::BranchError,
        rhs: Factored { c: 256, factors: &[(ONE_MP, 3), (ONE_P, 1), (ONE_2P, 3), (P, -2), (TWO_P, -6)] } },
    LemmaEntry { id: "LEMMA23_s2_mq6", side: LemmaSide::S(2), power: 6, negate: true, expect: Expect::BranchError,
        rhs: Factored { c: 256, factors: &[(ONE_MP, 1), (ONE_P, 3), (ONE_2P, 1), (P, -6), (TWO_P, -2)] } },
    LemmaEntry { id: "LEMMA23_s3_q", side: LemmaSide::S(3), power: 1, negate: false, expect: Expect::Pass,
        rhs: Factored { c: 4, factors: &[(&[1, 4, 1], 6), (P, -1), (ONE_MP2, -4), (TWO_P, -1), (ONE_2P, -1)] } },
    LemmaEntry { id: "LEMMA23_s3_q2", side: LemmaSide::S(3), power: 2, negate: false, expect: Expect::Pass,
        rhs: Factored { c: 16, factors: &[(&[1, 1, 1], 6), (P, -2), (ONE_MP2, -2), (TWO_P, -2), (ONE_2P, -2)] } },
    LemmaEntry { id: "LEMMA23_s3_mq", side: LemmaSide::S(3), power: 1, negate: true, expect: Expect::Pass,
        rhs: Factored { c: -4, factors: &[(&[1, -2, -2], 6), (P, -1), (ONE_MP2, -1), (TWO_P, -1), (ONE_2P, -4)] } },
    LemmaEntry { id: "LEMMA23_s3_q4", side: LemmaSide::S(3), power: 4, negate: false, expect: Expect::Pass,
        rhs: Factored { c: 4, factors: &[(&[2, 2, -1], 6), (P, -4), (ONE_MP2, -1), (TWO_P, -4), (ONE_2P, -1)] } },
    LemmaEntry { id: "LEMMA23_s4_q", side: LemmaSide::S(4), power: 1, negate: false, expect: Expect::Pass,
        rhs: Factored { c: 16, factors: &[(&[1, 14, 24, 14, 1], 4), (P, -1), (ONE_MP, -6), (ONE_P, -2), (TWO_P, -3), (ONE_2P, -3)] } },
    LemmaEntry { id: "LEMMA23_s4_q3", side: LemmaSide::S(4), power: 3, negate: false, expect: Expect::Pass,
        rhs: Factored { c: 16, factors: &[(&[1, 2, 0, 2, 1], 4), (P, -3), (ONE_MP, -2), (ONE_P, -6), (TWO_P, -1), (ONE_2P, -1)] } },
    LemmaEntry { id: "LEMMA23_s4_mq", side: LemmaSide::S(4), power: 1, negate: true, expect: Expect::Pass,
        rhs: Factored { c: -16, factors: &[(&[1, -10, -12, -4, -2], 4), (P, -1), (ONE_MP, -3), (ONE_P, -1), (ONE_2P, -6), (TWO_P, -3)] } },
    LemmaEntry { id: "LEMMA23_s4_mq3", side: LemmaSide::S(4), power: 3, negate: true, expect: Expect::Pass,
        rhs: Factored { c: -16, factors: &[(&[1, 2, 0, -4, -2], 4), (P, -3), (ONE_MP, -1), (ONE_P, -3), (ONE_2P, -2), (TWO_P, -1)] } },
    LemmaEntry { id: "LEMMA23_t1sq_q", side: LemmaSide::T1Squared, power: 1, negate: false, expect: Expect::Pass,
        rhs: Factored { c: 4, factors: &[(&[1, 1, 1], 2), (&[1, 4, 1], 2), (P, -1), (ONE_MP2, -2), (TWO_P, -1), (ONE_2P, -1)] } },
    LemmaEntry { id: "LEMMA23_t1sq_mq", side: LemmaSide::T1Squared, power: 1, negate: true, expect: Expect::Pass,
        rhs: Factored { c: -4, factors: &[(&[1, 1, 1], 2), (&[1, -2, -2], 2), (P, -1), (ONE_MP2, -1), (TWO_P, -1), (ONE_2P, -2)] } },
    LemmaEntry { id: "LEMMA23_t2_q", side: LemmaSide::T2, power: 1, negate: false, expect: Expect::Pass,
        rhs: Factored { c: -4, factors: &[(ONE_MP2, 2), (P, -1), (TWO_P, -1), (ONE_2P, -1)] } },
    LemmaEntry { id: "LEMMA23_t2_mq", side: LemmaSide::T2, power: 1, negate: true, expect: Expect::BranchError,
        rhs: Factored { c: -4, factors: &[(&[1, 1, 1], 2), (P, -1), (ONE_MP2, -1), (TWO_P, -1)] } },
];

static S2_Q_PERTURBED: Factored =
    Factored { c: 17, factors: &[(ONE_2P, 6), (P, -1), (ONE_MP, -3), (ONE_P, -1), (TWO_P, -3)] };

/// q = q_2(alpha) with alpha = p(2+p)^3/(1+2p)^3, and the relative error of q.
fn lemma_nome(p: &Rational, env: &Env) -> Result<(QPoint, Float)> {
    let alpha = Rational::from(p * Rational::from(2 + p).pow(3)) / Rational::from(1 + Rational::from(2 * p)).pow(3);
    let qv = nome(2, &fl(env, &alpha), &env.ctx)?;
    let rel = err_float(&qv.err) / err_float(qv.value.clone().abs());
    Ok((QPoint::real(qv.value)?, rel))
}

/// Sensitivity allowance: the lemma functions scale like q^{-k} with k <= 6.
fn with_q_err(v: AppValue<Cx>, rel: &Float) -> AppValue<Cx> {
    let extra = err_float(v.value.abs()) * rel * 16u32;
    v.with_extra_err(&extra)
}

fn lemma_lhs(e: &LemmaEntry, qp: &QPoint, b: Branch, env: &Env) -> Result<AppValue<Cx>> {
    let mut x = qp.pow(e.power);
    if e.negate {
        x = x.negated();
    }
    match e.side {
        LemmaSide::S(j) => s_func(j, &x, b, &env.ctx),
        LemmaSide::T1Squared => Ok(t_func(1, &x, b, &env.ctx)?.powi(2)),
        LemmaSide::T2 => t_func(2, &x, b, &env.ctx),
    }
}

fn lemma_eval(idx: usize, rhs: Option<&Factored>, p: &Point, b: Branch, env: &Env) -> Result<Sides> {
    let e = &LEMMA[idx];
    let pv = param(p, "p")?;
    let (qp, rel) = lemma_nome(&pv, env)?;
    let lhs = with_q_err(lemma_lhs(e, &qp, b, env)?, &rel);
    let rhs = exact(env, &rhs.unwrap_or(&e.rhs).eval(&pv)).to_cx();
    Ok(Sides { lhs, rhs })
}

macro_rules! lemma_fns {
    ($($name:ident = $idx:expr),* $(,)?) => {
        $(fn $name(p: &Point, b: Branch, env: &Env) -> Result<Sides> { lemma_eval($idx, None, p, b, env) })*
        const LEMMA_FNS: [fn(&Point, Branch, &Env) -> Result<Sides>; 18] = [$($name),*];
    };
}

lemma_fns!(
    l0 = 0, l1 = 1, l2 = 2, l3 = 3, l4 = 4, l5 = 5, l6 = 6, l7 = 7, l8 = 8,
    l9 = 9, l10 = 10, l11 = 11, l12 = 12, l13 = 13, l14 = 14, l15 = 15, l16 = 16, l17 = 17,
);

fn lemma_s2_perturbed(p: &Point, b: Branch, env: &Env) -> Result<Sides> {
    lemma_eval(0, Some(&S2_Q_PERTURBED), p, b, env)
}

fn resultant(p: &Point, b: Branch, env: &Env) -> Result<Sides> {
    let pv = param(p, "p")?;
    let (qp, rel) = lemma_nome(&pv, env)?;
    let s = with_q_err(s_func(4, &qp, b, &env.ctx)?, &rel);
    let t = with_q_err(t_func(1, &qp, b, &env.ctx)?.powi(2), &rel);
    let c = |x: i64| AppValue::exact(Cx::from_real(env.ctx.float(x)));
    let lhs = s.powi(2).add(&t.add(&c(12)).powi(4));
    let poly = c(-288).add(&t.scale(&env.ctx.float(352))).sub(&t.powi(2).scale(&env.ctx.float(42))).add(&t.powi(3));
    Ok(Sides { lhs, rhs: s.mul(&poly) })
}

// ------------------------------------------ Mahler-measure transformations

fn thm24_g1(p: &Point, _: Branch, env: &Env) -> Result<Sides> {
    let z = param(p, "z")?;
    let zi = Rational::from(z.recip_ref());
    let u = Rational::from(&z + &zi) * 3;
    let lhs = g_rat(1, &u, env)?;
    let z2 = Rational::from(z.square_ref());
    let a = Rational::from(3 + &z2).pow(4) * 9 / Rational::from((&z2).pow(3));
    let b = Rational::from(3 + Rational::from(z2.recip_ref())).pow(4) * 9 * Rational::from((&z2).pow(3));
    let rhs = lin(env, &[(q(1, 20), &f_rat(4, &a, env)?), (q(3, 20), &f_rat(4, &b, env)?)]);
    Ok(Sides::real(lhs, rhs))
}

fn thm24_g2(p: &Point, _: Branch, env: &Env) -> Result<Sides> {
    let z = param(p, "z")?;
    let lhs = g_rat(2, &z, env)?;
    let a = Rational::from(16 - &z).pow(3) / Rational::from(z.square_ref());
    let b = Rational::from(&z - 4).pow(3) / &z;
    let rhs = lin(env, &[(q(-1, 15), &f_rat(3, &a, env)?), (q(8, 15), &f_rat(3, &b, env)?)]);
    Ok(Sides::real(lhs, rhs))
}

fn intro_g1f4(p: &Point, _: Branch, env: &Env) -> Result<Sides> {
    let u = param(p, "u")?;
    let u2 = Rational::from(u.square_ref());
    let u4 = Rational::from(u2.square_ref());
    let arg = (Rational::from(&u2 + Rational::from(u2.recip_ref()))) * 3;
    let lhs = g_rat(1, &arg, env)?;
    let u12 = Rational::from((&u4).pow(3));
    let a = Rational::from(3 + &u4).pow(4) * 9 / &u12;
    let b = Rational::from(3 + Rational::from(u4.recip_ref())).pow(4) * 9 * &u12;
    let rhs = lin(env, &[(q(1, 20), &f_rat(4, &a, env)?), (q(3, 20), &f_rat(4, &b, env)?)]);
    Ok(Sides::real(lhs, rhs))
}

fn eq_5f4_one(p: &Point, _: Branch, env: &Env) -> Result<Sides> {
    let u = param(p, "u")?;
    let lhs = weighted_sum(Coeffs::Domb, &Weight::InvN, &fl(env, &u), 1, &env.ctx)?.value;
    let a = Rational::from(1 - Rational::from(16 * &u));
    let b = Rational::from(1 - Rational::from(4 * &u));
    let log = ln_rat(env, &(Rational::from(&a / Rational::from((&b).pow(8)))));
    let x1 = Rational::from(-108 * &u) / Rational::from((&a).pow(3));
    let x2 = Rational::from(108 * Rational::from(u.square_ref())) / Rational::from((&b).pow(3));
    let c1 = Rational::from(4 * &u) / (Rational::from((&a).pow(3)) * 5);
    let c2 = Rational::from(32 * Rational::from(u.square_ref())) / (Rational::from((&b).pow(3)) * 5);
    let rhs = lin(env, &[(q(1, 5), &log), (c1, &f5(3, &x1, env)?), (c2, &f5(3, &x2, env)?)]);
    Ok(Sides::real(lhs, rhs))
}

fn eq_5f4_two(p: &Point, _: Branch, env: &Env) -> Result<Sides> {
    let u = param(p, "u")?;
    let one_u = Rational::from(1 + &u);
    let x = Rational::from(&u / (Rational::from(one_u.square_ref()) * 9));
    let lhs = weighted_sum(Coeffs::BSeq, &Weight::InvN, &fl(env, &x), 1, &env.ctx)?.value;
    let three_u = Rational::from(3 + &u);
    let one_3u = Rational::from(1 + Rational::from(3 * &u));
    let log_arg = Rational::from((&one_u).pow(5)) * 27 / (Rational::from((&three_u).pow(3)) * &one_3u);
    let log = ln_rat(env, &log_arg);
    let u3 = Rational::from((&u).pow(3));
    let x1 = Rational::from(256 * &u3) / (Rational::from((&three_u).pow(4)) * 9);
    let x2 = Rational::from(256 * &u) / (Rational::from((&one_3u).pow(4)) * 9);
    let c1 = Rational::from(4 * &u3) / (Rational::from((&three_u).pow(4)) * 5);
    let c2 = Rational::from(4 * &u) / (Rational::from((&one_3u).pow(4)) * 15);
    let rhs = lin(env, &[(q(2, 5), &log), (c1, &f5(4, &x1, env)?), (c2, &f5(4, &x2, env)?)]);
    Ok(Sides::real(lhs, rhs))
}

// --------------------------------------------------- L-value evaluations

fn l_value(form: NamedForm, s: i64, heuristic: bool, env: &Env) -> Result<AppValue<Float>> {
    let cs = named_coeffs(form, env.lseries_n, env.cache_dir.as_deref())?;
    if heuristic {
        lvalue_direct_heuristic(&cs, s, &env.ctx)
    } else {
        lvalue_direct(&cs, s, &env.ctx)
    }
}

fn pi_cubed(env: &Env) -> AppValue<Float> {
    let pi = env.ctx.pi();
    exact(env, &Rational::new()).add(&AppValue::exact(Float::with_val(env.ctx.prec(), pi.pow(3))))
}

fn cor25_a(_: &Point, _: Branch, env: &Env) -> Result<Sides> {
    let ctx = &env.ctx;
    let lhs = pfq_unit(&f_parameters(3)?, &f_lower(), ctx)?;
    let l = l_value(NamedForm::G, 3, false, env)?;
    let logs = AppValue::exact(ctx.ln2() * 18u32).add(&exact(env, &q(3, 1)).ln().scale(&ctx.float(27)));
    let k = Float::with_val(ctx.prec(), sqrt3(env) * 810u32);
    let rhs = logs.sub(&l.scale(&k).div(&pi_cubed(env)));
    Ok(Sides::real(lhs, rhs))
}

fn cor25_b(_: &Point, _: Branch, env: &Env) -> Result<Sides> {
    let ctx = &env.ctx;
    let lhs = pfq_unit(&f_parameters(4)?, &f_lower(), ctx)?;
    let l = l_value(NamedForm::F, 3, false, env)?;
    let logs = AppValue::exact(Float::with_val(ctx.prec(), ctx.ln2() * 256u32) / 3u32);
    let k = Float::with_val(ctx.prec(), Float::with_val(ctx.prec(), 2).sqrt() * 5120u32) / 3u32;
    let rhs = logs.sub(&l.scale(&k).div(&pi_cubed(env)));
    Ok(Sides::real(lhs, rhs))
}

fn boyd_ko(_: &Point, _: Branch, env: &Env) -> Result<Sides> {
    let lhs = hyp(&[(1, 2), (1, 2), (1, 2)], &[(3, 2), (1, 1)], &q(1, 16), env)?;
    let l = l_value(NamedForm::F15, 2, true, env)?;
    let pi2 = AppValue::exact(Float::with_val(env.ctx.prec(), env.ctx.pi().square_ref()));
    Ok(Sides::real(lhs, l.scale(&env.ctx.float(15)).div(&pi2)))
}

fn boyd_mahler(_: &Point, _: Branch, env: &Env) -> Result<Sides> {
    let lhs = boyd_mahler_measure(&env.ctx)?;
    let l = l_value(NamedForm::F15, 2, true, env)?;
    let pi2 = AppValue::exact(Float::with_val(env.ctx.prec(), env.ctx.pi().square_ref()) * 4u32);
    Ok(Sides::real(lhs, l.scale(&env.ctx.float(15)).div(&pi2)))
}

// -------------------------------------------------- hypergeometric checks

fn thm31_t1(p: &Point, _: Branch, env: &Env) -> Result<Sides> {
    let u = param(p, "u")?;
    let b = Rational::from(1 - Rational::from(4 * &u));
    let x = Rational::from(108 * Rational::from(u.square_ref())) / Rational::from((&b).pow(3));
    let lhs = hyp(&CUBIC_3F2, &ONE_ONE, &x, env)?;
    let a = weighted_sum(Coeffs::Domb, &Weight::One, &fl(env, &u), 0, &env.ctx)?.value;
    Ok(Sides::real(lhs, a.scale(&fl(env, &b))))
}

fn thm31_t2_with(p: &Point, env: &Env, perturb: bool) -> Result<Sides> {
    let u = param(p, "u")?;
    let one_3u = Rational::from(1 + Rational::from(3 * &u));
    let one_u = Rational::from(1 + &u);
    let x = Rational::from(256 * &u) / (Rational::from((&one_3u).pow(4)) * 9);
    let lhs = hyp(&QUARTIC_3F2, &ONE_ONE, &x, env)?;
    let xb = Rational::from(&u / (Rational::from(one_u.square_ref()) * 9));
    let s = weighted_sum(Coeffs::BSeq, &Weight::One, &fl(env, &xb), 0, &env.ctx)?.value;
    let den = if perturb { Rational::from(1 + Rational::from(2 * &u)) } else { one_u };
    Ok(Sides::real(lhs, s.scale(&fl(env, &(one_3u / den)))))
}

fn thm31_t2(p: &Point, _: Branch, env: &Env) -> Result<Sides> {
    thm31_t2_with(p, env, false)
}
fn thm31_t2_perturbed(p: &Point, _: Branch, env: &Env) -> Result<Sides> {
    thm31_t2_with(p, env, true)
}

fn aux_1(p: &Point, _: Branch, env: &Env) -> Result<Sides> {
    let u = param(p, "u")?;
    let a = Rational::from(1 - Rational::from(16 * &u));
    let b = Rational::from(1 - Rational::from(4 * &u));
    let x1 = Rational::from(-108 * &u) / Rational::from((&a).pow(3));
    let x2 = Rational::from(108 * Rational::from(u.square_ref())) / Rational::from((&b).pow(3));
    let lhs = hyp(&CUBIC_3F2, &ONE_ONE, &x1, env)?;
    let rhs = hyp(&CUBIC_3F2, &ONE_ONE, &x2, env)?.scale(&fl(env, &(a / b)));
    Ok(Sides::real(lhs, rhs))
}

fn aux_2(p: &Point, _: Branch, env: &Env) -> Result<Sides> {
    let u = param(p, "u")?;
    let three_u = Rational::from(3 + &u);
    let one_3u = Rational::from(1 + Rational::from(3 * &u));
    let x1 = Rational::from(256 * Rational::from((&u).pow(3))) / (Rational::from((&three_u).pow(4)) * 9);
    let x2 = Rational::from(256 * &u) / (Rational::from((&one_3u).pow(4)) * 9);
    let lhs = hyp(&QUARTIC_3F2, &ONE_ONE, &x1, env)?;
    let k = three_u / (one_3u * 3);
    let rhs = hyp(&QUARTIC_3F2, &ONE_ONE, &x2, env)?.scale(&fl(env, &k));
    Ok(Sides::real(lhs, rhs))
}

fn clausen(j: u32, stretch: Rational, p: &Point, env: &Env) -> Result<Sides> {
    let x = param(p, "x")?;
    let arg = Rational::from(4 * &x) * Rational::from(1 - &x) * stretch;
    let (up3, up2): (&[(i64, i64)], [(i64, i64); 2]) =
        if j == 3 { (&CUBIC_3F2, [(1, 3), (2, 3)]) } else { (&QUARTIC_3F2, [(1, 4), (3, 4)]) };
    let lhs = hyp(up3, &ONE_ONE, &arg, env)?;
    let f = hyp(&up2, &[(1, 1)], &x, env)?;
    Ok(Sides::real(lhs, f.powi(2)))
}

fn clausen_3(p: &Point, _: Branch, env: &Env) -> Result<Sides> {
    clausen(3, q(1, 1), p, env)
}
fn clausen_3_perturbed(p: &Point, _: Branch, env: &Env) -> Result<Sides> {
    clausen(3, q(101, 100), p, env)
}
fn clausen_4(p: &Point, _: Branch, env: &Env) -> Result<Sides> {
    clausen(4, q(1, 1), p, env)
}

fn cubic_2f1(pt: &Point, _: Branch, env: &Env) -> Result<Sides> {
    let p = param(pt, "p")?;
    let one_p = Rational::from(1 + &p);
    let one_mp = Rational::from(1 - &p);
    let two_p = Rational::from(2 + &p);
    let x1 = Rational::from(&one_mp * Rational::from(two_p.square_ref())) / 4;
    let x2 = Rational::from(one_mp.square_ref()) * &two_p / (Rational::from((&one_p).pow(3)) * 2);
    let f = |x: &Rational| hyp(&[(1, 3), (2, 3)], &[(1, 1)], x, env);
    let rhs = f(&x2)?.scale(&fl(env, &(Rational::from(2) / one_p)));
    Ok(Sides::real(f(&x1)?, rhs))
}

fn quartic_2f1(pt: &Point, _: Branch, env: &Env) -> Result<Sides> {
    let p = param(pt, "p")?;
    let p2 = Rational::from(p.square_ref());
    let a = Rational::from(3 + Rational::from(6 * &p)) - &p2;
    let b = Rational::from(27 - Rational::from(18 * &p)) - &p2;
    let x1 = 1 - Rational::from(64 * &p) / Rational::from(a.square_ref());
    let x2 = 1 - Rational::from(64 * Rational::from((&p).pow(3))) / Rational::from(b.square_ref());
    let f = |x: &Rational| hyp(&[(1, 4), (3, 4)], &[(1, 1)], x, env);
    let k = exact(env, &(a / b)).sqrt();
    Ok(Sides::real(f(&x1)?, f(&x2)?.mul(&k)))
}

fn bessel(p: &Point, _: Branch, env: &Env) -> Result<Sides> {
    let x = param(p, "x")?;
    let (l, r) = bessel_laplace_sides(&fl(env, &x), &env.ctx)?;
    Ok(Sides::real(l, r))
}

// ----------------------------------------------------------- 1/pi series

/// prefactor * sum_n (A n + B) c_n x^n = target.
pub struct PiSeries {
    pub id: &'static str,
    coeffs: Coeffs,
    weight: Weight,
    x: Float,
    prefactor: Float,
    pub target: Float,
}

impl PiSeries {
    /// Full sum to working precision, scaled by the prefactor, with its term count.
    pub fn sum(&self, ctx: &PrecisionContext) -> Result<(AppValue<Float>, u64)> {
        let s = weighted_sum(self.coeffs, &self.weight, &self.x, 0, ctx)?;
        Ok((s.value.scale(&self.prefactor), s.terms))
    }

    /// First `terms` terms only.
    pub fn partial(&self, terms: u64, ctx: &PrecisionContext) -> AppValue<Float> {
        weighted_partial(self.coeffs, &self.weight, &self.x, 0, terms, ctx).scale(&self.prefactor)
    }
}

/// The 1/pi series of the catalog by id (PI_1..PI_4, RAMANUJAN_8PI,
/// CHUDNOVSKY, YANG, PI_1_PERTURBED).
pub fn pi_series(id: &str, ctx: &PrecisionContext) -> Option<PiSeries> {
    let prec = ctx.prec();
    let f = |x: i64| Float::with_val(prec, x);
    let r = |n: i64, d: i64| Float::with_val(prec, Rational::from((n, d)));
    let pi = ctx.pi();
    let s3 = Float::with_val(prec, 3).sqrt();
    let lin = |a: Float, b: Float| Weight::Linear(a, b);
    let one = f(1);
    let (coeffs, weight, x, prefactor, target) = match id {
        "PI_1" => (Coeffs::Domb, lin(f(3), f(1)), r(-1, 32), one, Float::with_val(prec, 2 / &pi)),
        "PI_1_PERTURBED" => (Coeffs::Domb, lin(f(3), f(2)), r(-1, 32), one, Float::with_val(prec, 2 / &pi)),
        "PI_2" => (Coeffs::Domb, lin(f(5), f(1)), r(1, 64), one, Float::with_val(prec, &s3 * 8u32) / (pi * 3u32)),
        "PI_3" => {
            let x = (Float::with_val(prec, &s3 * 3u32) - 5u32) / 4u32;
            let b = Float::with_val(prec, 3 - &s3);
            let t = Float::with_val(prec, &s3 * 5u32) + 9u32;
            (Coeffs::Domb, lin(f(6), b), x, one, t / pi)
        }
        "PI_4" => {
            let x = (Float::with_val(prec, &s3 * 80u32) - 139u32) / 484u32;
            let b = Float::with_val(prec, 159 - Float::with_val(prec, &s3 * 48u32));
            let t = (Float::with_val(prec, &s3 * 29u32) + 64u32) * 2u32;
            (Coeffs::BSeq, lin(f(520), b), x, one, t / pi)
        }
        "RAMANUJAN_8PI" => (Coeffs::Quartic, lin(f(20), f(3)), r(-1, 4), one, Float::with_val(prec, 8 / &pi)),
        "YANG" => {
            let t = Float::with_val(prec, 18 / &pi) / Float::with_val(prec, 15).sqrt();
            (Coeffs::Binomial4, lin(f(4), f(1)), r(1, 36), one, t)
        }
        "CHUDNOVSKY" => {
            let c3 = Float::with_val(prec, 640_320u64).pow(3u32);
            let x = -Float::with_val(prec, c3.recip_ref());
            let pre = Float::with_val(prec, 12) / c3.sqrt();
            (Coeffs::Sextic, lin(f(545_140_134), f(13_591_409)), x, pre, Float::with_val(prec, pi.recip_ref()))
        }
        _ => return None,
    };
    let id = PI_IDS.iter().find(|&&k| k == id).copied()?;
    Some(PiSeries { id, coeffs, weight, x, prefactor, target })
}

const PI_IDS: [&str; 8] = ["PI_1", "PI_1_PERTURBED", "PI_2", "PI_3", "PI_4", "RAMANUJAN_8PI", "YANG", "CHUDNOVSKY"];

fn pi_eval(id: &str, env: &Env) -> Result<Sides> {
    let s = pi_series(id, &env.ctx).ok_or_else(|| Error::UnknownId(id.to_string()))?;
    let (v, _) = s.sum(&env.ctx)?;
    let t = s.target.clone();
    let e = err_float(t.clone().abs()) >> (env.ctx.prec() - 2);
    Ok(Sides::real(v, AppValue::new(t, e, crate::precision::Rigor::Rigorous)))
}

macro_rules! pi_fns {
    ($($name:ident = $id:expr),* $(,)?) => {
        $(fn $name(_: &Point, _: Branch, env: &Env) -> Result<Sides> { pi_eval($id, env) })*
    };
}

pi_fns!(
    pi_1 = "PI_1", pi_1_perturbed = "PI_1_PERTURBED", pi_2 = "PI_2", pi_3 = "PI_3", pi_4 = "PI_4",
    ram8 = "RAMANUJAN_8PI", yang = "YANG", chud = "CHUDNOVSKY",
);

// -------------------------------------------------------------- registry

fn entry(
    id: &'static str,
    anchor: &'static str,
    domain: &'static str,
    params: &'static [&'static str],
    defaults: Vec<Point>,
    eval: super::EvalFn,
) -> IdentityCheck {
    IdentityCheck {
        id,
        anchor,
        domain,
        params,
        defaults,
        tolerance: TIGHT,
        expect: Expect::Pass,
        control: false,
        branch_sensitive: false,
        eval,
    }
}

fn control(mut c: IdentityCheck) -> IdentityCheck {
    c.expect = Expect::Fail;
    c.control = true;
    c
}

fn no_point() -> Vec<Point> {
    vec![Vec::new()]
}

pub(super) fn registry() -> &'static [IdentityCheck] {
    static REG: OnceLock<Vec<IdentityCheck>> = OnceLock::new();
    REG.get_or_init(build)
}

fn build() -> Vec<IdentityCheck> {
    let q_small = || points("q", &[(1, 20), (1, 50)]);
    let mut v = vec![
        entry("BERTIN_G1", "Bertin: g1(t1(q)) as a combination of G(q), G(q^2), G(q^3), G(q^6)",
            "q in (0, 1/20]", &["q"], q_small(), bertin_g1),
        entry("BERTIN_G2", "Bertin: g2(t2(q)) as a combination of G(q), G(q^2), G(q^3), G(q^6)",
            "q in (0, 1/50]; |t2(q)| > 16 needs q below about 1/35", &["q"], points("q", &[(1, 50), (1, 100)]), bertin_g2),
        entry("F2_G", "f2(s2(q)) = -2G(q)/15 - G(-q)/15 + 3G(q^2)/5",
            "q in (0, 1/200]; |s2(q)| > 64", &["q"], points("q", &[(1, 200), (1, 500)]), f2_g),
        entry("F3_G", "f3(s3(q)) = -G(q)/8 + 3G(q^3)/8",
            "q in (0, 1/200]; |s3(q)| > 108", &["q"], points("q", &[(1, 200), (1, 500)]), f3_g),
        entry("F4_G", "f4(s4(q)) = -G(q)/3 + 2G(q^2)/3",
            "q in (0, 1/200]; |s4(q)| > 256", &["q"], points("q", &[(1, 200), (1, 500)]), f4_g),
        entry("GINV_F2", "G(q) from f2 at s2(q), s2(-q), s2(q^2), s2(-q^2)",
            "q in (0, 1/500]", &["q"], points("q", &[(1, 500), (1, 1000)]), ginv_f2),
        entry("GINV_F3", "G(q) from f3 at s3(q), s3(wq), s3(w^2 q), s3(q^3), w = e^{2 pi i/3}",
            "q in (0, 1/500]", &["q"], points("q", &[(1, 500), (1, 1000)]), ginv_f3),
        entry("GINV_F4", "G(q) from f4 at s4(q), s4(-q), s4(q^2)",
            "q in (0, 1/500]", &["q"], points("q", &[(1, 500), (1, 1000)]), ginv_f4),
        entry("GFUNC_P2", "G(q) + G(-q) = 9G(q^2) - 4G(q^4)", "0 < q < 1", &["q"], q_small(), gfunc_p2),
        entry("GFUNC_P3", "G(q) + G(wq) + G(w^2 q) = 28G(q^3) - 9G(q^9), w = e^{2 pi i/3}",
            "0 < q < 1", &["q"], q_small(), gfunc_p3),
        control(entry("GFUNC_P2_PERTURBED", "negative control: 9G(q^2) replaced by 8G(q^2)",
            "0 < q < 1", &["q"], q_small(), gfunc_p2_perturbed)),
        entry("THM24_G1", "g1(3(z + 1/z)) = f4(9(3+z^2)^4/z^6)/20 + 3 f4(9(3+z^-2)^4 z^6)/20",
            "real z >= 20", &["z"], points("z", &[(20, 1), (50, 1)]), thm24_g1),
        entry("THM24_G2", "g2(z) = -f3((16-z)^3/z^2)/15 + 8 f3(-(4-z)^3/z)/15",
            "real z >= 200 so that |(16-z)^3/z^2| > 108", &["z"], points("z", &[(200, 1), (500, 1)]), thm24_g2),
        entry("RESULTANT_REL", "s4^2 + (12+T)^4 = s4(-288 + 352T - 42T^2 + T^3), T = t1(q)^2, q = q_2(alpha(p))",
            "p in (0, 1/10]", &["p"], points("p", &[(1, 100), (1, 50), (1, 10)]), resultant),
        entry("EQ_5F4_ONE", "sum a_n u^n/n as a log plus two 5F4(4/3,3/2,5/3,1,1;2,2,2,2) terms",
            "0 < u <= 1/200 so that 108u/(1-16u)^3 < 1", &["u"], points("u", &[(1, 200), (1, 500)]), eq_5f4_one),
        entry("EQ_5F4_TWO", "sum b_n (u/(9(1+u)^2))^n/n as a log plus two 5F4(5/4,3/2,7/4,1,1;2,2,2,2) terms",
            "0 < u <= 1/40", &["u"], points("u", &[(1, 100), (1, 40)]), eq_5f4_two),
        entry("COR25_A", "5F4(4/3,3/2,5/3,1,1;2,2,2,2;1) = 18 log 2 + 27 log 3 - (810 sqrt3/pi^3) L(g,3)",
            "none", &[], no_point(), cor25_a),
        entry("COR25_B", "5F4(5/4,3/2,7/4,1,1;2,2,2,2;1) = (256/3) log 2 - (5120 sqrt2/(3 pi^3)) L(f,3)",
            "none", &[], no_point(), cor25_b),
        entry("THM31_T1", "3F2(1/3,1/2,2/3;1,1;108u^2/(1-4u)^3) = (1-4u) sum a_n u^n",
            "|u| <= 1/50", &["u"], points("u", &[(1, 100), (-1, 100), (1, 50)]), thm31_t1),
        entry("THM31_T2", "3F2(1/4,1/2,3/4;1,1;256u/(9(1+3u)^4)) = (1+3u)/(1+u) sum b_n (u/(9(1+u)^2))^n",
            "|u| <= 1/50", &["u"], points("u", &[(1, 100), (-1, 100), (1, 50)]), thm31_t2),
        control(entry("THM31_T2_PERTURBED", "negative control: (1+u) replaced by (1+2u)",
            "|u| <= 1/50", &["u"], points("u", &[(1, 100), (-1, 100), (1, 50)]), thm31_t2_perturbed)),
        entry("AUX_3F2_1", "3F2(1/3,1/2,2/3;1,1;-108u/(1-16u)^3) = (1-16u)/(1-4u) 3F2(...;108u^2/(1-4u)^3)",
            "|u| <= 1/200", &["u"], points("u", &[(1, 200), (1, 500), (-1, 500)]), aux_1),
        entry("AUX_3F2_2", "3F2(1/4,1/2,3/4;1,1;256u^3/(9(3+u)^4)) = (3+u)/(3(1+3u)) 3F2(...;256u/(9(1+3u)^4))",
            "|u| <= 1/50", &["u"], points("u", &[(1, 100), (1, 50), (-1, 100)]), aux_2),
        entry("CLAUSEN_3", "3F2(1/3,1/2,2/3;1,1;4x(1-x)) = 2F1(1/3,2/3;1;x)^2",
            "0 < x < 1/2", &["x"], points("x", &[(1, 10), (1, 5), (3, 10)]), clausen_3),
        control(entry("CLAUSEN_3_PERTURBED", "negative control: left argument scaled by 101/100",
            "0 < x < 1/2", &["x"], points("x", &[(1, 10), (1, 5), (3, 10)]), clausen_3_perturbed)),
        entry("CLAUSEN_4", "3F2(1/4,1/2,3/4;1,1;4x(1-x)) = 2F1(1/4,3/4;1;x)^2",
            "0 < x < 1/2", &["x"], points("x", &[(1, 10), (1, 5), (3, 10)]), clausen_4),
        entry("CUBIC_2F1", "2F1(1/3,2/3;1;(1-p)(2+p)^2/4) = 2/(1+p) 2F1(1/3,2/3;1;(1-p)^2(2+p)/(2(1+p)^3))",
            "p near 1", &["p"], points("p", &[(9, 10), (19, 20), (11, 10)]), cubic_2f1),
        entry("QUARTIC_2F1", "2F1(1/4,3/4;1;1-64p/(3+6p-p^2)^2) = sqrt((3+6p-p^2)/(27-18p-p^2)) 2F1(1/4,3/4;1;1-64p^3/(27-18p-p^2)^2)",
            "0 < p < 1; small p pushes the right-hand argument toward 1", &["p"], points("p", &[(1, 2), (3, 5), (9, 10)]), quartic_2f1),
        entry("PI_1", "sum (-1)^n (3n+1) a_n / 32^n = 2/pi", "none", &[], no_point(), pi_1),
        control(entry("PI_1_PERTURBED", "negative control: 3n+1 replaced by 3n+2", "none", &[], no_point(), pi_1_perturbed)),
        entry("PI_2", "sum (5n+1) a_n / 64^n = 8 sqrt3/(3 pi)", "none", &[], no_point(), pi_2),
        entry("PI_3", "sum (6n+3-sqrt3) ((3 sqrt3 - 5)/4)^n a_n = (9 + 5 sqrt3)/pi", "none", &[], no_point(), pi_3),
        entry("PI_4", "sum (520n+159-48 sqrt3) ((80 sqrt3 - 139)/484)^n b_n = 2(64 + 29 sqrt3)/pi",
            "none", &[], no_point(), pi_4),
        entry("RAMANUJAN_8PI", "sum (20n+3) (1/4)_n (1/2)_n (3/4)_n / n!^3 (-1/4)^n = 8/pi", "none", &[], no_point(), ram8),
        entry("CHUDNOVSKY", "12 sum (-1)^n (6n)! (13591409 + 545140134 n) / (n!^3 (3n)! 640320^{3n+3/2}) = 1/pi",
            "none", &[], no_point(), chud),
        entry("YANG", "sum (4n+1)/36^n sum_k C(n,k)^4 = 18/(pi sqrt15)", "none", &[], no_point(), yang),
        entry("BESSEL_LAPLACE", "int_0^inf e^{-3(x+1/x)t} I0(2t)^3 dt = x/(3(1+3x^2)) 3F2(1/4,1/2,3/4;1,1;256x^2/(9(1+3x^2)^4))",
            "0 < x < 1/3", &["x"], points("x", &[(1, 10), (1, 5), (3, 10)]), bessel),
        entry("INTRO_G1F4", "g1(3(u^2 + u^-2)) = f4(9(3+u^4)^4/u^12)/20 + 3 f4(9(3+u^-4)^4 u^12)/20",
            "real u >= 3", &["u"], points("u", &[(3, 1), (5, 1)]), intro_g1f4),
        entry("BOYD_KO", "3F2(1/2,1/2,1/2;3/2,1;1/16) against (15/pi^2) L(f15,2); open conjecture",
            "none", &[], no_point(), boyd_ko),
        entry("BOYD_MAHLER", "m(1 + x + 1/x + y + 1/y) against (15/(4 pi^2)) L(f15,2); open conjecture",
            "none", &[], no_point(), boyd_mahler),
    ];
    let lemma_pts = || points("p", &[(1, 100), (1, 50), (1, 10)]);
    for (i, e) in LEMMA.iter().enumerate() {
        let mut c = entry(e.id, "rational parameterization at q = q_2(p(2+p)^3/(1+2p)^3)", "p in (0, 1/10]", &["p"],
            lemma_pts(), LEMMA_FNS[i]);
        c.expect = e.expect;
        c.branch_sensitive = true;
        v.push(c);
    }
    let mut c = control(entry("LEMMA23_s2_q_PERTURBED", "negative control: leading constant 16 replaced by 17",
        "p in (0, 1/10]", &["p"], lemma_pts(), lemma_s2_perturbed));
    c.branch_sensitive = true;
    v.push(c);

    let cor = Tolerance { abs: 5e-5, rel: 0.0 };
    let conj = Tolerance { abs: 1e-3, rel: 0.0 };
    for c in v.iter_mut() {
        match c.id {
            "COR25_A" | "COR25_B" => c.tolerance = cor,
            "BOYD_KO" | "BOYD_MAHLER" => {
                c.tolerance = conj;
                c.expect = Expect::Conjectural;
            }
            "BESSEL_LAPLACE" => c.tolerance = Tolerance { abs: 1e-10, rel: 1e-25 },
            _ => {}
        }
    }
    v.sort_by(|a, b| a.id.cmp(b.id));
    v
}
