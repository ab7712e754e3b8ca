use super::product::{eta_quotient_value, Branch, EtaQuotientSpec};
use super::QPoint;
use crate::error::{Error, Result};
use crate::precision::value::err_float;
use crate::precision::{rat, AppValue, Cx, PrecisionContext, Rigor};

/// Eta-quotient data of v_1 and v_2.
pub fn v_spec(j: u32) -> Result<EtaQuotientSpec> {
    match j {
        1 => EtaQuotientSpec::new([(1, 6), (2, -6), (3, -6), (6, 6)], rat(1, 2)),
        2 => EtaQuotientSpec::new([(2, 6), (3, 2), (12, 4), (1, -2), (4, -4), (6, -6)], rat(1, 2)),
        _ => Err(Error::InvalidArgument(format!("v_{j} is not defined; use 1 or 2"))),
    }
}

pub fn v_func(j: u32, q: &QPoint, branch: Branch, ctx: &PrecisionContext) -> Result<AppValue<Cx>> {
    eta_quotient_value(&v_spec(j)?, q, branch, ctx)
}

fn one(ctx: &PrecisionContext) -> AppValue<Cx> {
    AppValue::new(Cx::one(ctx.prec()), err_float(0), Rigor::Rigorous)
}

/// t_1 = v_1 + 1/v_1, t_2 = -(v_2 - 1/v_2)^2.
pub fn t_func(j: u32, q: &QPoint, branch: Branch, ctx: &PrecisionContext) -> Result<AppValue<Cx>> {
    let v = v_func(j, q, branch, ctx)?;
    let inv = one(ctx).div(&v);
    Ok(match j {
        1 => v.add(&inv),
        _ => v.sub(&inv).powi(2).neg(),
    })
}

fn eta(q: &QPoint, factors: &[(u32, i64)], ctx: &PrecisionContext) -> Result<AppValue<Cx>> {
    eta_quotient_value(&EtaQuotientSpec::new(factors.iter().copied(), rat(0, 1))?, q, Branch::Principal, ctx)
}

/// s_2, s_3, s_4. The branch applies to the overall 1/q factor.
pub fn s_func(j: u32, q: &QPoint, branch: Branch, ctx: &PrecisionContext) -> Result<AppValue<Cx>> {
    let qv = AppValue::exact(q.value().clone());
    let inv_q = match branch {
        Branch::Principal => one(ctx).div(&qv),
        Branch::Modulus => one(ctx).div(&AppValue::exact(Cx::from_real(q.modulus()))),
    };
    let k = |x: i64| ctx.float(x);
    let body = match j {
        // (-q; q^2)^24 = (q^2;q^2)^48 / ((q;q)^24 (q^4;q^4)^24)
        2 => eta(q, &[(2, 48), (1, -24), (4, -24)], ctx)?,
        3 => {
            let p = eta(q, &[(3, 6), (1, -6)], ctx)?;
            qv.mul(&p).scale(&k(27)).add(&one(ctx).div(&p)).powi(2)
        }
        4 => {
            let a = eta(q, &[(1, 4), (4, 8), (2, -12)], ctx)?;
            let pre = eta(q, &[(2, 24), (1, -24)], ctx)?;
            pre.mul(&qv.mul(&a).scale(&k(16)).add(&one(ctx).div(&a)).powi(4))
        }
        _ => return Err(Error::InvalidArgument(format!("s_{j} is not defined; use 2, 3 or 4"))),
    };
    Ok(inv_q.mul(&body))
}
