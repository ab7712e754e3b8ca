//! Registry of numerically checkable identities, each evaluated as a
//! residual between two independently computed sides.

mod registry;
pub mod series;

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::precision::value::err_float;
use crate::precision::{AppValue, Cx, ExactRational, PrecisionContext, Rigor};
use crate::qseries::Branch;

pub use registry::{pi_series, PiSeries};

/// Default number of coefficients for L-series sums.
pub const DEFAULT_LSERIES_N: usize = 10_000_000;

/// Outcome of a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    ConjecturalPass,
    ConjecturalFail,
    Skipped,
    BranchError,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::ConjecturalPass => "CONJECTURAL_PASS",
            Verdict::ConjecturalFail => "CONJECTURAL_FAIL",
            Verdict::Skipped => "SKIPPED",
            Verdict::BranchError => "BRANCH_ERROR",
            Verdict::Fail => "FAIL",
        }
    }

    pub fn is_conjectural(self) -> bool {
        matches!(self, Verdict::ConjecturalPass | Verdict::ConjecturalFail)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a healthy run reports for an entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Expect {
    Pass,
    /// Negative control.
    Fail,
    /// The printed formula only holds under the modulus convention for q^r.
    BranchError,
    /// Open conjecture; reported, never asserted.
    Conjectural,
}

impl Expect {
    /// Whether a verdict is the documented outcome for this expectation.
    pub fn accepts(self, v: Verdict) -> bool {
        match self {
            Expect::Pass => v == Verdict::Pass,
            Expect::Fail => v == Verdict::Fail,
            Expect::BranchError => v == Verdict::BranchError,
            Expect::Conjectural => v.is_conjectural(),
        }
    }
}

/// PASS needs residual < max(abs, rel * max(|lhs|, |rhs|), 10 * (err_lhs + err_rhs)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

/// One sample point: named exact parameters.
pub type Point = Vec<(String, ExactRational)>;

/// Both sides of an identity at one point.
#[derive(Debug, Clone)]
pub struct Sides {
    pub lhs: AppValue<Cx>,
    pub rhs: AppValue<Cx>,
}

impl Sides {
    pub fn real(lhs: AppValue<Float>, rhs: AppValue<Float>) -> Self {
        Self { lhs: lhs.to_cx(), rhs: rhs.to_cx() }
    }
}

/// Shared inputs for evaluating checks.
#[derive(Debug, Clone)]
pub struct Env {
    pub ctx: PrecisionContext,
    pub lseries_n: usize,
    pub cache_dir: Option<PathBuf>,
}

impl Env {
    pub fn new(ctx: PrecisionContext) -> Self {
        Self { ctx, lseries_n: DEFAULT_LSERIES_N, cache_dir: None }
    }
}

type EvalFn = fn(&Point, Branch, &Env) -> Result<Sides>;

/// A registry entry.
#[derive(Clone)]
pub struct IdentityCheck {
    pub id: &'static str,
    /// Where the identity comes from and what it states, in brief.
    pub anchor: &'static str,
    /// Parameter names and the domain the defaults are drawn from.
    pub domain: &'static str,
    pub params: &'static [&'static str],
    pub defaults: Vec<Point>,
    pub tolerance: Tolerance,
    pub expect: Expect,
    /// Negative controls only run when asked for.
    pub control: bool,
    /// Evaluate again with the modulus branch when the principal one fails.
    pub branch_sensitive: bool,
    eval: EvalFn,
}

impl std::fmt::Debug for IdentityCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityCheck").field("id", &self.id).field("defaults", &self.defaults).finish()
    }
}

impl IdentityCheck {
    pub fn evaluate(&self, point: &Point, branch: Branch, env: &Env) -> Result<Sides> {
        (self.eval)(point, branch, env)
    }
}

/// A value as decimal strings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportValue {
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub imag: Option<String>,
    pub err: String,
    pub rigor: Rigor,
}

impl ReportValue {
    pub fn from_app(v: &AppValue<Cx>, digits: usize) -> Self {
        let imag = if v.value.im.is_zero() { None } else { Some(decimal(&v.value.im, digits)) };
        Self { value: decimal(&v.value.re, digits), imag, err: decimal(&v.err, 3), rigor: v.rigor }
    }
}

/// Decimal rendering that round-trips at the given number of digits.
pub fn decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    x.to_string_radix(10, Some(digits.max(1)))
}

/// Per-point summary kept alongside the deciding point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSummary {
    pub params: String,
    pub abs_residual: String,
    pub rel_residual: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Result of running one registry entry over its sample points. The top-level
/// values describe the deciding (worst) point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub params: String,
    pub lhs: Option<ReportValue>,
    pub rhs: Option<ReportValue>,
    pub abs_residual: String,
    pub rel_residual: String,
    pub verdict: Verdict,
    pub expected: Expect,
    pub bits: u32,
    pub ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub points: Vec<PointSummary>,
    /// Residuals as numbers, for programmatic use; not serialized.
    #[serde(skip)]
    pub abs_residual_value: f64,
    #[serde(skip)]
    pub rel_residual_value: f64,
    #[serde(skip)]
    pub threshold: f64,
}

impl CheckResult {
    /// Whether this result is the documented outcome of its entry.
    pub fn as_expected(&self) -> bool {
        self.expected.accepts(self.verdict)
    }
}

/// Full registry, ordered by id; negative controls included.
pub fn list_checks() -> &'static [IdentityCheck] {
    registry::registry()
}

pub fn find_check(id: &str) -> Result<&'static IdentityCheck> {
    list_checks().iter().find(|c| c.id == id).ok_or_else(|| Error::UnknownId(id.to_string()))
}

/// Parses "name=value,name=value" against an entry's parameter names.
pub fn parse_point(check: &IdentityCheck, text: &str) -> Result<Point> {
    let mut point = Point::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("expected name=value, got `{part}`")))?;
        let k = k.trim();
        if !check.params.contains(&k) {
            return Err(Error::InvalidArgument(format!("{} takes parameters {:?}, not `{k}`", check.id, check.params)));
        }
        point.push((k.to_string(), v.trim().parse()?));
    }
    if point.len() != check.params.len() {
        return Err(Error::InvalidArgument(format!("{} needs parameters {:?}", check.id, check.params)));
    }
    Ok(point)
}

pub fn format_point(p: &Point) -> String {
    p.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
}

struct Outcome {
    summary: PointSummary,
    lhs: Option<ReportValue>,
    rhs: Option<ReportValue>,
    abs: f64,
    rel: f64,
    threshold: f64,
}

/// Bits below working precision that a rounded evaluation may lose.
const PRECISION_SLACK: u32 = 24;

fn residuals(s: &Sides, tol: &Tolerance, working_bits: u32) -> (Float, Float, Float) {
    let d = (&s.lhs.value - &s.rhs.value).abs();
    let scale = err_float(s.lhs.value.abs()).max(&err_float(s.rhs.value.abs()));
    let abs = err_float(d);
    let rel = if scale.is_zero() { abs.clone() } else { err_float(&abs / &scale) };
    let mut thr = err_float(tol.abs).max(&err_float(&scale * tol.rel));
    // no tolerance below what the working precision can resolve
    let floor = err_float(&scale) >> working_bits.saturating_sub(PRECISION_SLACK);
    thr = thr.max(&floor);
    let budget = err_float(&s.lhs.err + &s.rhs.err) * 10u32;
    if budget.is_finite() {
        thr = thr.max(&budget);
    } else {
        // an unbounded error radius proves nothing
        thr = err_float(-1);
    }
    (abs, rel, thr)
}

fn run_point(check: &IdentityCheck, point: &Point, env: &Env) -> Outcome {
    let digits = env.ctx.decimal_digits();
    let params = format_point(point);
    let skipped = |note: String| Outcome {
        summary: PointSummary {
            params: params.clone(),
            abs_residual: "NaN".into(),
            rel_residual: "NaN".into(),
            verdict: Verdict::Skipped,
            note: Some(note),
        },
        lhs: None,
        rhs: None,
        abs: f64::NAN,
        rel: f64::NAN,
        threshold: f64::NAN,
    };
    let sides = match check.evaluate(point, Branch::Principal, env) {
        Ok(s) => s,
        Err(e) => return skipped(e.to_string()),
    };
    let (abs, rel, thr) = residuals(&sides, &check.tolerance, env.ctx.working_bits());
    let mut verdict = if abs < thr { Verdict::Pass } else { Verdict::Fail };
    let mut note = None;
    if verdict == Verdict::Fail && check.branch_sensitive {
        if let Ok(alt) = check.evaluate(point, Branch::Modulus, env) {
            let (a2, _, t2) = residuals(&alt, &check.tolerance, env.ctx.working_bits());
            if a2 < t2 {
                verdict = Verdict::BranchError;
                note = Some(format!(
                    "holds when q^r is taken on |q| (residual {})",
                    decimal(&a2, 3)
                ));
            }
        }
    }
    if check.expect == Expect::Conjectural {
        verdict = if verdict == Verdict::Pass { Verdict::ConjecturalPass } else { Verdict::ConjecturalFail };
    }
    Outcome {
        summary: PointSummary {
            params,
            abs_residual: decimal(&abs, 3),
            rel_residual: decimal(&rel, 3),
            verdict,
            note,
        },
        lhs: Some(ReportValue::from_app(&sides.lhs, digits)),
        rhs: Some(ReportValue::from_app(&sides.rhs, digits)),
        abs: abs.to_f64(),
        rel: rel.to_f64(),
        threshold: thr.to_f64(),
    }
}

/// Runs one entry at the given points, or at its defaults.
pub fn run_check(id: &str, points: Option<Vec<Point>>, env: &Env) -> Result<CheckResult> {
    let check = find_check(id)?;
    let pts = points.unwrap_or_else(|| check.defaults.clone());
    let start = Instant::now();
    let outcomes: Vec<Outcome> = pts.iter().map(|p| run_point(check, p, env)).collect();
    let ms = start.elapsed().as_millis() as u64;
    // worst verdict first, then the point closest to failing
    let key = |o: &Outcome| {
        let ratio = if o.threshold > 0.0 { o.abs / o.threshold } else { f64::INFINITY };
        (o.summary.verdict, if ratio.is_nan() { 0.0 } else { ratio })
    };
    let worst = outcomes
        .iter()
        .max_by(|a, b| key(a).partial_cmp(&key(b)).unwrap_or(std::cmp::Ordering::Equal))
        .ok_or_else(|| Error::InvalidArgument(format!("{id}: no sample points")))?;
    Ok(CheckResult {
        id: check.id.to_string(),
        params: worst.summary.params.clone(),
        lhs: worst.lhs.clone(),
        rhs: worst.rhs.clone(),
        abs_residual: worst.summary.abs_residual.clone(),
        rel_residual: worst.summary.rel_residual.clone(),
        verdict: worst.summary.verdict,
        expected: check.expect,
        bits: env.ctx.working_bits(),
        ms,
        note: worst.summary.note.clone(),
        abs_residual_value: worst.abs,
        rel_residual_value: worst.rel,
        threshold: worst.threshold,
        points: outcomes.into_iter().map(|o| o.summary).collect(),
    })
}

/// Ids matched by a glob (all non-control entries when `None`). Controls are
/// included when `controls` is set or when the pattern names them exactly.
pub fn select(filter: Option<&str>, controls: bool) -> Result<Vec<&'static str>> {
    let pat = match filter {
        Some(f) => Some(glob::Pattern::new(f).map_err(|e| Error::InvalidArgument(format!("bad filter `{f}`: {e}")))?),
        None => None,
    };
    Ok(list_checks()
        .iter()
        .filter(|c| match &pat {
            Some(p) => p.matches(c.id) && (!c.control || controls || p.as_str() == c.id),
            None => !c.control || controls,
        })
        .map(|c| c.id)
        .collect())
}

/// Runs every selected entry at its defaults; results sorted by id.
pub fn run_all(filter: Option<&str>, controls: bool, env: &Env) -> Result<Vec<CheckResult>> {
    let ids = select(filter, controls)?;
    let mut out: Vec<CheckResult> = ids.par_iter().map(|id| run_check(id, None, env)).collect::<Result<_>>()?;
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}
