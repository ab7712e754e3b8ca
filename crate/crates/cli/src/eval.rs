use clap::ValueEnum;
use rug::Float;

use hyperforge::catalog::{decimal, DEFAULT_LSERIES_N};
use hyperforge::hypergeometric::{pfq_complex, pfq_unit};
use hyperforge::lseries::{lvalue_direct, lvalue_direct_heuristic, lvalue_smoothed, named_coeffs, NamedForm};
use hyperforge::mahler::{boyd_mahler_measure, domb_a, f_series, g_series, mahler_torus_integral, seq_b, MahlerFamily};
use hyperforge::qseries::{eisenstein_g, eisenstein_m, nome, s_func, t_func, Branch, QPoint};
use hyperforge::{AppValue, Cx, Error, ExactRational, PrecisionContext};

use crate::{CacheArgs, EXIT_CONFIG};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    Heuristic,
    Smoothed,
}

#[derive(clap::Args, Debug)]
#[command(after_help = "\
Functions and arguments (complex values as re,im):
  pfq UPPER LOWER X    e.g. pfq 1/2,1/2 1 1/4   (X = 1 sums at the unit point; '-' for an empty list)
  G Q | M Q            Eisenstein-type series at the nome q
  nome J ALPHA         J in 2,3,4
  s J Q | t J Q        modular functions (add --modulus for the |q| convention)
  f J U | g J U        Mahler-measure series
  mahler FAMILY U      g1 g2 f2 f3 f4 by torus quadrature (--grid); FAMILY boyd takes no U
  domb N | bseq N      exact sequence terms
  lvalue FORM S        FORM f, g or f15 (--method, --lseries-n)

Negative decimals are accepted as they are; put negative fractions or complex
values after `--`, e.g. `eval f 3 -- -1000/3` or `eval G -- -0.05,0.02`.")]
pub struct EvalArgs {
    function: String,
    #[arg(allow_negative_numbers = true)]
    args: Vec<String>,
    #[arg(long, default_value_t = 128)]
    bits: u32,
    /// Grid points per dimension for torus quadrature.
    #[arg(long, default_value_t = 64)]
    grid: usize,
    #[arg(long, value_enum, default_value_t = Method::Direct)]
    method: Method,
    #[arg(long, default_value_t = DEFAULT_LSERIES_N)]
    lseries_n: usize,
    /// Take fractional powers of q on |q| instead of the principal branch.
    #[arg(long)]
    modulus: bool,
    #[command(flatten)]
    cache: CacheArgs,
}

enum Out {
    Real(AppValue<Float>),
    Complex(AppValue<Cx>),
    Integer(String),
}

pub fn run(a: EvalArgs) -> u8 {
    if a.bits < 64 {
        eprintln!("error: --bits must be at least 64, got {}", a.bits);
        return EXIT_CONFIG;
    }
    let ctx = match PrecisionContext::new(a.bits) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    match evaluate(&a, &ctx) {
        Ok(out) => {
            let digits = ctx.decimal_digits();
            match out {
                Out::Integer(s) => println!("{s}"),
                Out::Real(v) => println!("{} +/- {} [{}]", decimal(&v.value, digits), decimal(&v.err, 3), rigor(&v)),
                Out::Complex(v) => println!(
                    "{} + {}i +/- {} [{}]",
                    decimal(&v.value.re, digits),
                    decimal(&v.value.im, digits),
                    decimal(&v.err, 3),
                    rigor(&v)
                ),
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    }
}

fn rigor<T: hyperforge::precision::Scalar>(v: &AppValue<T>) -> &'static str {
    match v.rigor {
        hyperforge::Rigor::Rigorous => "rigorous",
        hyperforge::Rigor::Heuristic => "heuristic",
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn real(s: &str, prec: u32) -> Result<Float, Error> {
    if let Ok(r) = s.parse::<ExactRational>() {
        return Ok(r.to_float(prec));
    }
    Float::parse(s).map(|p| Float::with_val(prec, p)).map_err(|_| bad(format!("not a number: `{s}`")))
}

fn complex(s: &str, prec: u32) -> Result<Cx, Error> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Cx::new(real(re, prec)?, real(im, prec)?)),
        None => Ok(Cx::from_real(real(s, prec)?)),
    }
}

fn rationals(s: &str) -> Result<Vec<ExactRational>, Error> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split(',').map(|p| p.trim().parse()).collect()
}

fn index(s: &str) -> Result<u32, Error> {
    s.parse().map_err(|_| bad(format!("expected a small positive integer, got `{s}`")))
}

fn arity(a: &EvalArgs, n: usize) -> Result<(), Error> {
    if a.args.len() != n {
        return Err(bad(format!("{} takes {n} argument(s), got {}", a.function, a.args.len())));
    }
    Ok(())
}

fn evaluate(a: &EvalArgs, ctx: &PrecisionContext) -> Result<Out, Error> {
    let prec = ctx.prec();
    let branch = if a.modulus { Branch::Modulus } else { Branch::Principal };
    let args = &a.args;
    let q_at = |s: &str| complex(s, prec).and_then(QPoint::new);
    Ok(match a.function.as_str() {
        "pfq" => {
            arity(a, 3)?;
            let (up, low) = (rationals(&args[0])?, rationals(&args[1])?);
            if args[2].trim() == "1" {
                Out::Real(pfq_unit(&up, &low, ctx)?)
            } else {
                let v = pfq_complex(&up, &low, &complex(&args[2], prec)?, ctx)?;
                if v.value.is_real() {
                    Out::Real(v.re())
                } else {
                    Out::Complex(v)
                }
            }
        }
        "G" => {
            arity(a, 1)?;
            Out::Real(eisenstein_g(&q_at(&args[0])?, ctx)?)
        }
        "M" => {
            arity(a, 1)?;
            Out::Complex(eisenstein_m(&q_at(&args[0])?, ctx)?)
        }
        "nome" => {
            arity(a, 2)?;
            Out::Real(nome(index(&args[0])?, &real(&args[1], prec)?, ctx)?)
        }
        "s" | "t" => {
            arity(a, 2)?;
            let j = index(&args[0])?;
            let q = q_at(&args[1])?;
            Out::Complex(if a.function == "s" { s_func(j, &q, branch, ctx)? } else { t_func(j, &q, branch, ctx)? })
        }
        "f" | "g" => {
            arity(a, 2)?;
            let j = index(&args[0])?;
            let u = complex(&args[1], prec)?;
            Out::Real(if a.function == "f" { f_series(j, &u, ctx)? } else { g_series(j, &u, ctx)? })
        }
        "mahler" => {
            if args.first().map(String::as_str) == Some("boyd") {
                arity(a, 1)?;
                return Ok(Out::Real(boyd_mahler_measure(ctx)?));
            }
            arity(a, 2)?;
            let fam = MahlerFamily::parse(&args[0]).ok_or_else(|| bad(format!("unknown family `{}`", args[0])))?;
            let u = real(&args[1], 53)?.to_f64();
            if !(u > 0.0 && u.is_finite()) {
                return Err(Error::Domain(format!("mahler needs real u > 0, got {u}")));
            }
            let (p, k) = fam.polynomial(u);
            Out::Real(mahler_torus_integral(&p, a.grid, ctx)?.scale(&ctx.float(k)))
        }
        "domb" | "bseq" => {
            arity(a, 1)?;
            let n: usize = args[0].parse().map_err(|_| bad(format!("expected n >= 0, got `{}`", args[0])))?;
            Out::Integer(if a.function == "domb" { domb_a(n) } else { seq_b(n) }.to_string())
        }
        "lvalue" => {
            arity(a, 2)?;
            let form = NamedForm::parse(&args[0]).ok_or_else(|| bad(format!("unknown form `{}` (f, g, f15)", args[0])))?;
            let s: i64 = args[1].parse().map_err(|_| bad(format!("expected an integer s, got `{}`", args[1])))?;
            let dir = a.cache.resolve();
            let cs = named_coeffs(form, a.lseries_n, Some(&dir))?;
            Out::Real(match a.method {
                Method::Direct => lvalue_direct(&cs, s, ctx)?,
                Method::Heuristic => lvalue_direct_heuristic(&cs, s, ctx)?,
                Method::Smoothed => lvalue_smoothed(&cs, s, form.level(), form.weight(), form.sign(), ctx)?,
            })
        }
        other => return Err(bad(format!("unknown function `{other}`"))),
    })
}
