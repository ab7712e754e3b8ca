use std::fmt::Write as _;
use std::path::PathBuf;

use hyperforge::catalog::{self, CheckResult, Env, Verdict};
use hyperforge::PrecisionContext;

use crate::{CacheArgs, Format, EXIT_CONFIG, EXIT_FAIL};

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    /// Run every entry (the default when no filter is given).
    #[arg(long, conflicts_with = "filter")]
    all: bool,
    /// Glob over check ids, e.g. 'PI_*'.
    #[arg(long)]
    filter: Option<String>,
    /// Working precision in bits.
    #[arg(long, default_value_t = 128)]
    bits: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Coefficients used for L-series values.
    #[arg(long, default_value_t = catalog::DEFAULT_LSERIES_N)]
    lseries_n: usize,
    #[command(flatten)]
    cache: CacheArgs,
    /// Include the perturbed negative controls.
    #[arg(long)]
    controls: bool,
    /// Evaluate at this point instead of the defaults, e.g. 'u=1/100'.
    /// Needs a filter that selects exactly one entry.
    #[arg(long)]
    at: Vec<String>,
}

fn config_error(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    EXIT_CONFIG
}

pub fn run(a: VerifyArgs) -> u8 {
    if a.bits < 64 {
        return config_error(format!("--bits must be at least 64, got {}", a.bits));
    }
    if a.threads == Some(0) {
        return config_error("--threads must be at least 1");
    }
    if a.lseries_n < 1000 {
        return config_error("--lseries-n must be at least 1000");
    }
    let ctx = match PrecisionContext::new(a.bits) {
        Ok(c) => c,
        Err(e) => return config_error(e),
    };
    let env = Env { ctx, lseries_n: a.lseries_n, cache_dir: Some(a.cache.resolve()) };
    let filter = if a.all { None } else { a.filter.as_deref() };
    let ids = match catalog::select(filter, a.controls) {
        Ok(ids) => ids,
        Err(e) => return config_error(e),
    };
    if ids.is_empty() {
        return config_error("no checks matched");
    }
    let points = if a.at.is_empty() {
        None
    } else {
        if ids.len() != 1 {
            return config_error(format!("--at needs a filter matching one check, matched {}", ids.len()));
        }
        let check = catalog::find_check(ids[0]).expect("selected id exists");
        match a.at.iter().map(|s| catalog::parse_point(check, s)).collect() {
            Ok(p) => Some(p),
            Err(e) => return config_error(e),
        }
    };

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = a.threads {
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return config_error(e),
    };
    let results = pool.install(|| match points {
        Some(p) => catalog::run_check(ids[0], Some(p), &env).map(|r| vec![r]),
        None => catalog::run_all(filter, a.controls, &env),
    });
    let results = match results {
        Ok(r) => r,
        Err(e) => return config_error(e),
    };

    let report = match a.format {
        Format::Json => serde_json::to_string_pretty(&results).expect("report serializes") + "\n",
        Format::Text => text_report(&results),
    };
    match &a.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &report) {
                return config_error(format!("{}: {e}", path.display()));
            }
            eprint!("{}", summary(&results));
        }
        None => {
            print!("{report}");
            if a.format == Format::Json {
                eprint!("{}", summary(&results));
            }
        }
    }
    // conjectural entries never decide the exit status
    let failed = results.iter().any(|r| !r.verdict.is_conjectural() && !r.as_expected());
    if failed {
        EXIT_FAIL
    } else {
        0
    }
}

fn text_report(results: &[CheckResult]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<24} {:<17} {:<14} {:>10} {:>10} {:>8}", "ID", "VERDICT", "POINT", "ABS", "REL", "MS");
    for r in results {
        let mark = if r.as_expected() { "" } else { "  <-- unexpected" };
        let _ = writeln!(
            s,
            "{:<24} {:<17} {:<14} {:>10} {:>10} {:>8}{mark}",
            r.id,
            r.verdict.as_str(),
            if r.params.is_empty() { "-" } else { &r.params },
            r.abs_residual,
            r.rel_residual,
            r.ms
        );
        if let Some(n) = &r.note {
            let _ = writeln!(s, "    {n}");
        }
    }
    s + &summary(results)
}

fn summary(results: &[CheckResult]) -> String {
    let count = |v: Verdict| results.iter().filter(|r| r.verdict == v).count();
    let unexpected = results.iter().filter(|r| !r.verdict.is_conjectural() && !r.as_expected()).count();
    let mut parts = Vec::new();
    for v in [
        Verdict::Pass,
        Verdict::Fail,
        Verdict::BranchError,
        Verdict::Skipped,
        Verdict::ConjecturalPass,
        Verdict::ConjecturalFail,
    ] {
        let n = count(v);
        if n > 0 {
            parts.push(format!("{n} {}", v.as_str()));
        }
    }
    format!("{} checks: {}; {unexpected} unexpected\n", results.len(), parts.join(", "))
}
