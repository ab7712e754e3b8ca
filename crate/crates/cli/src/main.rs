mod cache;
mod eval;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Exit status for bad flags, arguments or domains.
pub const EXIT_CONFIG: u8 = 2;
/// Exit status for a failed check or a corrupt cache.
pub const EXIT_FAIL: u8 = 1;

#[derive(Parser)]
#[command(name = "hyperforge", version, about = "Verify hypergeometric, q-series and Mahler-measure identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(clap::Args, Clone, Debug)]
pub struct CacheArgs {
    /// Coefficient cache directory [env: HYPERFORGE_CACHE_DIR]
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
}

impl CacheArgs {
    /// --cache-dir, then HYPERFORGE_CACHE_DIR, then ./hyperforge-cache.
    pub fn resolve(&self) -> PathBuf {
        self.cache_dir
            .clone()
            .or_else(|| std::env::var_os("HYPERFORGE_CACHE_DIR").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("hyperforge-cache"))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run catalog checks and report verdicts.
    Verify(verify::VerifyArgs),
    /// Evaluate a single function and print value, error radius and rigor.
    Eval(eval::EvalArgs),
    /// Build, verify or clear the eta-coefficient caches.
    Cache(cache::CacheCmd),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG } else { 0 });
        }
    };
    let code = match cli.command {
        Command::Verify(a) => verify::run(a),
        Command::Eval(a) => eval::run(a),
        Command::Cache(a) => cache::run(a),
    };
    ExitCode::from(code)
}
