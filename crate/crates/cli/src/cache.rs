use hyperforge::catalog::DEFAULT_LSERIES_N;
use hyperforge::lseries::{build_cache, verify_cache, NamedForm};

use crate::{CacheArgs, EXIT_CONFIG, EXIT_FAIL};

#[derive(clap::Args, Debug)]
pub struct CacheCmd {
    #[command(subcommand)]
    action: Action,
}

#[derive(clap::Subcommand, Debug)]
enum Action {
    /// Compute and write coefficient files for f, g and f15.
    Build {
        /// Number of coefficients per form.
        #[arg(long, default_value_t = DEFAULT_LSERIES_N)]
        n: usize,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Recompute and compare every cached coefficient.
    Verify {
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Delete the coefficient files.
    Clear {
        #[command(flatten)]
        cache: CacheArgs,
    },
}

pub fn run(c: CacheCmd) -> u8 {
    match c.action {
        Action::Build { n, cache } => {
            if n == 0 {
                eprintln!("error: --n must be positive");
                return EXIT_CONFIG;
            }
            let dir = cache.resolve();
            for form in NamedForm::ALL {
                match build_cache(form, n, &dir) {
                    Ok(path) => println!("wrote {} ({n} coefficients)", path.display()),
                    Err(e) => {
                        eprintln!("error: {}: {e}", form.name());
                        return EXIT_FAIL;
                    }
                }
            }
            0
        }
        Action::Verify { cache } => {
            let dir = cache.resolve();
            let mut code = 0;
            for form in NamedForm::ALL {
                match verify_cache(form, &dir) {
                    Ok(n) => println!("{}: ok ({n} coefficients)", form.cache_file_name()),
                    Err(e) => {
                        eprintln!("{}: {e}", form.cache_file_name());
                        code = EXIT_FAIL;
                    }
                }
            }
            code
        }
        Action::Clear { cache } => {
            let dir = cache.resolve();
            for form in NamedForm::ALL {
                let path = dir.join(form.cache_file_name());
                match std::fs::remove_file(&path) {
                    Ok(()) => println!("removed {}", path.display()),
                    Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
                    Err(e) => {
                        eprintln!("error: {}: {e}", path.display());
                        return EXIT_FAIL;
                    }
                }
            }
            0
        }
    }
}
