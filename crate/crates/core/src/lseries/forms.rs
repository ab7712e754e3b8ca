use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use super::cache::{read_cache, write_cache};
use super::coeffs::{eta_coeffs, CoefficientSeries};
use crate::error::{Error, Result};
use crate::precision::rat;
use crate::qseries::EtaQuotientSpec;

/// The three eta-product cusp forms whose L-values enter the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedForm {
    /// eta(z)^2 eta(2z) eta(4z) eta(8z)^2, weight 3, level 8.
    F,
    /// eta(2z)^3 eta(6z)^3, weight 3, level 12.
    G,
    /// eta(z) eta(3z) eta(5z) eta(15z), weight 2, level 15.
    F15,
}

impl NamedForm {
    pub const ALL: [NamedForm; 3] = [NamedForm::F, NamedForm::G, NamedForm::F15];

    pub fn spec(self) -> EtaQuotientSpec {
        let factors: &[(u32, i64)] = match self {
            NamedForm::F => &[(1, 2), (2, 1), (4, 1), (8, 2)],
            NamedForm::G => &[(2, 3), (6, 3)],
            NamedForm::F15 => &[(1, 1), (3, 1), (5, 1), (15, 1)],
        };
        EtaQuotientSpec::new(factors.iter().copied(), rat(1, 1)).expect("valid spec")
    }

    pub fn level(self) -> u32 {
        match self {
            NamedForm::F => 8,
            NamedForm::G => 12,
            NamedForm::F15 => 15,
        }
    }

    pub fn weight(self) -> u32 {
        match self {
            NamedForm::F | NamedForm::G => 3,
            NamedForm::F15 => 2,
        }
    }

    /// Root number; confirmed by the smoothing-stability scan in the tests.
    pub fn sign(self) -> i32 {
        1
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedForm::F => "f",
            NamedForm::G => "g",
            NamedForm::F15 => "f15",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(s))
    }

    pub fn cache_file_name(self) -> String {
        format!("{}.etacoef", self.name())
    }
}

type Memo = Mutex<HashMap<(NamedForm, usize), Arc<CoefficientSeries>>>;
static MEMO: OnceLock<Memo> = OnceLock::new();

/// Coefficients a_0..a_N of a named form, memoized per process. When a cache
/// directory holds a file with at least N coefficients it is used instead of
/// recomputing.
pub fn named_coeffs(form: NamedForm, n: usize, cache_dir: Option<&Path>) -> Result<Arc<CoefficientSeries>> {
    let memo = MEMO.get_or_init(Default::default);
    // held across the computation so parallel checks share one build
    let mut memo = memo.lock().expect("memo lock");
    if let Some(cs) = memo.get(&(form, n)) {
        return Ok(cs.clone());
    }
    let mut cs = None;
    if let Some(dir) = cache_dir {
        let path = dir.join(form.cache_file_name());
        if path.exists() {
            if let Ok(v) = read_cache(&path) {
                if v.len() >= n {
                    let mut coeffs = Vec::with_capacity(n + 1);
                    coeffs.push(0);
                    coeffs.extend_from_slice(&v[..n]);
                    cs = Some(CoefficientSeries::from_coeffs(coeffs, form.spec()));
                }
            }
        }
    }
    let cs = match cs {
        Some(c) => c,
        None => eta_coeffs(&form.spec(), n)?,
    };
    let cs = Arc::new(cs);
    memo.insert((form, n), cs.clone());
    Ok(cs)
}

/// Computes and writes the cache file for one form.
pub fn build_cache(form: NamedForm, n: usize, dir: &Path) -> Result<std::path::PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
    let cs = eta_coeffs(&form.spec(), n)?;
    let path = dir.join(form.cache_file_name());
    write_cache(&path, &cs.coeffs[1..])?;
    Ok(path)
}

/// Recomputes a form and compares with its cache file. Returns the number of
/// coefficients checked.
pub fn verify_cache(form: NamedForm, dir: &Path) -> Result<usize> {
    let path = dir.join(form.cache_file_name());
    let stored = read_cache(&path)?;
    let fresh = eta_coeffs(&form.spec(), stored.len())?;
    if let Some(i) = stored.iter().zip(&fresh.coeffs[1..]).position(|(a, b)| a != b) {
        return Err(Error::Cache(format!("{}: coefficient a_{} differs", path.display(), i + 1)));
    }
    Ok(stored.len())
}
