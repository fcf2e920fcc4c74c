//! Run settings, from flags and an optional `key = value` file.

use crate::HarnessError;
use isoq::rep::{BasisWindow, Convention, DEFAULT_Q};
use isoq::Signature;
use std::collections::BTreeMap;
use std::path::PathBuf;

/// Which backend a run selects; `None` in [`Options`] means both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendChoice {
    Exact,
    Numeric,
}

impl std::str::FromStr for BackendChoice {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, HarnessError> {
        match s {
            "exact" => Ok(BackendChoice::Exact),
            "numeric" => Ok(BackendChoice::Numeric),
            _ => Err(HarnessError::Config(format!("unknown backend `{s}` (exact, numeric)"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub backend: Option<BackendChoice>,
    pub qvals: Vec<f64>,
    pub signature: Signature,
    pub convention: Convention,
    pub window: BasisWindow,
    pub tolerance: f64,
    pub report: Option<PathBuf>,
    pub only: Option<String>,
    pub timing: bool,
    pub corpus: PathBuf,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            backend: None,
            qvals: DEFAULT_Q.to_vec(),
            signature: Signature::Euclid,
            convention: Convention::AdjointConsistent,
            window: BasisWindow::radius(6).expect("valid radius"),
            tolerance: 1e-10,
            report: None,
            only: None,
            timing: true,
            corpus: default_corpus(),
        }
    }
}

/// The corpus shipped with the workspace.
pub fn default_corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub const KEYS: [&str; 10] = [
    "backend",
    "q",
    "signature",
    "convention",
    "window",
    "tolerance",
    "report",
    "only",
    "no-timing",
    "corpus",
];

/// Parses a `key = value` file: one setting per line, `#` starts a
/// comment, keys are the long flag names.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, HarnessError> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| HarnessError::Config(format!("line {}: expected `key = value`", n + 1)))?;
        let k = k.trim().trim_start_matches("--");
        if !KEYS.contains(&k) {
            return Err(HarnessError::Config(format!("line {}: unknown key `{k}`", n + 1)));
        }
        out.insert(k.to_string(), v.trim().to_string());
    }
    Ok(out)
}

/// Builds options from a merged `key → value` map.
pub fn options(settings: &BTreeMap<String, String>) -> Result<Options, HarnessError> {
    let mut o = Options::default();
    let bad = |k: &str, v: &str, e: &dyn std::fmt::Display| HarnessError::Config(format!("bad {k} `{v}`: {e}"));
    for (k, v) in settings {
        match k.as_str() {
            "backend" => o.backend = Some(v.parse()?),
            "q" => {
                let q: f64 = v.parse().map_err(|e| bad(k, v, &e))?;
                if !(q > 0.0 && q < 1.0) {
                    return Err(HarnessError::Config(format!("q = {q} is outside (0, 1)")));
                }
                o.qvals = vec![q];
            }
            "signature" => o.signature = v.parse().map_err(|e| bad(k, v, &e))?,
            "convention" => o.convention = v.parse().map_err(|e| bad(k, v, &e))?,
            "window" => o.window = v.parse().map_err(|e| bad(k, v, &e))?,
            "tolerance" => o.tolerance = v.parse().map_err(|e| bad(k, v, &e))?,
            "report" => o.report = Some(PathBuf::from(v)),
            "only" => o.only = Some(v.clone()),
            "no-timing" => o.timing = !matches!(v.as_str(), "true" | "1" | "yes"),
            "corpus" => o.corpus = PathBuf::from(v),
            _ => return Err(HarnessError::Config(format!("unknown key `{k}`"))),
        }
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_settings() {
        let m = parse_config("# run\nq = 0.5\n--signature=lorentz  # inline\n\nno-timing = true\n").unwrap();
        let o = options(&m).unwrap();
        assert_eq!(o.qvals, [0.5]);
        assert_eq!(o.signature, Signature::Lorentz);
        assert!(!o.timing);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_config("q 0.5").is_err());
        assert!(parse_config("speed = 3").is_err());
        assert!(options(&parse_config("q = 1.5").unwrap()).is_err());
        assert!(options(&parse_config("convention = nice").unwrap()).is_err());
    }
}
