//! Run configuration: flat `key = value` text.
//!
//! ```text
//! # comments start with '#'
//! seed = 42
//! samples = 32
//! fixtures = [euclidean, randers-0.3]
//! checks = [CHK-01, CHK-07]
//! tolerance.CHK-15 = 1e-7
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;

use finslerlab_core::calculus::{DEFAULT_SAMPLES, DEFAULT_SEED};
use finslerlab_core::{Fixture, GeomError, Result};

use crate::registry;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub fixtures: Vec<Fixture>,
    pub seed: u64,
    pub samples: usize,
    pub tolerances: BTreeMap<String, f64>,
    /// Check ids to run, in registry order.
    pub checks: Vec<String>,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            fixtures: Fixture::ALL.to_vec(),
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            tolerances: BTreeMap::new(),
            checks: registry::all_ids(),
            output: None,
        }
    }
}

impl RunConfig {
    pub fn tolerance_for(&self, id: &str, default: f64) -> f64 {
        self.tolerances.get(id).copied().unwrap_or(default)
    }

    /// Restricts the check set to `ids`, rejecting unknown ones.
    pub fn retain_checks(&mut self, ids: &[String]) -> Result<()> {
        for id in ids {
            if !registry::is_known(id) {
                return Err(GeomError::BadConfig(format!("unknown check id `{id}`")));
            }
        }
        self.checks.retain(|c| ids.contains(c));
        Ok(())
    }
}

fn bad(line: usize, msg: impl std::fmt::Display) -> GeomError {
    GeomError::BadConfig(format!("line {line}: {msg}"))
}

fn parse_list(line: usize, key: &str, value: &str) -> Result<Vec<String>> {
    let inner = value
        .strip_prefix('[')
        .and_then(|v| v.strip_suffix(']'))
        .ok_or_else(|| bad(line, format!("`{key}` expects a list like [a, b]")))?;
    Ok(inner
        .split(',')
        .map(|s| s.trim().trim_matches('"').to_string())
        .filter(|s| !s.is_empty())
        .collect())
}

pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    let mut seen = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .ok_or_else(|| bad(line, format!("expected `key = value`, got `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if seen.iter().any(|k| k == key) {
            return Err(bad(line, format!("duplicate key `{key}`")));
        }
        seen.push(key.to_string());
        match key {
            "seed" => {
                cfg.seed = value
                    .parse()
                    .map_err(|_| bad(line, format!("seed: `{value}` is not a non-negative integer")))?
            }
            "samples" => {
                let n: usize = value
                    .parse()
                    .map_err(|_| bad(line, format!("samples: `{value}` is not a non-negative integer")))?;
                if n == 0 {
                    return Err(bad(line, "samples must be at least 1"));
                }
                cfg.samples = n;
            }
            "fixtures" => {
                let mut out = Vec::new();
                for id in parse_list(line, key, value)? {
                    let fx = Fixture::from_id(&id)
                        .ok_or_else(|| bad(line, format!("fixtures: unknown fixture id `{id}`")))?;
                    if !out.contains(&fx) {
                        out.push(fx);
                    }
                }
                if out.is_empty() {
                    return Err(bad(line, "fixtures: list is empty"));
                }
                out.sort();
                cfg.fixtures = out;
            }
            "checks" => {
                let ids = parse_list(line, key, value)?;
                if ids.is_empty() {
                    return Err(bad(line, "checks: list is empty"));
                }
                cfg.retain_checks(&ids).map_err(|e| bad(line, format!("checks: {e}")))?;
            }
            _ => {
                let Some(id) = key.strip_prefix("tolerance.") else {
                    return Err(bad(line, format!("unknown key `{key}`")));
                };
                if !registry::is_known(id) {
                    return Err(bad(line, format!("{key}: unknown check id `{id}`")));
                }
                let tol: f64 = value
                    .parse()
                    .map_err(|_| bad(line, format!("{key}: `{value}` is not a number")))?;
                if !(tol > 0.0) {
                    return Err(bad(line, format!("{key}: tolerance must be positive")));
                }
                cfg.tolerances.insert(id.to_string(), tol);
            }
        }
    }
    Ok(cfg)
}
