//! Suite execution and JSON-lines reporting.

use std::time::{Duration, Instant};

use finslerlab_core::calculus::{sample_slit_points, SampleConfig};
use finslerlab_core::{validate_finsler, FinslerStructure, Fixture, Result, SampleGrid};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::registry::{self, CheckSpec, Ctx};

/// One report record. `wall_time` stays out of the serialized form so that
/// identical configs give byte-identical reports.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub fixture: String,
    pub samples: usize,
    /// Non-finite residuals serialize as `null`.
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl CheckResult {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plain record serializes")
    }
}

struct Prepared {
    fixture: Fixture,
    grid: SampleGrid,
    structure: Result<FinslerStructure>,
}

fn prepare(fixture: Fixture, cfg: &RunConfig) -> Result<Prepared> {
    let grid = sample_slit_points(2, cfg.samples, cfg.seed, SampleConfig::default())?;
    let structure = validate_finsler(&fixture.energy(2), &grid);
    Ok(Prepared { fixture, grid, structure })
}

fn run_one(spec: &CheckSpec, prep: &Prepared, cfg: &RunConfig) -> CheckResult {
    let start = Instant::now();
    let tolerance = cfg.tolerance_for(spec.id, spec.tolerance);
    let outcome = prep.structure.as_ref().map_err(Clone::clone).and_then(|structure| {
        let cx = Ctx {
            fixture: prep.fixture,
            structure,
            grid: &prep.grid,
            seed: cfg.seed,
            tolerance,
        };
        (spec.run)(&cx)
    });
    let (max_residual, error, note) = match outcome {
        Ok(o) => (o.residual, None, o.note),
        Err(e) => (f64::INFINITY, Some(e.to_string()), None),
    };
    CheckResult {
        check: spec.id.to_string(),
        fixture: prep.fixture.id().to_string(),
        samples: prep.grid.len(),
        max_residual,
        tolerance,
        pass: error.is_none() && max_residual < tolerance,
        error,
        note,
        wall_time: start.elapsed(),
    }
}

/// Runs every selected (check, fixture) pair, in parallel, and returns the
/// records sorted by check id then fixture id.
pub fn run_checks(cfg: &RunConfig) -> Result<Vec<CheckResult>> {
    let prepared = cfg
        .fixtures
        .iter()
        .map(|&f| prepare(f, cfg))
        .collect::<Result<Vec<_>>>()?;
    let specs: Vec<&CheckSpec> = cfg.checks.iter().filter_map(|id| registry::find(id)).collect();
    let jobs: Vec<(&CheckSpec, &Prepared)> = specs
        .iter()
        .flat_map(|s| prepared.iter().map(move |p| (*s, p)))
        .collect();
    let mut results: Vec<CheckResult> = jobs.par_iter().map(|(s, p)| run_one(s, p, cfg)).collect();
    results.sort_by(|a, b| (&a.check, &a.fixture).cmp(&(&b.check, &b.fixture)));
    Ok(results)
}

pub fn all_pass(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.pass)
}

pub fn render(results: &[CheckResult]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&r.to_json_line());
        out.push('\n');
    }
    out
}
