use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::jet::Jet;
use crate::error::{GeomError, Result};

/// Points closer than this to the zero section are rejected outright.
pub const ZERO_SECTION_TOL: f64 = 1e-12;

/// A point `(x, y)` of the slit tangent bundle in the global chart.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentPoint {
    base: Vec<f64>,
    fiber: Vec<f64>,
}

impl TangentPoint {
    pub fn new(base: Vec<f64>, fiber: Vec<f64>) -> Result<Self> {
        if base.len() != fiber.len() {
            return Err(GeomError::DimensionMismatch {
                expected: base.len(),
                found: fiber.len(),
            });
        }
        if base.len() < 2 {
            return Err(GeomError::BadConfig(format!(
                "dimension must be at least 2, got {}",
                base.len()
            )));
        }
        let p = TangentPoint { base, fiber };
        let norm = p.fiber_norm();
        if !(norm > ZERO_SECTION_TOL) {
            return Err(GeomError::ZeroSection { norm });
        }
        Ok(p)
    }

    /// Splits `[x¹…xⁿ, y¹…yⁿ]`.
    pub fn from_coords(coords: &[f64]) -> Result<Self> {
        if !coords.len().is_multiple_of(2) {
            return Err(GeomError::BadConfig(format!(
                "expected 2n coordinates, got {}",
                coords.len()
            )));
        }
        let n = coords.len() / 2;
        Self::new(coords[..n].to_vec(), coords[n..].to_vec())
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &[f64] {
        &self.base
    }

    pub fn fiber(&self) -> &[f64] {
        &self.fiber
    }

    pub fn fiber_norm(&self) -> f64 {
        libm::sqrt(self.fiber.iter().map(|v| v * v).sum())
    }

    pub fn coords(&self) -> Vec<f64> {
        let mut v = self.base.clone();
        v.extend_from_slice(&self.fiber);
        v
    }

    pub fn to_jets(&self) -> Vec<Jet> {
        self.base
            .iter()
            .chain(self.fiber.iter())
            .map(|&v| Jet::constant(v))
            .collect()
    }
}

/// Sampling box and floor for [`sample_slit_points`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleConfig {
    pub base_range: (f64, f64),
    pub fiber_range: (f64, f64),
    pub min_fiber_norm: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            base_range: (-1.0, 1.0),
            fiber_range: (-2.0, 2.0),
            min_fiber_norm: 0.1,
        }
    }
}

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    pub points: Vec<TangentPoint>,
    pub seed: u64,
    pub config: SampleConfig,
}

impl SampleGrid {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, TangentPoint::dim)
    }

    pub fn iter(&self) -> core::slice::Iter<'_, TangentPoint> {
        self.points.iter()
    }

    /// A grid holding exactly the given points.
    pub fn from_points(points: Vec<TangentPoint>) -> Self {
        SampleGrid {
            points,
            seed: 0,
            config: SampleConfig::default(),
        }
    }
}

/// Draws `count` points uniformly from the configured box, rejecting fibers
/// shorter than `min_fiber_norm`. Identical inputs give identical grids.
pub fn sample_slit_points(
    n: usize,
    count: usize,
    seed: u64,
    config: SampleConfig,
) -> Result<SampleGrid> {
    if count == 0 {
        return Err(GeomError::BadConfig("sample count must be at least 1".into()));
    }
    if n < 2 {
        return Err(GeomError::BadConfig(format!("dimension must be at least 2, got {n}")));
    }
    if !(config.min_fiber_norm > 0.0) {
        return Err(GeomError::BadConfig(format!(
            "min_fiber_norm must be positive, got {}",
            config.min_fiber_norm
        )));
    }
    let (blo, bhi) = config.base_range;
    let (flo, fhi) = config.fiber_range;
    if !(blo < bhi) || !(flo < fhi) {
        return Err(GeomError::BadConfig("empty sampling box".into()));
    }
    let reach = flo.abs().max(fhi.abs()) * libm::sqrt(n as f64);
    if reach <= config.min_fiber_norm {
        return Err(GeomError::BadConfig(
            "fiber box lies inside the min_fiber_norm ball".into(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(count);
    while points.len() < count {
        let base: Vec<f64> = (0..n).map(|_| rng.gen_range(blo..bhi)).collect();
        let fiber: Vec<f64> = (0..n).map(|_| rng.gen_range(flo..fhi)).collect();
        let norm = libm::sqrt(fiber.iter().map(|v| v * v).sum());
        if norm >= config.min_fiber_norm {
            points.push(TangentPoint { base, fiber });
        }
    }
    Ok(SampleGrid {
        points,
        seed,
        config,
    })
}
