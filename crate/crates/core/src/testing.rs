//! Shared helpers for unit tests.

use alloc::vec;
use alloc::vec::Vec;

use crate::calculus::{sample_slit_points, SampleConfig, SampleGrid, TangentPoint, VectorField};
use crate::finsler::{validate_finsler, FinslerStructure, Fixture};

pub fn p0() -> TangentPoint {
    TangentPoint::new(vec![0.0, 0.0], vec![1.0, 2.0]).unwrap()
}

pub fn grid(count: usize) -> SampleGrid {
    sample_slit_points(2, count, 42, SampleConfig::default()).unwrap()
}

/// `p0` plus a few seeded points.
pub fn small_grid() -> SampleGrid {
    let mut pts = vec![p0()];
    pts.extend(grid(5).iter().cloned());
    SampleGrid::from_points(pts)
}

pub fn structure(fx: Fixture) -> FinslerStructure {
    validate_finsler(&fx.energy(2), &grid(8)).unwrap()
}

pub fn e(a: usize) -> Vec<f64> {
    let mut v = vec![0.0; 4];
    v[a] = 1.0;
    v
}

pub fn assert_close(a: &[f64], b: &[f64], tol: f64) {
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(b) {
        assert!((x - y).abs() < tol, "{a:?} vs {b:?}");
    }
}

pub fn field_at(x: &VectorField, p: &TangentPoint) -> Vec<f64> {
    x.at(p).unwrap()
}
