//! Differentiation substrate: jets, fields and reproducible sampling.

pub mod field;
pub mod jet;
pub mod sample;

pub use field::{BaseFunction, ScalarField, VectorField};
pub use jet::{Jet, MAX_DEPTH};
pub use sample::{
    sample_slit_points, SampleConfig, SampleGrid, TangentPoint, DEFAULT_SAMPLES, DEFAULT_SEED,
    ZERO_SECTION_TOL,
};
