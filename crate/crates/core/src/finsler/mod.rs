//! Finsler layer: energy validation, fundamental form, sharp operator,
//! canonical spray and Berwald connection.

pub mod fixtures;
pub mod linalg;
mod structure;

pub use fixtures::Fixture;
pub use structure::{
    metric_tensor, omega_matrix, validate_finsler, FinslerStructure, FundamentalForm,
    ENERGY_HOMOGENEITY_TOL, MIN_METRIC_DET,
};
