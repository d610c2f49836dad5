//! Tangent-bundle calculus for Finsler manifolds.
//!
//! Everything is computed pointwise on the slit tangent bundle of `Rⁿ` in
//! its global chart. Fields and forms are pure evaluators over [`Jet`]s, so
//! every derivative the Frölicher–Nijenhuis calculus needs is exact to
//! rounding, with up to [`MAX_DEPTH`] nested differentiations.
//!
//! * [`calculus`]: jets, scalar and vector fields, seeded sampling.
//! * [`tangent`]: forms, vector forms, `i_K`, `d_K`, brackets, `J`, `C`.
//! * [`finsler`]: energy validation, `ω`, sharp, `S₀`, Berwald `h₀`.
//! * [`connection`]: L-Ehresmann and Wagner connections, `V_L`, `S^V`,
//!   projective factors and conservative vertical fields.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod calculus;
pub mod connection;
mod error;
pub mod finsler;
pub mod tangent;
#[cfg(test)]
mod testing;
pub mod tolerance;

pub use calculus::{
    sample_slit_points, BaseFunction, Jet, SampleConfig, SampleGrid, ScalarField, TangentPoint,
    VectorField, MAX_DEPTH,
};
pub use error::{GeomError, Result};
pub use finsler::{validate_finsler, FinslerStructure, Fixture};
pub use tangent::{DifferentialForm, VectorForm};
