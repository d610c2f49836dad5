//! Conservativity predicates for connections and vertical vector fields.

use alloc::string::String;

use super::ehresmann::l_ehresmann_connection;
use super::torsion_free::ensure_vertical;
use crate::calculus::{SampleGrid, ScalarField, VectorField};
use crate::error::{GeomError, Result};
use crate::finsler::FinslerStructure;
use crate::tangent::{
    d_k_function, fn_bracket, sup_form, vertical_endomorphism, DifferentialForm, PRECONDITION_TOL,
};

/// `sup |d_J g|`: zero iff `g` is a vertical lift.
pub fn vertical_lift_test(g: &ScalarField, grid: &SampleGrid) -> Result<f64> {
    let j = vertical_endomorphism(g.dim());
    sup_form(&d_k_function(g, &j)?, grid)
}

/// The 1-form `i_V ω − d_J(VE)`; it vanishes iff `V` is conservative.
pub fn vincze_defect(f: &FinslerStructure, v: &VectorField) -> Result<DifferentialForm> {
    let j = vertical_endomorphism(f.dim());
    let ive = f.omega().insert_vector(v)?;
    let dj = d_k_function(&v.apply(f.energy()), &j)?;
    ive.try_sub(&dj)
}

/// `sup |i_V ω − d_J(VE)|` for a vertical `V`.
pub fn vincze_residual(f: &FinslerStructure, v: &VectorField, grid: &SampleGrid) -> Result<f64> {
    ensure_vertical(v, grid)?;
    sup_form(&vincze_defect(f, v)?, grid)
}

/// `U = V + (d_{[J,V]} E)#`, conservative whenever the `[J,V]`-Ehresmann
/// connection is. Fails with `HypothesisFailure` otherwise.
pub fn conservative_lift(
    f: &FinslerStructure,
    v: &VectorField,
    grid: &SampleGrid,
) -> Result<VectorField> {
    ensure_vertical(v, grid)?;
    let j = vertical_endomorphism(f.dim());
    let l = fn_bracket(&j, &v.into())?;
    let h = l_ehresmann_connection(f, &l, grid)?;
    let r = f.conservative_connection_residual(h.form(), grid)?;
    if r >= PRECONDITION_TOL {
        return Err(GeomError::HypothesisFailure {
            what: String::from("the [J,V]-Ehresmann connection is not conservative"),
            residual: r,
        });
    }
    let u = f.sharp(&d_k_function(f.energy(), &l)?)?;
    Ok(v + &u)
}
