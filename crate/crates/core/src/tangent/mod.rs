//! Frölicher–Nijenhuis toolbox on `TM`.

pub mod bracket;
pub mod canonical;
pub mod form;
pub mod residual;

pub use bracket::{fn_bracket, lie_bracket};
pub use canonical::{
    complete_lift_function, j_of, liouville_field, vertical_endomorphism, vertical_lift_coordinate,
    vertical_lift_function, vertical_lift_vector,
};
pub use form::{d_k_function, DifferentialForm, VectorForm};
pub use residual::{
    homogeneity_residual, scalar_homogeneity_residual, semibasic_residual_form,
    semibasic_residual_vector_form, semispray_residual, sup_field, sup_form, sup_scalar,
    sup_vector_form, vertical_residual,
};

use crate::calculus::{SampleGrid, VectorField};
use crate::error::{GeomError, Result};

/// Tolerance used when an operation has to confirm a structural
/// precondition (semibasic, semispray, vertical, …) on the sample grid.
pub const PRECONDITION_TOL: f64 = 1e-8;

fn ensure_semispray(s: &VectorField, grid: &SampleGrid) -> Result<()> {
    let r = semispray_residual(s, grid)?;
    if r < PRECONDITION_TOL {
        Ok(())
    } else {
        Err(GeomError::NotSemispray { residual: r })
    }
}

/// Potential `K° = i_S K` of a semibasic vector form.
pub fn potential_vector_form(k: &VectorForm, s: &VectorField, grid: &SampleGrid) -> Result<VectorForm> {
    if k.degree() == 0 {
        return Err(GeomError::DegreeOutOfRange { degree: 0 });
    }
    let r = semibasic_residual_vector_form(k, grid)?;
    if r >= PRECONDITION_TOL {
        return Err(GeomError::NotSemibasic { residual: r });
    }
    ensure_semispray(s, grid)?;
    k.insert_vector(s)
}

/// Potential `α° = i_S α` of a semibasic form.
pub fn potential_form(
    alpha: &DifferentialForm,
    s: &VectorField,
    grid: &SampleGrid,
) -> Result<DifferentialForm> {
    if alpha.degree() == 0 {
        return Err(GeomError::DegreeOutOfRange { degree: 0 });
    }
    let r = semibasic_residual_form(alpha, grid)?;
    if r >= PRECONDITION_TOL {
        return Err(GeomError::NotSemibasic { residual: r });
    }
    ensure_semispray(s, grid)?;
    alpha.insert_vector(s)
}
