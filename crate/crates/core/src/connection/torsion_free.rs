//! Torsion-free semibasic forms, their vertical potentials and the `S^V`
//! semispray family.

use super::ehresmann::{associated_semispray, ensure_semibasic, l_ehresmann_connection};
use crate::calculus::{Jet, SampleGrid, ScalarField, VectorField};
use crate::error::{GeomError, Result};
use crate::finsler::FinslerStructure;
use crate::tangent::{
    d_k_function, fn_bracket, homogeneity_residual, liouville_field, scalar_homogeneity_residual,
    sup_field, sup_form, sup_vector_form, vertical_endomorphism, vertical_residual, VectorForm,
    PRECONDITION_TOL,
};

/// `sup ‖[J, L]‖` for a semibasic vector 1-form.
pub fn torsion_free_residual(l: &VectorForm, grid: &SampleGrid) -> Result<f64> {
    ensure_semibasic(l, grid)?;
    let j = vertical_endomorphism(l.dim());
    sup_vector_form(&fn_bracket(&j, l)?, grid)
}

fn ensure_torsion_free(l: &VectorForm, grid: &SampleGrid) -> Result<()> {
    let r = torsion_free_residual(l, grid)?;
    if r < PRECONDITION_TOL {
        Ok(())
    } else {
        Err(GeomError::NotTorsionFree { residual: r })
    }
}

pub(crate) fn ensure_vertical(v: &VectorField, grid: &SampleGrid) -> Result<()> {
    let r = vertical_residual(v, grid)?;
    if r < PRECONDITION_TOL {
        Ok(())
    } else {
        Err(GeomError::NotVertical { residual: r })
    }
}

/// A vertical field `V_L` with `[J, V_L] = L`:
/// `V_L = ½(S − S₀) − (d_L E)#` where `S = h_L(S₀)`.
pub fn v_from_torsion_free(
    f: &FinslerStructure,
    l: &VectorForm,
    grid: &SampleGrid,
) -> Result<VectorField> {
    ensure_torsion_free(l, grid)?;
    let h = l_ehresmann_connection(f, l, grid)?;
    let s = associated_semispray(f, &h);
    let s0 = f.canonical_spray();
    let u = f.sharp(&d_k_function(f.energy(), l)?)?;
    Ok((s - s0).scale(0.5) - u)
}

/// The semispray `yⁱ ∂/∂xⁱ`, used wherever any semispray will do.
pub fn flat_semispray(n: usize) -> VectorField {
    VectorField::new(n, move |p| {
        let mut out = alloc::vec![Jet::ZERO; 2 * n];
        out[..n].copy_from_slice(&p[n..]);
        Ok(out)
    })
}

/// `V = L° / (r + 1)` for a torsion-free `L` homogeneous of degree `r`
/// (`[C, L] = (r − 1) L`).
pub fn v_from_homogeneous(l: &VectorForm, r: f64, grid: &SampleGrid) -> Result<VectorField> {
    if r == -1.0 {
        return Err(GeomError::DegenerateDegree);
    }
    ensure_torsion_free(l, grid)?;
    let h = homogeneity_residual(l, r, grid)?;
    if h >= PRECONDITION_TOL {
        return Err(GeomError::NotHomogeneous {
            degree: r,
            residual: h,
        });
    }
    let potential = l.insert_vector(&flat_semispray(l.dim()))?.as_vector_field()?;
    Ok(potential.scale(1.0 / (r + 1.0)))
}

/// `S^V = S₀ + 2V + 2(d_{[J,V]} E)#`.
pub fn semispray_from_vertical(
    f: &FinslerStructure,
    v: &VectorField,
    grid: &SampleGrid,
) -> Result<VectorField> {
    ensure_vertical(v, grid)?;
    semispray_from_vertical_unchecked(f, v)
}

fn semispray_from_vertical_unchecked(f: &FinslerStructure, v: &VectorField) -> Result<VectorField> {
    let j = vertical_endomorphism(f.dim());
    let jv = fn_bracket(&j, &v.into())?;
    let w = f.sharp(&d_k_function(f.energy(), &jv)?)?;
    Ok(f.canonical_spray() + v.scale(2.0) + w.scale(2.0))
}

/// Outcome of [`projective_factor`].
#[derive(Debug, Clone)]
pub struct ProjectiveFactor {
    /// Candidate `λ = 3 (V − U)E / E`.
    pub lambda: ScalarField,
    /// `sup |S^V − S^U − λ C|`; zero iff the sprays are projectively
    /// related with factor `λ`.
    pub residual: f64,
    /// `sup |Cλ − λ|`.
    pub lambda_homogeneity: f64,
}

/// Candidate projective factor of `S^V` and `S^U` plus a measurement of
/// whether the pair is actually projectively related.
pub fn projective_factor(
    f: &FinslerStructure,
    v: &VectorField,
    u: &VectorField,
    grid: &SampleGrid,
) -> Result<ProjectiveFactor> {
    for w in [v, u] {
        ensure_vertical(w, grid)?;
        let h = homogeneity_residual(&w.into(), 2.0, grid)?;
        if h >= PRECONDITION_TOL {
            return Err(GeomError::NotHomogeneous {
                degree: 2.0,
                residual: h,
            });
        }
    }
    let e = f.energy().clone();
    let diff = v - u;
    let lambda = (diff.apply(&e) / e).scale(3.0);
    let sv = semispray_from_vertical_unchecked(f, v)?;
    let su = semispray_from_vertical_unchecked(f, u)?;
    let gap = sv - su - liouville_field(f.dim()).scaled_by(&lambda);
    Ok(ProjectiveFactor {
        residual: sup_field(&gap, grid)?,
        lambda_homogeneity: scalar_homogeneity_residual(&lambda, 1.0, grid)?,
        lambda,
    })
}

/// `sup |d_h ω|` over frame triples, with `d_h ω = i_h dω − d i_h ω`.
pub fn dh_omega_residual(f: &FinslerStructure, h: &VectorForm, grid: &SampleGrid) -> Result<f64> {
    sup_form(&f.omega().d_k(h)?, grid)
}
