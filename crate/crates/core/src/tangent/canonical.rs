//! Lifts and the canonical objects `J` and `C` of the tangent bundle.

use alloc::vec::Vec;

use super::form::VectorForm;
use crate::calculus::{BaseFunction, Jet, ScalarField, VectorField};

/// `J(∂/∂xⁱ) = ∂/∂yⁱ`, `J(∂/∂yⁱ) = 0`.
pub fn vertical_endomorphism(n: usize) -> VectorForm {
    VectorForm::build(n, 1, move |_, a| {
        let mut out = alloc::vec![Jet::ZERO; 2 * n];
        out[n..].copy_from_slice(&a[0][..n]);
        Ok(out)
    })
}

/// `C = yⁱ ∂/∂yⁱ`.
pub fn liouville_field(n: usize) -> VectorField {
    VectorField::new(n, move |p| {
        let mut out = alloc::vec![Jet::ZERO; 2 * n];
        out[n..].copy_from_slice(&p[n..]);
        Ok(out)
    })
}

pub fn vertical_lift_function(f: &BaseFunction) -> ScalarField {
    f.vertical_lift()
}

pub fn complete_lift_function(f: &BaseFunction) -> ScalarField {
    f.complete_lift()
}

/// `X^v = Xⁱ(x) ∂/∂yⁱ` for a vector field `X = Xⁱ ∂/∂xⁱ` on the base.
pub fn vertical_lift_vector(x: &[BaseFunction]) -> VectorField {
    let n = x.len();
    let x: Vec<BaseFunction> = x.to_vec();
    VectorField::new(n, move |p| {
        let mut out = alloc::vec![Jet::ZERO; 2 * n];
        for (i, xi) in x.iter().enumerate() {
            out[n + i] = xi.eval(&p[..n])?;
        }
        Ok(out)
    })
}

/// `(∂/∂xⁱ)^v = ∂/∂yⁱ`.
pub fn vertical_lift_coordinate(n: usize, i: usize) -> VectorField {
    VectorField::coordinate_vector(n, n + i)
}

/// `J` applied to a vector field.
pub fn j_of(field: &VectorField) -> VectorField {
    let f = field.clone();
    let n = field.dim();
    VectorField::new(n, move |p| {
        let v = f.eval(p)?;
        let mut out = alloc::vec![Jet::ZERO; 2 * n];
        out[n..].copy_from_slice(&v[..n]);
        Ok(out)
    })
}
