//! Lie and Frölicher–Nijenhuis brackets.

use alloc::vec::Vec;

use super::form::VectorForm;
use crate::calculus::{Jet, VectorField};
use crate::error::{GeomError, Result};

fn sub(a: Vec<Jet>, b: Vec<Jet>) -> Vec<Jet> {
    a.into_iter().zip(b).map(|(u, v)| u - v).collect()
}

fn add(a: Vec<Jet>, b: Vec<Jet>) -> Vec<Jet> {
    a.into_iter().zip(b).map(|(u, v)| u + v).collect()
}

/// `[ξ, η]^a = ξ^b ∂_b η^a − η^b ∂_b ξ^a`.
pub fn lie_bracket(xi: &VectorField, eta: &VectorField) -> VectorField {
    let (xi, eta) = (xi.clone(), eta.clone());
    VectorField::new(xi.dim(), move |p| {
        let (xp, ep) = (xi.eval(p)?, eta.eval(p)?);
        Ok(sub(eta.derivative_along(p, &xp)?, xi.derivative_along(p, &ep)?))
    })
}

/// `[K, Y]X = [KX, Y] − K[X, Y]` for a vector 1-form `K` and a vector field `Y`.
fn bracket_one_zero(k: &VectorForm, y: &VectorField) -> VectorForm {
    let (k, y) = (k.clone(), y.clone());
    VectorForm::build(k.dim(), 1, move |p, args| {
        let x = args[0];
        let kx = k.eval(p, &[x])?;
        let yp = y.eval(p)?;
        // [KX, Y] with X extended constantly
        let dy_kx = y.derivative_along(p, &kx)?;
        let dkx_y = k.derivative_along(p, &[x], &yp)?;
        // K[X, Y] = K(DY[X])
        let dy_x = y.derivative_along(p, x)?;
        let k_xy = k.eval(p, &[&dy_x])?;
        Ok(sub(sub(dy_kx, dkx_y), k_xy))
    })
}

/// Standard pointwise formula for two vector 1-forms, evaluated on constant
/// extensions of `X, Y` (so `[X, Y] = 0`):
///
/// `[K,L](X,Y) = [KX,LY] + [LX,KY] − L([KX,Y] + [X,KY]) − K([LX,Y] + [X,LY])`.
fn bracket_one_one(k: &VectorForm, l: &VectorForm) -> VectorForm {
    let (k, l) = (k.clone(), l.clone());
    VectorForm::build(k.dim(), 2, move |p, args| {
        let (x, y) = (args[0], args[1]);
        let kx = k.eval(p, &[x])?;
        let ky = k.eval(p, &[y])?;
        let lx = l.eval(p, &[x])?;
        let ly = l.eval(p, &[y])?;
        // [A(X), B(Y)] = D(BY)[AX] − D(AX)[BY]
        let field_bracket = |a: &VectorForm, ax: &[Jet], xa: &[Jet], b: &VectorForm, by: &[Jet], yb: &[Jet]| {
            Ok::<_, GeomError>(sub(
                b.derivative_along(p, &[yb], ax)?,
                a.derivative_along(p, &[xa], by)?,
            ))
        };
        let kx_ly = field_bracket(&k, &kx, x, &l, &ly, y)?;
        let lx_ky = field_bracket(&l, &lx, x, &k, &ky, y)?;
        // [KX, Y] + [X, KY] = −D(KX)[Y] + D(KY)[X]
        let k_mixed = sub(k.derivative_along(p, &[y], x)?, k.derivative_along(p, &[x], y)?);
        let l_mixed = sub(l.derivative_along(p, &[y], x)?, l.derivative_along(p, &[x], y)?);
        let l_of = l.eval(p, &[&k_mixed])?;
        let k_of = k.eval(p, &[&l_mixed])?;
        Ok(sub(sub(add(kx_ly, lx_ky), l_of), k_of))
    })
}

/// Frölicher–Nijenhuis bracket `[K, L]` for degrees `(0,0)`, `(1,0)`,
/// `(0,1)` and `(1,1)`.
pub fn fn_bracket(k: &VectorForm, l: &VectorForm) -> Result<VectorForm> {
    match (k.degree(), l.degree()) {
        (0, 0) => Ok(lie_bracket(&k.as_vector_field()?, &l.as_vector_field()?).into()),
        (1, 0) => Ok(bracket_one_zero(k, &l.as_vector_field()?)),
        // graded antisymmetry: [Y, K] = −(−1)^{0·1}[K, Y]
        (0, 1) => Ok(-bracket_one_zero(l, &k.as_vector_field()?)),
        (1, 1) => Ok(bracket_one_one(k, l)),
        (a, b) => Err(GeomError::DegreeOutOfRange { degree: a + b }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{ScalarField, TangentPoint};
    use crate::finsler::Fixture;
    use crate::tangent::{liouville_field, sup_vector_form, vertical_endomorphism, vertical_lift_coordinate};
    use crate::testing::*;
    use alloc::vec;

    fn fd_lie_bracket(xi: &VectorField, eta: &VectorField, p: &TangentPoint) -> Vec<f64> {
        let h = 1e-5;
        let c = p.coords();
        let shifted = |f: &VectorField, dir: &[f64], s: f64| {
            let q: Vec<f64> = c.iter().zip(dir).map(|(a, d)| a + s * h * d).collect();
            f.at(&TangentPoint::from_coords(&q).unwrap()).unwrap()
        };
        let central = |f: &VectorField, dir: &[f64]| -> Vec<f64> {
            let (a, b) = (shifted(f, dir, 1.0), shifted(f, dir, -1.0));
            a.iter().zip(&b).map(|(u, v)| (u - v) / (2.0 * h)).collect()
        };
        let (xp, ep) = (xi.at(p).unwrap(), eta.at(p).unwrap());
        let a = central(eta, &xp);
        let b = central(xi, &ep);
        a.iter().zip(&b).map(|(u, v)| u - v).collect()
    }

    fn swirl() -> VectorField {
        VectorField::from_components(vec![
            ScalarField::new(2, |p| Ok(p[1] * p[2])),
            ScalarField::new(2, |p| Ok((p[0] * p[3]).sin())),
            ScalarField::new(2, |p| Ok(p[2] * p[2] - p[0])),
            ScalarField::new(2, |p| Ok((p[1] * 0.5).exp() * p[3])),
        ])
    }

    #[test]
    fn liouville_against_vertical_coordinate() {
        let c = liouville_field(2);
        let dy1 = vertical_lift_coordinate(2, 0);
        let b = lie_bracket(&c, &dy1);
        assert_close(&b.at(&p0()).unwrap(), &[0.0, 0.0, -1.0, 0.0], 1e-14);
        assert_close(&fd_lie_bracket(&c, &dy1, &p0()), &[0.0, 0.0, -1.0, 0.0], 1e-8);
    }

    #[test]
    fn flat_spray_against_vertical_coordinate() {
        let s0 = structure(Fixture::Euclidean).canonical_spray();
        let dy1 = vertical_lift_coordinate(2, 0);
        let b = lie_bracket(&s0, &dy1);
        assert_close(&b.at(&p0()).unwrap(), &[-1.0, 0.0, 0.0, 0.0], 1e-12);
        assert_close(&fd_lie_bracket(&s0, &dy1, &p0()), &[-1.0, 0.0, 0.0, 0.0], 1e-7);
    }

    #[test]
    fn bracket_with_itself_vanishes() {
        let s0 = structure(Fixture::RiemannianExp).canonical_spray();
        for p in small_grid().iter() {
            assert_close(&lie_bracket(&s0, &s0).at(p).unwrap(), &[0.0; 4], 1e-12);
        }
        let c = liouville_field(2);
        assert_close(&lie_bracket(&c, &c).at(&p0()).unwrap(), &[0.0; 4], 1e-15);
    }

    #[test]
    fn jet_bracket_matches_finite_differences() {
        let (a, b) = (swirl(), structure(Fixture::Randers03).canonical_spray());
        for p in small_grid().iter() {
            assert_close(&lie_bracket(&a, &b).at(p).unwrap(), &fd_lie_bracket(&a, &b, p), 1e-6);
        }
    }

    #[test]
    fn canonical_bracket_relations() {
        let g = small_grid();
        let j = vertical_endomorphism(2);
        let c: VectorForm = liouville_field(2).into();
        let jc = fn_bracket(&j, &c).unwrap();
        assert!(sup_vector_form(&jc.try_sub(&j).unwrap(), &g).unwrap() < 1e-14);
        let jj = fn_bracket(&j, &j).unwrap();
        assert!(sup_vector_form(&jj, &g).unwrap() < 1e-14);
        let dy1: VectorForm = vertical_lift_coordinate(2, 0).into();
        assert!(sup_vector_form(&fn_bracket(&j, &dy1).unwrap(), &g).unwrap() < 1e-14);
    }

    #[test]
    fn j_against_flat_spray_is_diagonal() {
        let j = vertical_endomorphism(2);
        let s0: VectorForm = structure(Fixture::Euclidean).canonical_spray().into();
        let m = fn_bracket(&j, &s0).unwrap().matrix_at(&p0()).unwrap();
        for (a, row) in m.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                let want = match (a == b, a < 2) {
                    (true, true) => 1.0,
                    (true, false) => -1.0,
                    _ => 0.0,
                };
                assert!((v - want).abs() < 1e-12, "[{a}][{b}] = {v}");
            }
        }
    }

    #[test]
    fn graded_antisymmetry_between_degrees_zero_and_one() {
        let g = small_grid();
        let j = vertical_endomorphism(2);
        let y: VectorForm = swirl().into();
        let sum = fn_bracket(&j, &y).unwrap() + fn_bracket(&y, &j).unwrap();
        assert!(sup_vector_form(&sum, &g).unwrap() < 1e-13);
    }

    #[test]
    fn one_one_bracket_is_skew_and_symmetric_in_its_arguments() {
        let g = small_grid();
        let j = vertical_endomorphism(2);
        let h = structure(Fixture::RiemannianExp).berwald_connection();
        let jh = fn_bracket(&j, &h).unwrap();
        let hj = fn_bracket(&h, &j).unwrap();
        // [K, L] = −(−1)^{kl}[L, K] = [L, K] for two 1-forms
        assert!(sup_vector_form(&jh.try_sub(&hj).unwrap(), &g).unwrap() < 1e-10);
        let p = p0();
        let (x, y) = (e(0), e(3));
        let a = jh.at(&p, &[x.clone(), y.clone()]).unwrap();
        let b = jh.at(&p, &[y, x]).unwrap();
        let s: Vec<f64> = a.iter().zip(&b).map(|(u, v)| u + v).collect();
        assert_close(&s, &[0.0; 4], 1e-13);
    }

    #[test]
    fn unsupported_degrees_are_rejected() {
        let j = vertical_endomorphism(2);
        let jj = fn_bracket(&j, &j).unwrap();
        assert!(matches!(
            fn_bracket(&j, &jj),
            Err(GeomError::DegreeOutOfRange { degree: 3 })
        ));
    }
}
