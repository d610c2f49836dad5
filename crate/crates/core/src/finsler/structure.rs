use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use super::linalg;
use crate::calculus::field::{derive_scalar, frame_vector};
use crate::calculus::{BaseFunction, Jet, SampleGrid, ScalarField, TangentPoint, VectorField};
use crate::connection::{connection_from_semispray_form, projector_residual};
use crate::error::{GeomError, Result};
use crate::tangent::{
    d_k_function, semibasic_residual_vector_form, sup_form, vertical_endomorphism,
    DifferentialForm, VectorForm, PRECONDITION_TOL,
};

/// Smallest accepted `|det g|` at a sample point.
pub const MIN_METRIC_DET: f64 = 1e-10;
/// Absolute tolerance for `CE = 2E` (scaled by `max(1, E)`).
pub const ENERGY_HOMOGENEITY_TOL: f64 = 1e-8;

fn hessian_entry(e: &ScalarField, p: &[Jet], a: usize, b: usize) -> Result<Jet> {
    let m = p.len();
    let (ea, eb) = (frame_vector(m, a), frame_vector(m, b));
    derive_scalar(p, &ea, &[], |q| derive_scalar(q, &eb, &[], |r| e.eval(r)))
}

/// Metric `g_ij = ∂²E/∂yⁱ∂yʲ` at a point.
pub fn metric_tensor(e: &ScalarField, p: &[Jet]) -> Result<Vec<Vec<Jet>>> {
    let n = e.dim();
    let mut g = alloc::vec![alloc::vec![Jet::ZERO; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = hessian_entry(e, p, n + i, n + j)?;
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    Ok(g)
}

/// `Ω_ab = ω(e_a, e_b)` in closed form: `[[M − Mᵀ, −g], [g, 0]]` with
/// `M_kl = ∂²E/∂xᵏ∂yˡ`.
pub fn omega_matrix(e: &ScalarField, p: &[Jet]) -> Result<Vec<Vec<Jet>>> {
    let n = e.dim();
    let g = metric_tensor(e, p)?;
    let mut mixed = alloc::vec![alloc::vec![Jet::ZERO; n]; n];
    for (k, row) in mixed.iter_mut().enumerate() {
        for (l, v) in row.iter_mut().enumerate() {
            *v = hessian_entry(e, p, k, n + l)?;
        }
    }
    let mut om = alloc::vec![alloc::vec![Jet::ZERO; 2 * n]; 2 * n];
    for k in 0..n {
        for l in 0..n {
            om[k][l] = mixed[k][l] - mixed[l][k];
            om[k][n + l] = -g[k][l];
            om[n + k][l] = g[k][l];
        }
    }
    Ok(om)
}

fn real_matrix(a: &[Vec<Jet>]) -> Vec<Vec<f64>> {
    a.iter().map(|r| r.iter().map(Jet::value).collect()).collect()
}

fn det(a: &[Vec<f64>]) -> f64 {
    let m = a.len();
    let mut w = a.to_vec();
    let mut d = 1.0;
    for col in 0..m {
        let piv = (col..m)
            .max_by(|&i, &j| {
                libm::fabs(w[i][col])
                    .partial_cmp(&libm::fabs(w[j][col]))
                    .unwrap_or(core::cmp::Ordering::Equal)
            })
            .unwrap_or(col);
        if w[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            w.swap(piv, col);
            d = -d;
        }
        d *= w[col][col];
        for i in (col + 1)..m {
            let f = w[i][col] / w[col][col];
            for j in col..m {
                w[i][j] -= f * w[col][j];
            }
        }
    }
    d
}

/// An energy function validated on a sample grid.
#[derive(Clone)]
pub struct FinslerStructure {
    n: usize,
    energy: ScalarField,
}

impl fmt::Debug for FinslerStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinslerStructure(n = {})", self.n)
    }
}

/// Checks positivity, 2-homogeneity and nondegeneracy of `E` at every
/// grid point, in that order.
pub fn validate_finsler(energy: &ScalarField, grid: &SampleGrid) -> Result<FinslerStructure> {
    let n = energy.dim();
    for p in grid.iter() {
        if p.dim() != n {
            return Err(GeomError::DimensionMismatch {
                expected: n,
                found: p.dim(),
            });
        }
        let v = energy.evaluate(p)?;
        if !(v > 0.0) {
            return Err(GeomError::PositivityFailure {
                point: p.coords(),
                value: v,
            });
        }
    }
    let c = crate::tangent::liouville_field(n);
    let ce = c.apply(energy);
    for p in grid.iter() {
        let e = energy.evaluate(p)?;
        let r = libm::fabs(ce.evaluate(p)? - 2.0 * e);
        if !(r <= ENERGY_HOMOGENEITY_TOL * e.max(1.0)) {
            return Err(GeomError::HomogeneityFailure {
                point: p.coords(),
                residual: r,
            });
        }
    }
    for p in grid.iter() {
        let pj = p.to_jets();
        let g = real_matrix(&metric_tensor(energy, &pj)?);
        let d = det(&g);
        if !(libm::fabs(d) > MIN_METRIC_DET) {
            return Err(GeomError::NondegeneracyFailure {
                point: p.coords(),
                detail: format!("det g = {d:e}"),
            });
        }
        let om = real_matrix(&omega_matrix(energy, &pj)?);
        match linalg::condition_number(&om) {
            Some(c) if c <= linalg::MAX_CONDITION => {}
            c => {
                return Err(GeomError::NondegeneracyFailure {
                    point: p.coords(),
                    detail: format!("fundamental form condition number {c:?}"),
                })
            }
        }
    }
    Ok(FinslerStructure {
        n,
        energy: energy.clone(),
    })
}

/// The fundamental 2-form together with its closed-form matrix.
#[derive(Clone, Debug)]
pub struct FundamentalForm {
    energy: ScalarField,
    /// `ω = d(d_J E)` through the exterior-derivative path.
    pub reference: DifferentialForm,
    /// `ω(u, v) = uᵀ Ω v` through the closed-form matrix.
    pub fast: DifferentialForm,
}

impl FundamentalForm {
    pub fn matrix_at(&self, p: &[Jet]) -> Result<Vec<Vec<Jet>>> {
        omega_matrix(&self.energy, p)
    }

    pub fn matrix_at_point(&self, p: &TangentPoint) -> Result<Vec<Vec<f64>>> {
        Ok(real_matrix(&self.matrix_at(&p.to_jets())?))
    }
}

impl FinslerStructure {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn energy(&self) -> &ScalarField {
        &self.energy
    }

    /// `d_J E`.
    pub fn d_j_energy(&self) -> DifferentialForm {
        let j = vertical_endomorphism(self.n);
        d_k_function(&self.energy, &j).expect("d_J of a function is a 1-form")
    }

    pub fn fundamental_form(&self) -> FundamentalForm {
        let reference = self
            .d_j_energy()
            .exterior_derivative()
            .expect("d of a 1-form is a 2-form");
        FundamentalForm {
            energy: self.energy.clone(),
            reference,
            fast: self.omega(),
        }
    }

    /// `ω` evaluated through the closed-form matrix.
    pub fn omega(&self) -> DifferentialForm {
        let e = self.energy.clone();
        DifferentialForm::new(self.n, 2, move |p, args| {
            let om = omega_matrix(&e, p)?;
            let (u, v) = (args[0], args[1]);
            let mut s = Jet::ZERO;
            for (a, row) in om.iter().enumerate() {
                if u[a] == Jet::ZERO {
                    continue;
                }
                let mut t = Jet::ZERO;
                for (b, w) in row.iter().enumerate() {
                    t += *w * v[b];
                }
                s += u[a] * t;
            }
            Ok(s)
        })
        .expect("degree 2")
    }

    /// `β#`, the unique field with `i_{β#} ω = β`, solved pointwise from
    /// `Σ_a X^a Ω_ab = β_b`.
    pub fn sharp(&self, beta: &DifferentialForm) -> Result<VectorField> {
        if beta.degree() != 1 {
            return Err(GeomError::DegreeOutOfRange {
                degree: beta.degree(),
            });
        }
        let (e, beta) = (self.energy.clone(), beta.clone());
        Ok(VectorField::new(self.n, move |p| {
            let om = omega_matrix(&e, p)?;
            let m = om.len();
            let transposed: Vec<Vec<Jet>> =
                (0..m).map(|b| (0..m).map(|a| om[a][b]).collect()).collect();
            let rhs = beta.components_at(p)?;
            if rhs.iter().all(|v| *v == Jet::ZERO) {
                return Ok(alloc::vec![Jet::ZERO; m]);
            }
            linalg::solve(transposed, rhs).map_err(|detail| GeomError::NondegeneracyFailure {
                point: p.iter().map(Jet::value).collect(),
                detail,
            })
        }))
    }

    /// `grad f = (df)#`.
    pub fn gradient(&self, f: &ScalarField) -> VectorField {
        self.sharp(&DifferentialForm::differential(f))
            .expect("df is a 1-form")
    }

    /// `S₀ = −(dE)#`.
    pub fn canonical_spray(&self) -> VectorField {
        self.gradient(&self.energy).scale(-1.0)
    }

    /// `h₀ = ½(1 + [J, S₀])`.
    pub fn berwald_connection(&self) -> VectorForm {
        connection_from_semispray_form(&self.canonical_spray())
    }

    /// `Ẽ = exp(f^v) E`, validated on `grid`.
    pub fn conformal_change(&self, f: &BaseFunction, grid: &SampleGrid) -> Result<FinslerStructure> {
        let phi = f.vertical_lift().exp();
        validate_finsler(&(phi * self.energy.clone()), grid)
    }

    /// `sup |d_L E|` for a semibasic vector 1-form `L`.
    pub fn conservative_form_residual(&self, l: &VectorForm, grid: &SampleGrid) -> Result<f64> {
        if l.degree() != 1 {
            return Err(GeomError::DegreeOutOfRange { degree: l.degree() });
        }
        let r = semibasic_residual_vector_form(l, grid)?;
        if r >= PRECONDITION_TOL {
            return Err(GeomError::NotSemibasic { residual: r });
        }
        sup_form(&d_k_function(&self.energy, l)?, grid)
    }

    /// `sup |d_h E|` for an Ehresmann connection `h`.
    pub fn conservative_connection_residual(&self, h: &VectorForm, grid: &SampleGrid) -> Result<f64> {
        if h.degree() != 1 {
            return Err(GeomError::DegreeOutOfRange { degree: h.degree() });
        }
        let r = projector_residual(h, grid)?;
        if r >= PRECONDITION_TOL {
            return Err(GeomError::NotConnection { residual: r });
        }
        sup_form(&d_k_function(&self.energy, h)?, grid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finsler::Fixture;
    use crate::tangent::{liouville_field, sup_field, sup_scalar};
    use crate::testing::*;
    use alloc::vec;

    /// `S = yⁱ∂xⁱ − Γⁱ_jk yʲyᵏ ∂yⁱ` for the metric `diag(e^{2x¹}, 1)`, with
    /// `Γ` from the Christoffel formula.
    fn christoffel_spray(p: &TangentPoint) -> Vec<f64> {
        let (x, y) = (p.base(), p.fiber());
        let g = [[libm::exp(2.0 * x[0]), 0.0], [0.0, 1.0]];
        let ginv = [[1.0 / g[0][0], 0.0], [0.0, 1.0]];
        // dg[l][k][j] = ∂_j g_lk
        let mut dg = [[[0.0; 2]; 2]; 2];
        dg[0][0][0] = 2.0 * g[0][0];
        let mut out = vec![y[0], y[1], 0.0, 0.0];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let mut gamma = 0.0;
                    for l in 0..2 {
                        gamma += 0.5 * ginv[i][l] * (dg[l][k][j] + dg[l][j][k] - dg[j][k][l]);
                    }
                    out[2 + i] -= gamma * y[j] * y[k];
                }
            }
        }
        out
    }

    #[test]
    fn validation_reports_each_axiom() {
        let g = small_grid();
        for fx in Fixture::ALL {
            assert!(validate_finsler(&fx.energy(2), &g).is_ok());
        }
        let hyperbolic = ScalarField::new(2, |p| Ok((p[2] * p[2] - p[3] * p[3]) * 0.5));
        let on_axis = SampleGrid::from_points(vec![TangentPoint::new(vec![0.0, 0.0], vec![0.0, 1.0]).unwrap()]);
        assert!(matches!(
            validate_finsler(&hyperbolic, &on_axis),
            Err(GeomError::PositivityFailure { .. })
        ));
        let flat_line = ScalarField::new(2, |p| Ok(p[2] * p[2] * 0.5 + Jet::constant(1e-3)));
        assert!(matches!(
            validate_finsler(&flat_line, &g),
            Err(GeomError::HomogeneityFailure { .. })
        ));
        let degenerate = ScalarField::new(2, |p| Ok(p[2] * p[2] * 0.5));
        let off_axis = SampleGrid::from_points(vec![p0()]);
        match validate_finsler(&degenerate, &off_axis) {
            Err(GeomError::NondegeneracyFailure { point, .. }) => assert_eq!(point, p0().coords()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fundamental_form_spot_values() {
        let p = p0();
        let euc = structure(Fixture::Euclidean).fundamental_form();
        for om in [&euc.reference, &euc.fast] {
            assert!((om.at(&p, &[e(0), e(2)]).unwrap() + 1.0).abs() < 1e-14);
            assert!(om.at(&p, &[e(0), e(1)]).unwrap().abs() < 1e-14);
        }
        let rie = structure(Fixture::RiemannianExp).fundamental_form();
        assert!((rie.reference.at(&p, &[e(2), e(0)]).unwrap() - 1.0).abs() < 1e-14);
        let m = rie.matrix_at_point(&p).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(m[a][b], -m[b][a]);
            }
        }
    }

    #[test]
    fn sharp_examples() {
        let f = structure(Fixture::Euclidean);
        let p = p0();
        let dx1 = DifferentialForm::coordinate_differential(2, 0);
        assert_close(&field_at(&f.sharp(&dx1).unwrap(), &p), &[0.0, 0.0, 1.0, 0.0], 1e-15);
        let de = DifferentialForm::differential(f.energy());
        assert_close(&field_at(&f.sharp(&de).unwrap(), &p), &[-1.0, -2.0, 0.0, 0.0], 1e-14);
        let zero = DifferentialForm::zero(2, 1);
        assert_eq!(field_at(&f.sharp(&zero).unwrap(), &p), vec![0.0; 4]);
        assert!(matches!(
            f.sharp(&f.omega()),
            Err(GeomError::DegreeOutOfRange { degree: 2 })
        ));
    }

    #[test]
    fn sharp_round_trip() {
        let g = small_grid();
        let beta = DifferentialForm::one_form(vec![
            ScalarField::new(2, |p| Ok(p[0] * p[3])),
            ScalarField::new(2, |p| Ok(p[2].sin())),
            ScalarField::new(2, |p| Ok(p[1] - p[3] * p[3])),
            ScalarField::constant(2, 0.7),
        ]);
        for fx in Fixture::ALL {
            let f = structure(fx);
            let back = f.omega().insert_vector(&f.sharp(&beta).unwrap()).unwrap();
            assert!(sup_form(&back.try_sub(&beta).unwrap(), &g).unwrap() < 1e-12, "{fx:?}");
        }
    }

    #[test]
    fn gradients() {
        let f = structure(Fixture::Euclidean);
        let p = p0();
        let x1v = BaseFunction::coordinate(2, 0).vertical_lift();
        assert_close(&field_at(&f.gradient(&x1v), &p), &[0.0, 0.0, 1.0, 0.0], 1e-15);
        assert_close(&field_at(&f.gradient(f.energy()), &p), &[-1.0, -2.0, 0.0, 0.0], 1e-14);
        assert_eq!(field_at(&f.gradient(&ScalarField::constant(2, 3.0)), &p), vec![0.0; 4]);
    }

    #[test]
    fn canonical_sprays() {
        let p = p0();
        let euc = structure(Fixture::Euclidean).canonical_spray();
        assert_close(&field_at(&euc, &p), &[1.0, 2.0, 0.0, 0.0], 1e-14);
        let rie = structure(Fixture::RiemannianExp).canonical_spray();
        assert_close(&field_at(&rie, &p), &[1.0, 2.0, -1.0, 0.0], 1e-13);
        let g = grid(16);
        for q in g.iter() {
            assert_close(&field_at(&rie, q), &christoffel_spray(q), 1e-11);
        }
        for fx in Fixture::ALL {
            let s = structure(fx).canonical_spray();
            let js = crate::tangent::j_of(&s) - liouville_field(2);
            assert!(sup_field(&js, &g).unwrap() < 1e-12, "{fx:?}");
        }
    }

    #[test]
    fn berwald_spot_values() {
        let p = p0();
        let h = structure(Fixture::Euclidean).berwald_connection();
        let m = h.matrix_at(&p).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let want = if a == b && a < 2 { 1.0 } else { 0.0 };
                assert!((m[a][b] - want).abs() < 1e-13);
            }
        }
        let h = structure(Fixture::RiemannianExp).berwald_connection();
        assert_close(&h.at(&p, &[e(0)]).unwrap(), &[1.0, 0.0, -1.0, 0.0], 1e-13);
    }

    #[test]
    fn beta_sharp_on_energy_is_the_potential() {
        let g = small_grid();
        let beta = DifferentialForm::one_form(vec![
            ScalarField::new(2, |p| Ok(p[2] * p[3] + p[0])),
            ScalarField::new(2, |p| Ok((p[1] + p[2]).cos())),
            ScalarField::constant(2, 0.0),
            ScalarField::constant(2, 0.0),
        ]);
        for fx in Fixture::ALL {
            let f = structure(fx);
            let lhs = f.sharp(&beta).unwrap().apply(f.energy());
            let rhs = beta.insert_vector(&f.canonical_spray()).unwrap().as_scalar().unwrap();
            assert!(sup_scalar(&(lhs - rhs), &g).unwrap() < 1e-11, "{fx:?}");
        }
    }

    #[test]
    fn conformal_change_examples() {
        let g = small_grid();
        let f = structure(Fixture::Euclidean);
        let zero = f.conformal_change(&BaseFunction::constant(2, 0.0), &g).unwrap();
        assert!(sup_scalar(&(zero.energy().clone() - f.energy().clone()), &g).unwrap() == 0.0);
        let x1 = BaseFunction::coordinate(2, 0);
        let tilde = f.conformal_change(&x1, &g).unwrap();
        assert_eq!(tilde.energy().evaluate(&p0()).unwrap(), 2.5);
        let lw = crate::connection::wagner_form(&x1);
        let phi = x1.vertical_lift().exp();
        let lhs = d_k_function(tilde.energy(), &lw).unwrap();
        let rhs = d_k_function(f.energy(), &lw).unwrap().scaled_by(&phi);
        assert!(sup_form(&lhs.try_sub(&rhs).unwrap(), &g).unwrap() < 1e-12);
    }

    #[test]
    fn conservativity_residuals() {
        let g = small_grid();
        let f = structure(Fixture::Euclidean);
        let h0 = f.berwald_connection();
        assert_eq!(f.conservative_form_residual(&h0.try_sub(&h0).unwrap(), &g).unwrap(), 0.0);
        let lw = crate::connection::wagner_form(&BaseFunction::coordinate(2, 0));
        let dle = d_k_function(f.energy(), &lw).unwrap();
        assert!((dle.at(&p0(), &[e(0)]).unwrap() + 2.0).abs() < 1e-14);
        assert!(f.conservative_form_residual(&lw, &g).unwrap() >= 2.0);
        assert!(matches!(
            f.conservative_form_residual(&VectorForm::identity(2), &g),
            Err(GeomError::NotSemibasic { .. })
        ));
        assert!(f.conservative_connection_residual(&h0, &g).unwrap() < 1e-13);
        assert!(matches!(
            f.conservative_connection_residual(&VectorForm::identity(2), &g),
            Err(GeomError::NotConnection { .. })
        ));
    }
}
