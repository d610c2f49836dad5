use crate::calculus::{BaseFunction, SampleGrid, VectorField};
use crate::error::{GeomError, Result};
use crate::finsler::FinslerStructure;
use crate::tangent::{
    d_k_function, fn_bracket, homogeneity_residual, liouville_field, semibasic_residual_vector_form,
    semispray_residual, sup_form, sup_vector_form, vertical_endomorphism, DifferentialForm,
    VectorForm, PRECONDITION_TOL,
};

/// How a connection was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Berwald,
    LEhresmann,
    Wagner,
    FromSemispray,
}

/// A vector 1-form `h` with `h² = h`, `J∘h = J`, `h∘J = 0`.
#[derive(Debug, Clone)]
pub struct EhresmannConnection {
    form: VectorForm,
    provenance: Provenance,
}

impl EhresmannConnection {
    /// Wraps `form` without checking the projector laws; see
    /// [`projector_residual`].
    pub fn new_unchecked(form: VectorForm, provenance: Provenance) -> Self {
        EhresmannConnection { form, provenance }
    }

    pub fn form(&self) -> &VectorForm {
        &self.form
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn projector_residual(&self, grid: &SampleGrid) -> Result<f64> {
        projector_residual(&self.form, grid)
    }
}

/// `max(‖h∘h − h‖, ‖J∘h − J‖, ‖h∘J‖)` over the grid and frame.
pub fn projector_residual(h: &VectorForm, grid: &SampleGrid) -> Result<f64> {
    let j = vertical_endomorphism(h.dim());
    let idem = sup_vector_form(&h.compose(h)?.try_sub(h)?, grid)?;
    let jh = sup_vector_form(&j.compose(h)?.try_sub(&j)?, grid)?;
    let hj = sup_vector_form(&h.compose(&j)?, grid)?;
    Ok(idem.max(jh).max(hj))
}

/// `½(1 + [J, S])` without precondition checks.
pub fn connection_from_semispray_form(s: &VectorField) -> VectorForm {
    let n = s.dim();
    let j = vertical_endomorphism(n);
    let bracket = fn_bracket(&j, &s.into()).expect("(1,0) bracket");
    (VectorForm::identity(n) + bracket).scale(0.5)
}

/// Connection generated by a semispray `S` (`JS = C` required).
pub fn connection_from_semispray(s: &VectorField, grid: &SampleGrid) -> Result<EhresmannConnection> {
    let r = semispray_residual(s, grid)?;
    if r >= PRECONDITION_TOL {
        return Err(GeomError::NotSemispray { residual: r });
    }
    Ok(EhresmannConnection::new_unchecked(
        connection_from_semispray_form(s),
        Provenance::FromSemispray,
    ))
}

/// Berwald connection `h₀` of `F`.
pub fn berwald(f: &FinslerStructure) -> EhresmannConnection {
    EhresmannConnection::new_unchecked(f.berwald_connection(), Provenance::Berwald)
}

/// `h(S₀)`: the horizontal part of the canonical spray.
pub fn associated_semispray(f: &FinslerStructure, h: &EhresmannConnection) -> VectorField {
    h.form()
        .apply_field(&f.canonical_spray())
        .expect("connections are vector 1-forms")
}

pub(crate) fn ensure_semibasic(l: &VectorForm, grid: &SampleGrid) -> Result<()> {
    if l.degree() != 1 {
        return Err(GeomError::DegreeOutOfRange { degree: l.degree() });
    }
    let r = semibasic_residual_vector_form(l, grid)?;
    if r < PRECONDITION_TOL {
        Ok(())
    } else {
        Err(GeomError::NotSemibasic { residual: r })
    }
}

/// `Θ_L = L + [J, (d_L E)#]` without precondition checks.
pub(crate) fn theta_unchecked(f: &FinslerStructure, l: &VectorForm) -> Result<VectorForm> {
    let j = vertical_endomorphism(f.dim());
    let u = f.sharp(&d_k_function(f.energy(), l)?)?;
    Ok(l + &fn_bracket(&j, &u.into())?)
}

/// `Θ_L = L + [J, (d_L E)#] = h_L − h₀`.
pub fn theta_operator(f: &FinslerStructure, l: &VectorForm, grid: &SampleGrid) -> Result<VectorForm> {
    ensure_semibasic(l, grid)?;
    theta_unchecked(f, l)
}

/// `h_L = h₀ + L + [J, (d_L E)#]`.
pub fn l_ehresmann_connection(
    f: &FinslerStructure,
    l: &VectorForm,
    grid: &SampleGrid,
) -> Result<EhresmannConnection> {
    let theta = theta_operator(f, l, grid)?;
    Ok(EhresmannConnection::new_unchecked(
        f.berwald_connection() + theta,
        Provenance::LEhresmann,
    ))
}

/// `L_W = ½(f^c J − df^v ⊗ C)`.
pub fn wagner_form(func: &BaseFunction) -> VectorForm {
    let n = func.dim();
    let j = vertical_endomorphism(n);
    let fc = func.complete_lift();
    let dfv = DifferentialForm::differential(&func.vertical_lift());
    let rhs = VectorForm::tensor(&dfv, &liouville_field(n)).expect("1-form");
    (j.scaled_by(&fc) - rhs).scale(0.5)
}

/// Wagner connection `h̄ = h₀ + f^c J − E[J, grad f^v] − d_J E ⊗ grad f^v`,
/// returned with the form `L_W` for which `h̄ = h_{L_W}`.
pub fn wagner_connection(f: &FinslerStructure, func: &BaseFunction) -> (EhresmannConnection, VectorForm) {
    let n = f.dim();
    let j = vertical_endomorphism(n);
    let e = f.energy();
    let grad = f.gradient(&func.vertical_lift());
    let fcj = j.scaled_by(&func.complete_lift());
    let bracket = fn_bracket(&j, &(&grad).into())
        .expect("(1,0) bracket")
        .scaled_by(e);
    let tensor = VectorForm::tensor(&f.d_j_energy(), &grad).expect("1-form");
    let h = f.berwald_connection() + fcj - bracket - tensor;
    (
        EhresmannConnection::new_unchecked(h, Provenance::Wagner),
        wagner_form(func),
    )
}

/// Weak torsion `t = [J, h]`.
pub fn weak_torsion(h: &EhresmannConnection) -> VectorForm {
    let j = vertical_endomorphism(h.form().dim());
    fn_bracket(&j, h.form()).expect("(1,1) bracket")
}

/// Tension `H = [C, h]`.
pub fn tension(h: &EhresmannConnection) -> VectorForm {
    let c: VectorForm = liouville_field(h.form().dim()).into();
    fn_bracket(&c, h.form()).expect("(0,1) bracket")
}

/// Residual summary of one connection.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionDiagnostics {
    pub projector: f64,
    pub weak_torsion: f64,
    pub tension: f64,
    pub conservativity: f64,
    /// `‖[C, h]‖`, the degree-1 homogeneity defect of `h`.
    pub homogeneity: f64,
}

pub fn diagnostics(
    f: &FinslerStructure,
    h: &EhresmannConnection,
    grid: &SampleGrid,
) -> Result<ConnectionDiagnostics> {
    let projector = h.projector_residual(grid)?;
    let weak_torsion = sup_vector_form(&weak_torsion(h), grid)?;
    let tension = sup_vector_form(&tension(h), grid)?;
    let conservativity = sup_form(&d_k_function(f.energy(), h.form())?, grid)?;
    let homogeneity = homogeneity_residual(h.form(), 1.0, grid)?;
    Ok(ConnectionDiagnostics {
        projector,
        weak_torsion,
        tension,
        conservativity,
        homogeneity,
    })
}

/// Componentwise sup distance between two vector forms of equal degree.
pub fn distance(a: &VectorForm, b: &VectorForm, grid: &SampleGrid) -> Result<f64> {
    sup_vector_form(&a.try_sub(b)?, grid)
}

