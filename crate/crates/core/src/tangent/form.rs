//! Differential forms and vector-valued forms on the slit tangent bundle.
//!
//! Both are stored as pointwise evaluators `(p, [X₁…X_k]) ↦ value`. Vector
//! arguments are tangent vectors at `p`; derivatives of forms extend them as
//! constant fields in the chart, so coordinate brackets vanish and every
//! tensorial formula below only needs directional derivatives.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use crate::calculus::field::{derive_scalar, derive_vec, frame_vector, to_jets, values};
use crate::calculus::{Jet, ScalarField, TangentPoint, VectorField};
use crate::error::{GeomError, Result};

type FormFn = dyn Fn(&[Jet], &[&[Jet]]) -> Result<Jet> + Send + Sync;
type VectorFormFn = dyn Fn(&[Jet], &[&[Jet]]) -> Result<Vec<Jet>> + Send + Sync;

/// Highest form degree the library builds.
pub const MAX_FORM_DEGREE: usize = 3;

fn sign(i: usize) -> f64 {
    if i.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn without<'a>(args: &[&'a [Jet]], skip: usize) -> Vec<&'a [Jet]> {
    args.iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, a)| *a)
        .collect()
}

/// Skew `p`-linear form on `TM` with `p ≤ 3`.
#[derive(Clone)]
pub struct DifferentialForm {
    n: usize,
    degree: usize,
    f: Arc<FormFn>,
}

impl fmt::Debug for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DifferentialForm(n = {}, degree = {})", self.n, self.degree)
    }
}

impl DifferentialForm {
    pub fn new<F>(n: usize, degree: usize, f: F) -> Result<Self>
    where
        F: Fn(&[Jet], &[&[Jet]]) -> Result<Jet> + Send + Sync + 'static,
    {
        if degree > MAX_FORM_DEGREE {
            return Err(GeomError::DegreeOutOfRange { degree });
        }
        Ok(DifferentialForm {
            n,
            degree,
            f: Arc::new(f),
        })
    }

    fn build<F>(n: usize, degree: usize, f: F) -> Self
    where
        F: Fn(&[Jet], &[&[Jet]]) -> Result<Jet> + Send + Sync + 'static,
    {
        debug_assert!(degree <= MAX_FORM_DEGREE);
        DifferentialForm {
            n,
            degree,
            f: Arc::new(f),
        }
    }

    pub fn zero(n: usize, degree: usize) -> Self {
        Self::build(n, degree, |_, _| Ok(Jet::ZERO))
    }

    pub fn from_scalar(f: &ScalarField) -> Self {
        let f = f.clone();
        Self::build(f.dim(), 0, move |p, _| f.eval(p))
    }

    /// `df`.
    pub fn differential(f: &ScalarField) -> Self {
        let f = f.clone();
        Self::build(f.dim(), 1, move |p, a| f.derivative_along(p, a[0]))
    }

    /// `Σ_a β_a dz^a` from `2n` coefficient fields.
    pub fn one_form(components: Vec<ScalarField>) -> Self {
        let n = components.len() / 2;
        Self::build(n, 1, move |p, a| {
            let mut s = Jet::ZERO;
            for (c, v) in components.iter().zip(a[0]) {
                s += c.eval(p)? * *v;
            }
            Ok(s)
        })
    }

    /// The 1-form `dz^a`.
    pub fn coordinate_differential(n: usize, a: usize) -> Self {
        Self::build(n, 1, move |_, args| Ok(args[0][a]))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn eval(&self, p: &[Jet], args: &[&[Jet]]) -> Result<Jet> {
        debug_assert_eq!(args.len(), self.degree);
        (self.f)(p, args)
    }

    pub fn at(&self, p: &TangentPoint, args: &[Vec<f64>]) -> Result<f64> {
        if args.len() != self.degree {
            return Err(GeomError::DegreeOutOfRange { degree: args.len() });
        }
        let jets: Vec<Vec<Jet>> = args.iter().map(|a| to_jets(a)).collect();
        let refs: Vec<&[Jet]> = jets.iter().map(Vec::as_slice).collect();
        Ok(self.eval(&p.to_jets(), &refs)?.value())
    }

    /// Coefficients `α(e_a)` of a 1-form at a point.
    pub fn components_at(&self, p: &[Jet]) -> Result<Vec<Jet>> {
        if self.degree != 1 {
            return Err(GeomError::DegreeOutOfRange { degree: self.degree });
        }
        (0..2 * self.n)
            .map(|a| self.eval(p, &[&frame_vector(2 * self.n, a)]))
            .collect()
    }

    /// Interprets a 0-form as a scalar field.
    pub fn as_scalar(&self) -> Result<ScalarField> {
        if self.degree != 0 {
            return Err(GeomError::DegreeOutOfRange { degree: self.degree });
        }
        let a = self.clone();
        Ok(ScalarField::new(self.n, move |p| a.eval(p, &[])))
    }

    pub fn scale(&self, k: f64) -> Self {
        let a = self.clone();
        Self::build(self.n, self.degree, move |p, x| Ok(a.eval(p, x)? * k))
    }

    pub fn scaled_by(&self, g: &ScalarField) -> Self {
        let (a, g) = (self.clone(), g.clone());
        Self::build(self.n, self.degree, move |p, x| Ok(a.eval(p, x)? * g.eval(p)?))
    }

    fn combine(&self, rhs: &Self, k: f64) -> Result<Self> {
        if self.degree != rhs.degree {
            return Err(GeomError::DegreeOutOfRange { degree: rhs.degree });
        }
        let (a, b) = (self.clone(), rhs.clone());
        Ok(Self::build(self.n, self.degree, move |p, x| {
            Ok(a.eval(p, x)? + b.eval(p, x)? * k)
        }))
    }

    /// `self + rhs`; degrees must agree.
    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, 1.0)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, -1.0)
    }

    /// `dα` by the alternating-sum formula on constant frame extensions.
    pub fn exterior_derivative(&self) -> Result<Self> {
        if self.degree >= MAX_FORM_DEGREE {
            return Err(GeomError::DegreeOutOfRange { degree: self.degree });
        }
        let a = self.clone();
        Ok(Self::build(self.n, self.degree + 1, move |p, args| {
            let mut s = Jet::ZERO;
            for i in 0..args.len() {
                let rest = without(args, i);
                let d = derive_scalar(p, args[i], args, |q| a.eval(q, &rest))?;
                s += d * sign(i);
            }
            Ok(s)
        }))
    }

    /// `i_Y α`.
    pub fn insert_vector(&self, y: &VectorField) -> Result<Self> {
        if self.degree == 0 {
            return Err(GeomError::DegreeOutOfRange { degree: 0 });
        }
        let (a, y) = (self.clone(), y.clone());
        Ok(Self::build(self.n, self.degree - 1, move |p, args| {
            let yp = y.eval(p)?;
            let mut full: Vec<&[Jet]> = Vec::with_capacity(args.len() + 1);
            full.push(&yp);
            full.extend_from_slice(args);
            a.eval(p, &full)
        }))
    }

    /// `i_K α` for a vector form `K` of degree 0, 1 or 2.
    ///
    /// Degree 1: `Σᵢ α(X₁,…,KXᵢ,…,X_p)`. Degree 2: the shuffle sum
    /// `Σ_{i<j} ± α(K(Xᵢ,Xⱼ), …)`.
    pub fn insert_vector_form(&self, k: &VectorForm) -> Result<Self> {
        match k.degree() {
            0 if self.degree == 0 => Ok(Self::zero(self.n, 0)),
            0 => self.insert_vector(&k.as_vector_field()?),
            1 => {
                if self.degree == 0 {
                    return Ok(Self::zero(self.n, 0));
                }
                let (a, k) = (self.clone(), k.clone());
                Ok(Self::build(self.n, self.degree, move |p, args| {
                    let mut s = Jet::ZERO;
                    for i in 0..args.len() {
                        let kx = k.eval(p, &[args[i]])?;
                        let mut sub: Vec<&[Jet]> = args.to_vec();
                        sub[i] = &kx;
                        s += a.eval(p, &sub)?;
                    }
                    Ok(s)
                }))
            }
            2 => {
                if self.degree == 0 {
                    return Ok(Self::zero(self.n, 1));
                }
                let out = self.degree + 1;
                if out > MAX_FORM_DEGREE {
                    return Err(GeomError::DegreeOutOfRange { degree: out });
                }
                let (a, k) = (self.clone(), k.clone());
                Ok(Self::build(self.n, out, move |p, args| {
                    let mut s = Jet::ZERO;
                    for i in 0..args.len() {
                        for j in (i + 1)..args.len() {
                            let kxy = k.eval(p, &[args[i], args[j]])?;
                            let mut sub: Vec<&[Jet]> = Vec::with_capacity(args.len() - 1);
                            sub.push(&kxy);
                            sub.extend(
                                args.iter()
                                    .enumerate()
                                    .filter(|&(m, _)| m != i && m != j)
                                    .map(|(_, v)| *v),
                            );
                            s += a.eval(p, &sub)? * sign(i + j + 1);
                        }
                    }
                    Ok(s)
                }))
            }
            d => Err(GeomError::DegreeOutOfRange { degree: d }),
        }
    }

    /// `d_K = i_K ∘ d − (−1)^{k−1} d ∘ i_K`.
    pub fn d_k(&self, k: &VectorForm) -> Result<Self> {
        let out = self.degree + k.degree();
        if out > MAX_FORM_DEGREE {
            return Err(GeomError::DegreeOutOfRange { degree: out });
        }
        let first = self.exterior_derivative()?.insert_vector_form(k)?;
        if self.degree == 0 {
            // i_K vanishes on functions
            return Ok(first);
        }
        let second = self.insert_vector_form(k)?.exterior_derivative()?;
        if k.degree() == 1 {
            first.try_sub(&second)
        } else {
            first.try_add(&second)
        }
    }

    /// `L_Y α = i_Y dα + d i_Y α`.
    pub fn lie_derivative(&self, y: &VectorField) -> Result<Self> {
        let first = self.exterior_derivative()?.insert_vector(y)?;
        if self.degree == 0 {
            return Ok(first);
        }
        first.try_add(&self.insert_vector(y)?.exterior_derivative()?)
    }
}

/// `d_K f = df ∘ K` for a function and a vector form of degree 1 or 2.
pub fn d_k_function(f: &ScalarField, k: &VectorForm) -> Result<DifferentialForm> {
    DifferentialForm::differential(f).insert_vector_form(k)
}

impl Neg for DifferentialForm {
    type Output = DifferentialForm;
    fn neg(self) -> DifferentialForm {
        self.scale(-1.0)
    }
}

/// Vector-valued skew `k`-form on `TM`, `k ≤ 2`. Degree 0 is a vector field.
#[derive(Clone)]
pub struct VectorForm {
    n: usize,
    degree: usize,
    f: Arc<VectorFormFn>,
}

impl fmt::Debug for VectorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorForm(n = {}, degree = {})", self.n, self.degree)
    }
}

impl From<VectorField> for VectorForm {
    fn from(y: VectorField) -> Self {
        let n = y.dim();
        VectorForm::build(n, 0, move |p, _| y.eval(p))
    }
}

impl From<&VectorField> for VectorForm {
    fn from(y: &VectorField) -> Self {
        y.clone().into()
    }
}

impl VectorForm {
    pub const MAX_DEGREE: usize = 2;

    pub fn new<F>(n: usize, degree: usize, f: F) -> Result<Self>
    where
        F: Fn(&[Jet], &[&[Jet]]) -> Result<Vec<Jet>> + Send + Sync + 'static,
    {
        if degree > Self::MAX_DEGREE {
            return Err(GeomError::DegreeOutOfRange { degree });
        }
        Ok(Self::build(n, degree, f))
    }

    pub(crate) fn build<F>(n: usize, degree: usize, f: F) -> Self
    where
        F: Fn(&[Jet], &[&[Jet]]) -> Result<Vec<Jet>> + Send + Sync + 'static,
    {
        debug_assert!(degree <= Self::MAX_DEGREE);
        VectorForm {
            n,
            degree,
            f: Arc::new(f),
        }
    }

    pub fn zero(n: usize, degree: usize) -> Self {
        Self::build(n, degree, move |_, _| Ok(alloc::vec![Jet::ZERO; 2 * n]))
    }

    /// The identity `1_{X(TM)}`.
    pub fn identity(n: usize) -> Self {
        Self::build(n, 1, |_, a| Ok(a[0].to_vec()))
    }

    /// `α ⊗ X : Y ↦ α(Y) X`.
    pub fn tensor(alpha: &DifferentialForm, x: &VectorField) -> Result<Self> {
        if alpha.degree() != 1 {
            return Err(GeomError::DegreeOutOfRange {
                degree: alpha.degree(),
            });
        }
        let (a, x) = (alpha.clone(), x.clone());
        Ok(Self::build(x.dim(), 1, move |p, args| {
            let s = a.eval(p, args)?;
            Ok(x.eval(p)?.into_iter().map(|c| c * s).collect())
        }))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn eval(&self, p: &[Jet], args: &[&[Jet]]) -> Result<Vec<Jet>> {
        debug_assert_eq!(args.len(), self.degree);
        (self.f)(p, args)
    }

    pub fn at(&self, p: &TangentPoint, args: &[Vec<f64>]) -> Result<Vec<f64>> {
        if args.len() != self.degree {
            return Err(GeomError::DegreeOutOfRange { degree: args.len() });
        }
        let jets: Vec<Vec<Jet>> = args.iter().map(|a| to_jets(a)).collect();
        let refs: Vec<&[Jet]> = jets.iter().map(Vec::as_slice).collect();
        Ok(values(&self.eval(&p.to_jets(), &refs)?))
    }

    /// Matrix of a vector 1-form at a point: column `b` is `K(e_b)`, so
    /// entry `[a][b]` is the `a`-component of `K(e_b)`.
    pub fn matrix_at(&self, p: &TangentPoint) -> Result<Vec<Vec<f64>>> {
        if self.degree != 1 {
            return Err(GeomError::DegreeOutOfRange { degree: self.degree });
        }
        let m = 2 * self.n;
        let pj = p.to_jets();
        let cols = (0..m)
            .map(|b| Ok(values(&self.eval(&pj, &[&frame_vector(m, b)])?)))
            .collect::<Result<Vec<_>>>()?;
        Ok((0..m).map(|a| (0..m).map(|b| cols[b][a]).collect()).collect())
    }

    pub fn as_vector_field(&self) -> Result<VectorField> {
        if self.degree != 0 {
            return Err(GeomError::DegreeOutOfRange { degree: self.degree });
        }
        let k = self.clone();
        Ok(VectorField::new(self.n, move |p| k.eval(p, &[])))
    }

    /// The field `q ↦ K(q; X)` for a vector 1-form and a vector field `X`.
    pub fn apply_field(&self, x: &VectorField) -> Result<VectorField> {
        if self.degree != 1 {
            return Err(GeomError::DegreeOutOfRange { degree: self.degree });
        }
        let (k, x) = (self.clone(), x.clone());
        Ok(VectorField::new(self.n, move |p| {
            let xp = x.eval(p)?;
            k.eval(p, &[&xp])
        }))
    }

    /// `i_Y K = K(Y, …)`.
    pub fn insert_vector(&self, y: &VectorField) -> Result<Self> {
        if self.degree == 0 {
            return Err(GeomError::DegreeOutOfRange { degree: 0 });
        }
        let (k, y) = (self.clone(), y.clone());
        Ok(Self::build(self.n, self.degree - 1, move |p, args| {
            let yp = y.eval(p)?;
            let mut full: Vec<&[Jet]> = Vec::with_capacity(args.len() + 1);
            full.push(&yp);
            full.extend_from_slice(args);
            k.eval(p, &full)
        }))
    }

    /// `self ∘ rhs` for a vector 1-form `self`: `(K∘L)(X,…) = K(L(X,…))`.
    pub fn compose(&self, rhs: &VectorForm) -> Result<Self> {
        if self.degree != 1 {
            return Err(GeomError::DegreeOutOfRange { degree: self.degree });
        }
        let (k, l) = (self.clone(), rhs.clone());
        Ok(Self::build(self.n, rhs.degree, move |p, args| {
            let inner = l.eval(p, args)?;
            k.eval(p, &[&inner])
        }))
    }

    pub fn scale(&self, c: f64) -> Self {
        let k = self.clone();
        Self::build(self.n, self.degree, move |p, a| {
            Ok(k.eval(p, a)?.into_iter().map(|v| v * c).collect())
        })
    }

    pub fn scaled_by(&self, g: &ScalarField) -> Self {
        let (k, g) = (self.clone(), g.clone());
        Self::build(self.n, self.degree, move |p, a| {
            let s = g.eval(p)?;
            Ok(k.eval(p, a)?.into_iter().map(|v| v * s).collect())
        })
    }

    fn combine(&self, rhs: &Self, c: f64) -> Result<Self> {
        if self.degree != rhs.degree {
            return Err(GeomError::DegreeOutOfRange { degree: rhs.degree });
        }
        let (k, l) = (self.clone(), rhs.clone());
        Ok(Self::build(self.n, self.degree, move |p, a| {
            Ok(k.eval(p, a)?
                .into_iter()
                .zip(l.eval(p, a)?)
                .map(|(u, v)| u + v * c)
                .collect())
        }))
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, 1.0)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, -1.0)
    }

    /// `D_p[K(·; args)][dir]` with the arguments held constant.
    pub(crate) fn derivative_along(
        &self,
        p: &[Jet],
        args: &[&[Jet]],
        dir: &[Jet],
    ) -> Result<Vec<Jet>> {
        derive_vec(p, dir, args, |q| self.eval(q, args))
    }
}

macro_rules! vector_form_binop {
    ($tr:ident, $m:ident, $c:expr) => {
        impl $tr for &VectorForm {
            type Output = VectorForm;
            /// Panics on mismatched degrees; use the `try_` variants otherwise.
            fn $m(self, rhs: &VectorForm) -> VectorForm {
                self.combine(rhs, $c).expect("vector forms of equal degree")
            }
        }
        impl $tr for VectorForm {
            type Output = VectorForm;
            fn $m(self, rhs: VectorForm) -> VectorForm {
                (&self).$m(&rhs)
            }
        }
    };
}

vector_form_binop!(Add, add, 1.0);
vector_form_binop!(Sub, sub, -1.0);

impl Neg for VectorForm {
    type Output = VectorForm;
    fn neg(self) -> VectorForm {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::BaseFunction;
    use crate::finsler::Fixture;
    use crate::tangent::{
        fn_bracket, liouville_field, sup_form, vertical_endomorphism, vertical_lift_coordinate,
    };
    use crate::testing::*;
    use alloc::vec;

    fn wobble() -> ScalarField {
        ScalarField::new(2, |p| Ok((p[0] * p[3]).sin() + p[1] * p[2] * p[2] + (p[2] * 0.3).exp()))
    }

    #[test]
    fn insertions_into_the_flat_fundamental_form() {
        let f = structure(Fixture::Euclidean);
        let om = f.omega();
        let p = p0();
        let ic = om.insert_vector(&liouville_field(2)).unwrap();
        assert_close(&values(&ic.components_at(&p.to_jets()).unwrap()), &[1.0, 2.0, 0.0, 0.0], 1e-14);
        let is0 = om.insert_vector(&f.canonical_spray()).unwrap();
        assert_close(&values(&is0.components_at(&p.to_jets()).unwrap()), &[0.0, 0.0, -1.0, -2.0], 1e-13);
        let idy = om.insert_vector(&vertical_lift_coordinate(2, 0)).unwrap();
        assert_close(&values(&idy.components_at(&p.to_jets()).unwrap()), &[1.0, 0.0, 0.0, 0.0], 1e-14);
    }

    #[test]
    fn liouville_insertion_and_lie_derivative_of_omega() {
        let g = small_grid();
        for fx in Fixture::ALL {
            let f = structure(fx);
            let om = f.omega();
            let c = liouville_field(2);
            let ic = om.insert_vector(&c).unwrap().try_sub(&f.d_j_energy()).unwrap();
            assert!(sup_form(&ic, &g).unwrap() < 1e-12, "{fx:?}");
            let lc = om.lie_derivative(&c).unwrap().try_sub(&om).unwrap();
            assert!(sup_form(&lc, &g).unwrap() < 1e-10, "{fx:?}");
            let ij = om.insert_vector_form(&vertical_endomorphism(2)).unwrap();
            assert!(sup_form(&ij, &g).unwrap() < 1e-12, "{fx:?}");
        }
    }

    #[test]
    fn berwald_insertion_fixes_omega() {
        let g = small_grid();
        let f = structure(Fixture::Euclidean);
        let om = f.omega();
        let ih = om.insert_vector_form(&f.berwald_connection()).unwrap();
        assert!(sup_form(&ih.try_sub(&om).unwrap(), &g).unwrap() < 1e-12);
    }

    #[test]
    fn exterior_derivative_identities() {
        let g = small_grid();
        for fx in Fixture::ALL {
            let f = structure(fx);
            let ff = f.fundamental_form();
            let gap = ff.reference.try_sub(&ff.fast).unwrap();
            assert!(sup_form(&gap, &g).unwrap() < 1e-11, "{fx:?}");
            let d_om = ff.reference.exterior_derivative().unwrap();
            assert!(sup_form(&d_om, &g).unwrap() < 1e-10, "{fx:?}");
        }
        let dx1 = DifferentialForm::coordinate_differential(2, 0);
        assert!(sup_form(&dx1.exterior_derivative().unwrap(), &g).unwrap() == 0.0);
        let ddw = DifferentialForm::differential(&wobble()).exterior_derivative().unwrap();
        assert!(sup_form(&ddw, &g).unwrap() < 1e-12);
        let three = DifferentialForm::zero(2, 3);
        assert!(matches!(three.exterior_derivative(), Err(GeomError::DegreeOutOfRange { .. })));
    }

    #[test]
    fn vertical_derivative_of_energy() {
        let f = structure(Fixture::Euclidean);
        let dje = f.d_j_energy();
        assert_close(&values(&dje.components_at(&p0().to_jets()).unwrap()), &[1.0, 2.0, 0.0, 0.0], 1e-14);
        let ij_de = DifferentialForm::differential(f.energy())
            .insert_vector_form(&vertical_endomorphism(2))
            .unwrap();
        assert!(sup_form(&ij_de.try_sub(&dje).unwrap(), &small_grid()).unwrap() < 1e-14);
    }

    #[test]
    fn berwald_is_conservative_and_lifts_are_vertically_constant() {
        let g = small_grid();
        for fx in Fixture::ALL {
            let f = structure(fx);
            let dh = d_k_function(f.energy(), &f.berwald_connection()).unwrap();
            assert!(sup_form(&dh, &g).unwrap() < 1e-10, "{fx:?}");
        }
        let phi = BaseFunction::coordinate(2, 0).vertical_lift().exp();
        let dj = d_k_function(&phi, &vertical_endomorphism(2)).unwrap();
        assert!(sup_form(&dj, &g).unwrap() == 0.0);
    }

    #[test]
    fn forms_are_skew() {
        let p = p0();
        let f = structure(Fixture::Randers03);
        let om = f.omega();
        let dom = f.fundamental_form().reference;
        for a in 0..4 {
            for b in 0..4 {
                let u = om.at(&p, &[e(a), e(b)]).unwrap();
                let v = om.at(&p, &[e(b), e(a)]).unwrap();
                assert!((u + v).abs() < 1e-12);
                let u = dom.at(&p, &[e(a), e(b)]).unwrap();
                let v = dom.at(&p, &[e(b), e(a)]).unwrap();
                assert!((u + v).abs() < 1e-12);
            }
        }
    }

    /// `d_{[K,L]} f` against the graded commutator `d_K d_L f + d_L d_K f`.
    fn derivation_defect(k: &VectorForm, l: &VectorForm, f: &ScalarField) -> f64 {
        let lhs = d_k_function(f, &fn_bracket(k, l).unwrap()).unwrap();
        let kl = d_k_function(f, l).unwrap().d_k(k).unwrap();
        let lk = d_k_function(f, k).unwrap().d_k(l).unwrap();
        let rhs = kl.try_add(&lk).unwrap();
        sup_form(&lhs.try_sub(&rhs).unwrap(), &small_grid()).unwrap()
    }

    #[test]
    fn bracket_is_the_commutator_of_derivations() {
        let j = vertical_endomorphism(2);
        let f = structure(Fixture::RiemannianExp);
        let h = f.berwald_connection();
        let w = wobble();
        assert!(derivation_defect(&j, &j, &w) < 1e-10);
        assert!(derivation_defect(&j, &h, &w) < 1e-9);
        let twist = VectorForm::tensor(
            &DifferentialForm::coordinate_differential(2, 1),
            &VectorField::from_components(vec![
                ScalarField::constant(2, 0.0),
                ScalarField::new(2, |p| Ok(p[0] * p[2])),
                ScalarField::new(2, |p| Ok(p[3].sin())),
                ScalarField::constant(2, 1.0),
            ]),
        )
        .unwrap();
        assert!(derivation_defect(&twist, &h, &w) < 1e-9);
    }

    #[test]
    fn insertion_of_bracket_with_a_field() {
        // i_{[K,Y]} = i_Y d_K + d_K i_Y − L_{KY} on 1-forms
        let g = small_grid();
        let f = structure(Fixture::Randers03);
        let k = f.berwald_connection();
        let y = f.canonical_spray().scale(0.5) + liouville_field(2);
        let alpha = DifferentialForm::differential(&wobble()).scaled_by(f.energy());
        let ky = k.apply_field(&y).unwrap();
        let lhs = alpha.insert_vector_form(&fn_bracket(&k, &y.clone().into()).unwrap()).unwrap();
        let rhs = alpha
            .d_k(&k)
            .unwrap()
            .insert_vector(&y)
            .unwrap()
            .try_add(&alpha.insert_vector(&y).unwrap().d_k(&k).unwrap())
            .unwrap()
            .try_sub(&alpha.lie_derivative(&ky).unwrap())
            .unwrap();
        assert!(sup_form(&lhs.try_sub(&rhs).unwrap(), &g).unwrap() < 1e-9);
    }

    #[test]
    fn insertion_rules() {
        let j = vertical_endomorphism(2);
        let om = structure(Fixture::Euclidean).omega();
        assert!(matches!(
            DifferentialForm::from_scalar(&wobble()).insert_vector(&liouville_field(2)),
            Err(GeomError::DegreeOutOfRange { degree: 0 })
        ));
        assert_eq!(om.insert_vector_form(&fn_bracket(&j, &j).unwrap()).unwrap().degree(), 3);
        let dx = DifferentialForm::coordinate_differential(2, 0);
        assert!(matches!(
            dx.exterior_derivative().unwrap().exterior_derivative().unwrap().d_k(&j),
            Err(GeomError::DegreeOutOfRange { degree: 4 })
        ));
    }

    #[test]
    fn vector_form_matrix_and_tensor() {
        let dx1 = DifferentialForm::coordinate_differential(2, 0);
        let c = liouville_field(2);
        let t = VectorForm::tensor(&dx1, &c).unwrap();
        let m = t.matrix_at(&p0()).unwrap();
        assert_eq!(m[2][0], 1.0);
        assert_eq!(m[3][0], 2.0);
        assert_eq!(m[3][1], 0.0);
        let id = VectorForm::identity(2);
        let v = id.at(&p0(), &[vec![1.0, -2.0, 3.0, 0.5]]).unwrap();
        assert_eq!(v, vec![1.0, -2.0, 3.0, 0.5]);
    }
}
