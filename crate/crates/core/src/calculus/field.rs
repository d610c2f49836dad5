//! Scalar and vector fields on the slit tangent bundle, stored as pure
//! evaluators over jet-valued coordinates `[x¹…xⁿ, y¹…yⁿ]`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use super::jet::{fresh_index, Jet};
use super::sample::TangentPoint;
use crate::error::{GeomError, Result};

type ScalarFn = dyn Fn(&[Jet]) -> Result<Jet> + Send + Sync;
type VectorFn = dyn Fn(&[Jet]) -> Result<Vec<Jet>> + Send + Sync;

/// `D f(p)[dir]` for a vector-valued evaluator.
///
/// `captured` lists every other jet the evaluator reads, so the derivative
/// claims an infinitesimal none of them carries.
pub fn derive_vec<F>(p: &[Jet], dir: &[Jet], captured: &[&[Jet]], f: F) -> Result<Vec<Jet>>
where
    F: FnOnce(&[Jet]) -> Result<Vec<Jet>>,
{
    let idx = fresh_index(p.iter().chain(dir).chain(captured.iter().flat_map(|c| c.iter())))?;
    let q = p
        .iter()
        .zip(dir)
        .map(|(a, d)| a.perturbed(idx, *d))
        .collect::<Result<Vec<_>>>()?;
    Ok(f(&q)?.iter().map(|v| v.tangent_part(idx)).collect())
}

/// Scalar version of [`derive_vec`].
pub fn derive_scalar<F>(p: &[Jet], dir: &[Jet], captured: &[&[Jet]], f: F) -> Result<Jet>
where
    F: FnOnce(&[Jet]) -> Result<Jet>,
{
    let idx = fresh_index(p.iter().chain(dir).chain(captured.iter().flat_map(|c| c.iter())))?;
    let q = p
        .iter()
        .zip(dir)
        .map(|(a, d)| a.perturbed(idx, *d))
        .collect::<Result<Vec<_>>>()?;
    Ok(f(&q)?.tangent_part(idx))
}

/// Coordinate basis vector `e_a` of the 2n-dimensional frame.
pub fn frame_vector(dim2: usize, a: usize) -> Vec<Jet> {
    let mut v = alloc::vec![Jet::ZERO; dim2];
    v[a] = Jet::ONE;
    v
}

pub fn to_jets(v: &[f64]) -> Vec<Jet> {
    v.iter().map(|&x| Jet::constant(x)).collect()
}

pub fn values(v: &[Jet]) -> Vec<f64> {
    v.iter().map(Jet::value).collect()
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(GeomError::DimensionMismatch { expected, found })
    }
}

/// Smooth function on the slit tangent bundle of an `n`-manifold.
#[derive(Clone)]
pub struct ScalarField {
    n: usize,
    f: Arc<ScalarFn>,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarField(n = {})", self.n)
    }
}

impl ScalarField {
    pub fn new<F>(n: usize, f: F) -> Self
    where
        F: Fn(&[Jet]) -> Result<Jet> + Send + Sync + 'static,
    {
        ScalarField { n, f: Arc::new(f) }
    }

    pub fn constant(n: usize, c: f64) -> Self {
        Self::new(n, move |_| Ok(Jet::constant(c)))
    }

    /// The coordinate function `z^a`, `a < 2n` (`a ≥ n` are fiber coordinates).
    pub fn coordinate(n: usize, a: usize) -> Self {
        Self::new(n, move |p| Ok(p[a]))
    }

    /// Manifold dimension `n`; the field has `2n` arguments.
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn eval(&self, p: &[Jet]) -> Result<Jet> {
        (self.f)(p)
    }

    pub fn evaluate(&self, p: &TangentPoint) -> Result<f64> {
        check_len(self.n, p.dim())?;
        Ok(self.eval(&p.to_jets())?.value())
    }

    /// `df(p)[dir]` at jet level.
    pub fn derivative_along(&self, p: &[Jet], dir: &[Jet]) -> Result<Jet> {
        derive_scalar(p, dir, &[], |q| self.eval(q))
    }

    /// Mixed directional derivative `∂ᵏf / ∂v₁…∂v_k` with `1 ≤ k ≤ 3`.
    pub fn directional_derivative(&self, p: &TangentPoint, dirs: &[Vec<f64>]) -> Result<f64> {
        let k = dirs.len();
        if !(1..=3).contains(&k) {
            return Err(GeomError::OrderOutOfRange { order: k });
        }
        check_len(self.n, p.dim())?;
        for d in dirs {
            check_len(2 * self.n, d.len())?;
        }
        let mut q = p.to_jets();
        for (i, d) in dirs.iter().enumerate() {
            for (z, v) in q.iter_mut().zip(d) {
                *z = z.perturbed(i + 1, Jet::constant(*v))?;
            }
        }
        let mask = (1usize << k) - 1;
        Ok(self.eval(&q)?.coefficient(mask))
    }

    pub fn map(&self, g: fn(Jet) -> Jet) -> ScalarField {
        let f = self.clone();
        Self::new(self.n, move |p| Ok(g(f.eval(p)?)))
    }

    pub fn exp(&self) -> ScalarField {
        self.map(Jet::exp)
    }

    pub fn sqrt(&self) -> ScalarField {
        self.map(Jet::sqrt)
    }

    pub fn scale(&self, k: f64) -> ScalarField {
        let f = self.clone();
        Self::new(self.n, move |p| Ok(f.eval(p)? * k))
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for ScalarField {
            type Output = ScalarField;
            fn $m(self, rhs: ScalarField) -> ScalarField {
                let n = self.n;
                ScalarField::new(n, move |p| Ok(self.eval(p)? $op rhs.eval(p)?))
            }
        }
        impl $tr<&ScalarField> for &ScalarField {
            type Output = ScalarField;
            fn $m(self, rhs: &ScalarField) -> ScalarField {
                self.clone() $op rhs.clone()
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);
scalar_binop!(Div, div, /);

impl Neg for ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        self.scale(-1.0)
    }
}

/// Smooth function on the base manifold `M` (arguments `x¹…xⁿ`).
#[derive(Clone)]
pub struct BaseFunction {
    n: usize,
    f: Arc<ScalarFn>,
}

impl fmt::Debug for BaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BaseFunction(n = {})", self.n)
    }
}

impl BaseFunction {
    pub fn new<F>(n: usize, f: F) -> Self
    where
        F: Fn(&[Jet]) -> Result<Jet> + Send + Sync + 'static,
    {
        BaseFunction { n, f: Arc::new(f) }
    }

    pub fn constant(n: usize, c: f64) -> Self {
        Self::new(n, move |_| Ok(Jet::constant(c)))
    }

    pub fn coordinate(n: usize, i: usize) -> Self {
        Self::new(n, move |x| Ok(x[i]))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn eval(&self, x: &[Jet]) -> Result<Jet> {
        (self.f)(x)
    }

    /// `f^v(x, y) = f(x)`.
    pub fn vertical_lift(&self) -> ScalarField {
        let f = self.clone();
        ScalarField::new(self.n, move |p| f.eval(&p[..f.n]))
    }

    /// `f^c(x, y) = yⁱ ∂f/∂xⁱ`.
    pub fn complete_lift(&self) -> ScalarField {
        let f = self.clone();
        ScalarField::new(self.n, move |p| {
            let n = f.n;
            derive_scalar(&p[..n], &p[n..], &[], |x| f.eval(x))
        })
    }
}

/// Vector field on the slit tangent bundle with components over
/// `(∂/∂x¹…∂/∂xⁿ, ∂/∂y¹…∂/∂yⁿ)`.
#[derive(Clone)]
pub struct VectorField {
    n: usize,
    f: Arc<VectorFn>,
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField(n = {})", self.n)
    }
}

impl VectorField {
    pub fn new<F>(n: usize, f: F) -> Self
    where
        F: Fn(&[Jet]) -> Result<Vec<Jet>> + Send + Sync + 'static,
    {
        VectorField { n, f: Arc::new(f) }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(n, move |_| Ok(alloc::vec![Jet::ZERO; 2 * n]))
    }

    /// Constant-coefficient field, e.g. `∂/∂y¹`.
    pub fn constant(components: Vec<f64>) -> Self {
        let n = components.len() / 2;
        let c = to_jets(&components);
        Self::new(n, move |_| Ok(c.clone()))
    }

    pub fn coordinate_vector(n: usize, a: usize) -> Self {
        let mut c = alloc::vec![0.0; 2 * n];
        c[a] = 1.0;
        Self::constant(c)
    }

    pub fn from_components(components: Vec<ScalarField>) -> Self {
        let n = components.len() / 2;
        Self::new(n, move |p| components.iter().map(|c| c.eval(p)).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn eval(&self, p: &[Jet]) -> Result<Vec<Jet>> {
        (self.f)(p)
    }

    pub fn at(&self, p: &TangentPoint) -> Result<Vec<f64>> {
        check_len(self.n, p.dim())?;
        Ok(values(&self.eval(&p.to_jets())?))
    }

    pub fn component(&self, a: usize) -> ScalarField {
        let v = self.clone();
        ScalarField::new(self.n, move |p| Ok(v.eval(p)?[a]))
    }

    /// `DX(p)[dir]`, the coordinate derivative of the components.
    pub fn derivative_along(&self, p: &[Jet], dir: &[Jet]) -> Result<Vec<Jet>> {
        derive_vec(p, dir, &[], |q| self.eval(q))
    }

    /// The function `Xf = df(X)`.
    pub fn apply(&self, f: &ScalarField) -> ScalarField {
        let (x, f) = (self.clone(), f.clone());
        ScalarField::new(self.n, move |p| {
            let dir = x.eval(p)?;
            f.derivative_along(p, &dir)
        })
    }

    pub fn scale(&self, k: f64) -> VectorField {
        let v = self.clone();
        Self::new(self.n, move |p| Ok(v.eval(p)?.into_iter().map(|c| c * k).collect()))
    }

    /// `g · X` for a scalar field `g`.
    pub fn scaled_by(&self, g: &ScalarField) -> VectorField {
        let (v, g) = (self.clone(), g.clone());
        Self::new(self.n, move |p| {
            let s = g.eval(p)?;
            Ok(v.eval(p)?.into_iter().map(|c| c * s).collect())
        })
    }

    /// Components `0..n` (horizontal coordinate part).
    pub fn base_part(&self, p: &[Jet]) -> Result<Vec<Jet>> {
        let mut v = self.eval(p)?;
        v.truncate(self.n);
        Ok(v)
    }
}

impl Add for VectorField {
    type Output = VectorField;
    fn add(self, rhs: VectorField) -> VectorField {
        let n = self.n;
        VectorField::new(n, move |p| {
            Ok(self.eval(p)?.into_iter().zip(rhs.eval(p)?).map(|(a, b)| a + b).collect())
        })
    }
}

impl Sub for VectorField {
    type Output = VectorField;
    fn sub(self, rhs: VectorField) -> VectorField {
        let n = self.n;
        VectorField::new(n, move |p| {
            Ok(self.eval(p)?.into_iter().zip(rhs.eval(p)?).map(|(a, b)| a - b).collect())
        })
    }
}

impl Neg for VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        self.scale(-1.0)
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        self.clone() + rhs.clone()
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        self.clone() - rhs.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p0() -> TangentPoint {
        TangentPoint::new(vec![0.0, 0.0], vec![1.0, 2.0]).unwrap()
    }

    fn e_euc() -> ScalarField {
        ScalarField::new(2, |p| Ok((p[2] * p[2] + p[3] * p[3]) * 0.5))
    }

    fn e_rie() -> ScalarField {
        ScalarField::new(2, |p| Ok(((p[0] * 2.0).exp() * p[2] * p[2] + p[3] * p[3]) * 0.5))
    }

    #[test]
    fn evaluate_fixture_energies() {
        assert_eq!(e_euc().evaluate(&p0()).unwrap(), 2.5);
        assert_eq!(e_rie().evaluate(&p0()).unwrap(), 2.5);
        let fv = BaseFunction::coordinate(2, 0).vertical_lift();
        assert_eq!(fv.evaluate(&p0()).unwrap(), 0.0);
    }

    #[test]
    fn directional_derivatives() {
        let dy1 = vec![0.0, 0.0, 1.0, 0.0];
        let dy2 = vec![0.0, 0.0, 0.0, 1.0];
        let dx1 = vec![1.0, 0.0, 0.0, 0.0];
        let e = e_euc();
        assert_eq!(e.directional_derivative(&p0(), core::slice::from_ref(&dy1)).unwrap(), 1.0);
        assert_eq!(e.directional_derivative(&p0(), &[dy1.clone(), dy2]).unwrap(), 0.0);
        let r = e_rie().directional_derivative(&p0(), &[dx1, dy1]).unwrap();
        assert_eq!(r, 2.0);
    }

    #[test]
    fn order_out_of_range() {
        let d = vec![0.0, 0.0, 1.0, 0.0];
        let e = e_euc();
        assert!(matches!(
            e.directional_derivative(&p0(), &[d.clone(), d.clone(), d.clone(), d]),
            Err(GeomError::OrderOutOfRange { order: 4 })
        ));
        assert!(matches!(
            e.directional_derivative(&p0(), &[]),
            Err(GeomError::OrderOutOfRange { order: 0 })
        ));
    }

    #[test]
    fn lifts_of_base_functions() {
        let x1 = BaseFunction::coordinate(2, 0);
        assert_eq!(x1.vertical_lift().evaluate(&p0()).unwrap(), 0.0);
        assert_eq!(x1.complete_lift().evaluate(&p0()).unwrap(), 1.0);
        let c = BaseFunction::constant(2, 3.0);
        assert_eq!(c.complete_lift().evaluate(&p0()).unwrap(), 0.0);
        let prod = BaseFunction::new(2, |x| Ok(x[0] * x[1]));
        assert_eq!(prod.complete_lift().evaluate(&p0()).unwrap(), 0.0);
        let q = TangentPoint::new(vec![0.5, -0.25], vec![1.0, 2.0]).unwrap();
        // y¹x² + y²x¹ = -0.25 + 1.0
        assert!((prod.complete_lift().evaluate(&q).unwrap() - 0.75).abs() < 1e-15);
    }
}
