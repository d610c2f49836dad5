//! Sup-norm residuals over a sample grid and the coordinate frame.
//!
//! A multilinear object vanishes at a point iff it vanishes on all frame
//! tuples; skew objects only need strictly increasing index tuples.

use alloc::vec::Vec;

use super::bracket::fn_bracket;
use super::canonical::{j_of, liouville_field, vertical_endomorphism};
use super::form::{DifferentialForm, VectorForm};
use crate::calculus::field::frame_vector;
use crate::calculus::{Jet, SampleGrid, ScalarField, VectorField};
use crate::error::Result;

/// Strictly increasing `k`-tuples of frame indices `0..m`.
pub fn frame_tuples(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(m, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, k, 0, &mut Vec::new(), &mut out);
    out
}

fn frame(m: usize) -> Vec<Vec<Jet>> {
    (0..m).map(|a| frame_vector(m, a)).collect()
}

fn sup_abs<'a>(it: impl IntoIterator<Item = &'a Jet>) -> f64 {
    it.into_iter().fold(0.0, |m: f64, v| {
        let a = libm::fabs(v.value());
        if a.is_nan() {
            f64::INFINITY
        } else {
            m.max(a)
        }
    })
}

pub fn sup_scalar(f: &ScalarField, grid: &SampleGrid) -> Result<f64> {
    let mut m: f64 = 0.0;
    for p in grid.iter() {
        let v = f.eval(&p.to_jets())?;
        m = m.max(sup_abs([&v]));
    }
    Ok(m)
}

pub fn sup_field(x: &VectorField, grid: &SampleGrid) -> Result<f64> {
    let mut m: f64 = 0.0;
    for p in grid.iter() {
        m = m.max(sup_abs(&x.eval(&p.to_jets())?));
    }
    Ok(m)
}

pub fn sup_form(alpha: &DifferentialForm, grid: &SampleGrid) -> Result<f64> {
    let mm = 2 * alpha.dim();
    let basis = frame(mm);
    let tuples = frame_tuples(mm, alpha.degree());
    let mut m: f64 = 0.0;
    for p in grid.iter() {
        let pj = p.to_jets();
        for t in &tuples {
            let args: Vec<&[Jet]> = t.iter().map(|&i| basis[i].as_slice()).collect();
            m = m.max(sup_abs([&alpha.eval(&pj, &args)?]));
        }
    }
    Ok(m)
}

pub fn sup_vector_form(k: &VectorForm, grid: &SampleGrid) -> Result<f64> {
    let mm = 2 * k.dim();
    let basis = frame(mm);
    let tuples = frame_tuples(mm, k.degree());
    let mut m: f64 = 0.0;
    for p in grid.iter() {
        let pj = p.to_jets();
        for t in &tuples {
            let args: Vec<&[Jet]> = t.iter().map(|&i| basis[i].as_slice()).collect();
            m = m.max(sup_abs(&k.eval(&pj, &args)?));
        }
    }
    Ok(m)
}

/// `sup |[C, K] − (r − 1) K|` for a vector field (degree 0) or vector
/// 1-form `K`. Zero iff `K` is homogeneous of degree `r`.
pub fn homogeneity_residual(k: &VectorForm, r: f64, grid: &SampleGrid) -> Result<f64> {
    let c: VectorForm = liouville_field(k.dim()).into();
    let bracket = fn_bracket(&c, k)?;
    sup_vector_form(&bracket.try_sub(&k.scale(r - 1.0))?, grid)
}

/// `sup |CE − r E|` for a scalar field.
pub fn scalar_homogeneity_residual(f: &ScalarField, r: f64, grid: &SampleGrid) -> Result<f64> {
    let cf = liouville_field(f.dim()).apply(f);
    sup_scalar(&(cf - f.scale(r)), grid)
}

/// Semibasic defect of a vector form: `sup |J∘K|` and `sup |K(Jξ, …)|`.
pub fn semibasic_residual_vector_form(k: &VectorForm, grid: &SampleGrid) -> Result<f64> {
    let n = k.dim();
    if k.degree() == 0 {
        // a vector field counts as semibasic iff it is vertical
        return sup_field(&j_of(&k.as_vector_field()?), grid);
    }
    let j = vertical_endomorphism(n);
    let jk = j.compose(k)?;
    let mut r = sup_vector_form(&jk, grid)?;
    r = r.max(sup_vertical_insertions(grid, n, k.degree(), |p, args| {
        Ok(sup_abs(&k.eval(p, args)?))
    })?);
    Ok(r)
}

/// Semibasic defect of a form: `sup |α(Jξ, …)|`.
pub fn semibasic_residual_form(alpha: &DifferentialForm, grid: &SampleGrid) -> Result<f64> {
    if alpha.degree() == 0 {
        return Ok(0.0);
    }
    sup_vertical_insertions(grid, alpha.dim(), alpha.degree(), |p, args| {
        Ok(sup_abs([&alpha.eval(p, args)?]))
    })
}

/// Evaluates with the first argument ranging over the vertical frame and the
/// rest over the whole frame.
fn sup_vertical_insertions<F>(grid: &SampleGrid, n: usize, degree: usize, f: F) -> Result<f64>
where
    F: Fn(&[Jet], &[&[Jet]]) -> Result<f64>,
{
    let mm = 2 * n;
    let basis = frame(mm);
    let rest = frame_tuples(mm, degree - 1);
    let mut m: f64 = 0.0;
    for p in grid.iter() {
        let pj = p.to_jets();
        for v in n..mm {
            for t in &rest {
                let mut args: Vec<&[Jet]> = Vec::with_capacity(degree);
                args.push(&basis[v]);
                args.extend(t.iter().map(|&i| basis[i].as_slice()));
                m = m.max(f(&pj, &args)?);
            }
        }
    }
    Ok(m)
}

/// `sup |JX|`: zero iff `X` is vertical.
pub fn vertical_residual(x: &VectorField, grid: &SampleGrid) -> Result<f64> {
    sup_field(&j_of(x), grid)
}

/// `sup |JS − C|`: zero iff `S` is a semispray.
pub fn semispray_residual(s: &VectorField, grid: &SampleGrid) -> Result<f64> {
    let n = s.dim();
    sup_field(&(j_of(s) - liouville_field(n)), grid)
}
