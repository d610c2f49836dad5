//! Dense solves over jets for the pointwise sharp operator.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::calculus::Jet;

/// Largest 1-norm condition number accepted before a solve is refused.
pub const MAX_CONDITION: f64 = 1e12;

/// 1-norm condition number of a real matrix, or `None` if singular.
pub fn condition_number(a: &[Vec<f64>]) -> Option<f64> {
    let m = a.len();
    let inv = invert(a)?;
    let norm1 = |x: &[Vec<f64>]| {
        (0..m)
            .map(|j| (0..m).map(|i| libm::fabs(x[i][j])).sum::<f64>())
            .fold(0.0, f64::max)
    };
    Some(norm1(a) * norm1(&inv))
}

fn invert(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let m = a.len();
    let mut w: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..m).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0, |s: f64, v| s.max(libm::fabs(*v)));
    if scale == 0.0 {
        return None;
    }
    for col in 0..m {
        let piv = (col..m).max_by(|&i, &j| {
            libm::fabs(w[i][col])
                .partial_cmp(&libm::fabs(w[j][col]))
                .unwrap_or(core::cmp::Ordering::Equal)
        })?;
        if libm::fabs(w[piv][col]) <= scale * 1e-300 {
            return None;
        }
        w.swap(col, piv);
        let d = w[col][col];
        for v in w[col].iter_mut() {
            *v /= d;
        }
        for i in 0..m {
            if i != col {
                let f = w[i][col];
                if f != 0.0 {
                    for j in 0..2 * m {
                        w[i][j] -= f * w[col][j];
                    }
                }
            }
        }
    }
    Some(w.into_iter().map(|r| r[m..].to_vec()).collect())
}

/// Solves `A x = b` over jets by Gaussian elimination with partial pivoting
/// on the real parts. Refuses singular or ill-conditioned systems, reporting
/// the condition number.
pub fn solve(a: Vec<Vec<Jet>>, b: Vec<Jet>) -> Result<Vec<Jet>, String> {
    let m = b.len();
    let real: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(Jet::value).collect()).collect();
    match condition_number(&real) {
        None => return Err(String::from("matrix is singular")),
        Some(c) if !(c <= MAX_CONDITION) => {
            return Err(format!("condition number {c:e} exceeds {MAX_CONDITION:e}"))
        }
        Some(_) => {}
    }
    let mut a = a;
    let mut b = b;
    for col in 0..m {
        let mut piv = col;
        for i in (col + 1)..m {
            if libm::fabs(a[i][col].value()) > libm::fabs(a[piv][col].value()) {
                piv = i;
            }
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for i in (col + 1)..m {
            let f = a[i][col] * inv;
            if f == Jet::ZERO {
                continue;
            }
            for j in col..m {
                let t = a[col][j];
                a[i][j] -= f * t;
            }
            let t = b[col];
            b[i] -= f * t;
        }
    }
    let mut x = alloc::vec![Jet::ZERO; m];
    for i in (0..m).rev() {
        let mut s = b[i];
        for j in (i + 1)..m {
            s -= a[i][j] * x[j];
        }
        x[i] = s / a[i][i];
    }
    Ok(x)
}
