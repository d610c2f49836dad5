//! Multilinear dual numbers.
//!
//! A [`Jet`] is an element of `R[ε₁, …, ε_D] / (ε₁², …, ε_D²)` with
//! `D = MAX_DEPTH`. Coefficients are indexed by the bitmask of the
//! infinitesimals they multiply, so a jet carrying `k` infinitesimals is a
//! flattened k-fold nested dual number. Every directional derivative taken by
//! the library claims one fresh infinitesimal above the highest one present in
//! its inputs, which keeps nested derivatives free of perturbation confusion.

use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{GeomError, Result};

/// Maximum number of nested infinitesimals a jet can carry.
pub const MAX_DEPTH: usize = 4;
const WIDTH: usize = 1 << MAX_DEPTH;

#[derive(Clone, Copy, PartialEq)]
pub struct Jet {
    c: [f64; WIDTH],
    depth: u8,
}

impl fmt::Debug for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = 1usize << self.depth;
        f.debug_struct("Jet")
            .field("depth", &self.depth)
            .field("coefficients", &&self.c[..n])
            .finish()
    }
}

impl Default for Jet {
    fn default() -> Self {
        Jet::ZERO
    }
}

impl From<f64> for Jet {
    fn from(v: f64) -> Self {
        Jet::constant(v)
    }
}

impl Jet {
    pub const ZERO: Jet = Jet {
        c: [0.0; WIDTH],
        depth: 0,
    };
    pub const ONE: Jet = {
        let mut c = [0.0; WIDTH];
        c[0] = 1.0;
        Jet { c, depth: 0 }
    };

    pub const fn constant(v: f64) -> Jet {
        let mut c = [0.0; WIDTH];
        c[0] = v;
        Jet { c, depth: 0 }
    }

    /// Real (standard) part.
    #[inline]
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Index of the highest infinitesimal that may be present.
    #[inline]
    pub fn depth(&self) -> usize {
        self.depth as usize
    }

    /// Coefficient of the monomial whose infinitesimals are given by `mask`
    /// (bit `k - 1` stands for `ε_k`).
    pub fn coefficient(&self, mask: usize) -> f64 {
        if mask < WIDTH {
            self.c[mask]
        } else {
            0.0
        }
    }

    #[inline]
    fn len(&self) -> usize {
        1 << self.depth
    }

    /// Returns `self + ε_index · tangent`.
    ///
    /// `index` must be fresh: strictly above the depth of both operands.
    pub fn perturbed(self, index: usize, tangent: Jet) -> Result<Jet> {
        if index == 0 || index > MAX_DEPTH {
            return Err(GeomError::DerivativeDepthExceeded { max: MAX_DEPTH });
        }
        debug_assert!(self.depth() < index && tangent.depth() < index);
        let bit = 1usize << (index - 1);
        let mut out = self;
        for s in 0..tangent.len() {
            out.c[s | bit] += tangent.c[s];
        }
        out.depth = index as u8;
        Ok(out)
    }

    /// Coefficient of `ε_index`, as a jet in the lower infinitesimals.
    pub fn tangent_part(&self, index: usize) -> Jet {
        debug_assert!(index >= 1 && self.depth() <= index);
        if self.depth() < index {
            return Jet::ZERO;
        }
        let bit = 1usize << (index - 1);
        let mut out = Jet::ZERO;
        for s in 0..bit {
            out.c[s] = self.c[s | bit];
        }
        out.depth = (index - 1) as u8;
        out.trim()
    }

    /// Lowers the recorded depth past vanishing top infinitesimals.
    fn trim(mut self) -> Jet {
        while self.depth > 0 {
            let half = 1usize << (self.depth - 1);
            if self.c[half..(half << 1)].iter().all(|&v| v == 0.0) {
                self.depth -= 1;
            } else {
                break;
            }
        }
        self
    }

    fn scale(mut self, k: f64) -> Jet {
        let n = self.len();
        for v in &mut self.c[..n] {
            *v *= k;
        }
        self
    }

    /// Evaluates `f(self)` from the derivatives `f(a), f'(a), …` at the
    /// real part `a` by truncated Taylor expansion in the nilpotent part.
    pub fn compose(self, derivs: &[f64; MAX_DEPTH + 1]) -> Jet {
        let mut nil = self;
        nil.c[0] = 0.0;
        let mut out = Jet::constant(derivs[0]);
        let mut power = Jet::ONE;
        let mut factorial = 1.0;
        for (k, d) in derivs.iter().enumerate().take(self.depth() + 1).skip(1) {
            power *= nil;
            factorial *= k as f64;
            out += power.scale(d / factorial);
        }
        out
    }

    pub fn recip(self) -> Jet {
        let a = self.c[0];
        let mut d = [0.0; MAX_DEPTH + 1];
        let mut term = 1.0 / a;
        for (k, slot) in d.iter_mut().enumerate() {
            *slot = term;
            term *= -((k + 1) as f64) / a;
        }
        self.compose(&d)
    }

    pub fn exp(self) -> Jet {
        let e = libm::exp(self.c[0]);
        self.compose(&[e; MAX_DEPTH + 1])
    }

    pub fn ln(self) -> Jet {
        let a = self.c[0];
        let mut d = [0.0; MAX_DEPTH + 1];
        d[0] = libm::log(a);
        let mut term = 1.0 / a;
        for (k, slot) in d.iter_mut().enumerate().skip(1) {
            *slot = term;
            term *= -(k as f64) / a;
        }
        self.compose(&d)
    }

    /// Real power `x^p` for positive real part.
    pub fn powf(self, p: f64) -> Jet {
        let a = self.c[0];
        let mut d = [0.0; MAX_DEPTH + 1];
        let mut coef = 1.0;
        for (k, slot) in d.iter_mut().enumerate() {
            *slot = coef * libm::pow(a, p - k as f64);
            coef *= p - k as f64;
        }
        self.compose(&d)
    }

    pub fn sqrt(self) -> Jet {
        self.powf(0.5)
    }

    pub fn powi(self, n: u32) -> Jet {
        let mut out = Jet::ONE;
        for _ in 0..n {
            out *= self;
        }
        out
    }

    pub fn sin(self) -> Jet {
        let (s, c) = (libm::sin(self.c[0]), libm::cos(self.c[0]));
        self.compose(&[s, c, -s, -c, s])
    }

    pub fn cos(self) -> Jet {
        let (s, c) = (libm::sin(self.c[0]), libm::cos(self.c[0]));
        self.compose(&[c, -s, -c, s, c])
    }
}

impl Add for Jet {
    type Output = Jet;
    #[inline]
    fn add(mut self, rhs: Jet) -> Jet {
        self += rhs;
        self
    }
}

impl AddAssign for Jet {
    #[inline]
    fn add_assign(&mut self, rhs: Jet) {
        let n = rhs.len();
        for i in 0..n {
            self.c[i] += rhs.c[i];
        }
        self.depth = self.depth.max(rhs.depth);
    }
}

impl Sub for Jet {
    type Output = Jet;
    #[inline]
    fn sub(mut self, rhs: Jet) -> Jet {
        self -= rhs;
        self
    }
}

impl SubAssign for Jet {
    #[inline]
    fn sub_assign(&mut self, rhs: Jet) {
        let n = rhs.len();
        for i in 0..n {
            self.c[i] -= rhs.c[i];
        }
        self.depth = self.depth.max(rhs.depth);
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        if rhs.depth == 0 {
            return self.scale(rhs.c[0]);
        }
        if self.depth == 0 {
            return rhs.scale(self.c[0]);
        }
        let depth = self.depth.max(rhs.depth);
        let n = 1usize << depth;
        let mut out = Jet {
            c: [0.0; WIDTH],
            depth,
        };
        // subset convolution: c[S] = Σ_{T ⊆ S} a[T] b[S \ T]
        for s in 0..n {
            let mut acc = self.c[0] * rhs.c[s];
            let mut t = s;
            while t != 0 {
                acc += self.c[t] * rhs.c[s ^ t];
                t = (t - 1) & s;
            }
            out.c[s] = acc;
        }
        out
    }
}

impl MulAssign for Jet {
    fn mul_assign(&mut self, rhs: Jet) {
        *self = *self * rhs;
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        if rhs.depth == 0 {
            return self.scale(1.0 / rhs.c[0]);
        }
        self * rhs.recip()
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.c[0] += rhs;
        self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: f64) -> Jet {
        self.c[0] -= rhs;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, rhs: f64) -> Jet {
        self.scale(1.0 / rhs)
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        rhs.scale(self)
    }
}

impl Add<Jet> for f64 {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        rhs + self
    }
}

impl Sub<Jet> for f64 {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        -rhs + self
    }
}

impl core::iter::Sum for Jet {
    fn sum<I: Iterator<Item = Jet>>(iter: I) -> Jet {
        iter.fold(Jet::ZERO, |a, b| a + b)
    }
}

/// Smallest index not used by any of the given jets.
pub fn fresh_index<'a>(jets: impl IntoIterator<Item = &'a Jet>) -> Result<usize> {
    let top = jets.into_iter().map(Jet::depth).max().unwrap_or(0);
    if top >= MAX_DEPTH {
        Err(GeomError::DerivativeDepthExceeded { max: MAX_DEPTH })
    } else {
        Ok(top + 1)
    }
}
