//! Shipped energy functions, addressable by string id.

use crate::calculus::{Jet, ScalarField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fixture {
    /// `E = ½|y|²`.
    Euclidean,
    /// `E = ½(e^{2x¹}(y¹)² + Σ_{i≥2}(yⁱ)²)`.
    RiemannianExp,
    /// Randers energy `E = ½(|y| + 0.3 y¹)²`.
    Randers03,
}

pub const RANDERS_B: f64 = 0.3;

impl Fixture {
    pub const ALL: [Fixture; 3] = [Fixture::Euclidean, Fixture::RiemannianExp, Fixture::Randers03];

    pub fn id(self) -> &'static str {
        match self {
            Fixture::Euclidean => "euclidean",
            Fixture::RiemannianExp => "riemannian-exp",
            Fixture::Randers03 => "randers-0.3",
        }
    }

    pub fn from_id(id: &str) -> Option<Fixture> {
        Self::ALL.into_iter().find(|f| f.id() == id)
    }

    pub fn energy(self, n: usize) -> ScalarField {
        match self {
            Fixture::Euclidean => ScalarField::new(n, move |p| {
                Ok(p[n..].iter().map(|&y| y * y).sum::<Jet>() * 0.5)
            }),
            Fixture::RiemannianExp => ScalarField::new(n, move |p| {
                let y = &p[n..];
                let first = (p[0] * 2.0).exp() * y[0] * y[0];
                Ok((first + y[1..].iter().map(|&v| v * v).sum::<Jet>()) * 0.5)
            }),
            Fixture::Randers03 => ScalarField::new(n, move |p| {
                let y = &p[n..];
                let norm = y.iter().map(|&v| v * v).sum::<Jet>().sqrt();
                let f = norm + y[0] * RANDERS_B;
                Ok(f * f * 0.5)
            }),
        }
    }
}
