//! Seeded random scalar fields and 1-forms used as test inputs by checks.

use finslerlab_core::calculus::ScalarField;
use finslerlab_core::tangent::DifferentialForm;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `a₀ sin(a₁x¹ + a₂y²) + a₃ x²(y¹)² + a₄ exp(a₅ x¹y¹) + a₆ y¹y² + a₇ cos(a₈ x²)`.
fn mixture(a: [f64; 9]) -> ScalarField {
    ScalarField::new(2, move |p| {
        Ok((p[0] * a[1] + p[3] * a[2]).sin() * a[0]
            + p[1] * p[2] * p[2] * a[3]
            + (p[0] * p[2] * a[5]).exp() * a[4]
            + p[2] * p[3] * a[6]
            + (p[1] * a[8]).cos() * a[7])
    })
}

fn draw(rng: &mut ChaCha8Rng) -> ScalarField {
    let mut a = [0.0; 9];
    for v in &mut a {
        *v = rng.gen_range(-1.0..1.0);
    }
    mixture(a)
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// `count` smooth scalar fields on `TR²`.
pub fn scalar_fields(seed: u64, count: usize) -> Vec<ScalarField> {
    let mut r = rng(seed, 1);
    (0..count).map(|_| draw(&mut r)).collect()
}

/// `count` 1-forms `Σ bᵢ dxⁱ` (semibasic) or `Σ bₐ dzᵃ` over the full frame.
pub fn one_forms(seed: u64, count: usize, semibasic: bool) -> Vec<DifferentialForm> {
    let mut r = rng(seed, if semibasic { 2 } else { 3 });
    (0..count)
        .map(|_| {
            let comps = (0..4)
                .map(|a| {
                    if semibasic && a >= 2 {
                        ScalarField::constant(2, 0.0)
                    } else {
                        draw(&mut r)
                    }
                })
                .collect();
            DifferentialForm::one_form(comps)
        })
        .collect()
}
