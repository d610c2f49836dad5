use finslerlab_core::calculus::{sample_slit_points, SampleConfig, ScalarField, TangentPoint, VectorField};
use finslerlab_core::connection::projector_residual;
use finslerlab_core::tangent::{lie_bracket, DifferentialForm};
use finslerlab_core::{validate_finsler, Fixture};
use proptest::prelude::*;

/// `a₀ sin(a₁x¹ + a₂y²) + a₃x²(y¹)² + a₄ exp(a₅x¹y¹) + a₆ y¹y²`.
fn mixture(a: [f64; 7]) -> ScalarField {
    ScalarField::new(2, move |p| {
        Ok((p[0] * a[1] + p[3] * a[2]).sin() * a[0]
            + p[1] * p[2] * p[2] * a[3]
            + (p[0] * p[2] * a[5]).exp() * a[4]
            + p[2] * p[3] * a[6])
    })
}

fn coeffs() -> impl Strategy<Value = [f64; 7]> {
    prop::array::uniform7(-1.5f64..1.5)
}

fn point() -> impl Strategy<Value = TangentPoint> {
    (prop::array::uniform2(-1.0f64..1.0), prop::array::uniform2(-2.0f64..2.0))
        .prop_filter("off the zero section", |(_, y)| y[0].hypot(y[1]) > 0.1)
        .prop_map(|(x, y)| TangentPoint::new(x.to_vec(), y.to_vec()).unwrap())
}

fn unit(a: usize) -> Vec<f64> {
    let mut v = vec![0.0; 4];
    v[a] = 1.0;
    v
}

fn field(a: [f64; 7], b: [f64; 7]) -> VectorField {
    VectorField::from_components(vec![mixture(a), mixture(b), mixture([b[1], a[0], b[2], a[3], b[4], a[5], b[6]]), mixture(a).scale(0.5)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mixed_partials_commute(a in coeffs(), p in point(), i in 0usize..4, j in 0usize..4, k in 0usize..4) {
        let f = mixture(a);
        let ij = f.directional_derivative(&p, &[unit(i), unit(j)]).unwrap();
        let ji = f.directional_derivative(&p, &[unit(j), unit(i)]).unwrap();
        prop_assert!((ij - ji).abs() < 1e-12);
        let ijk = f.directional_derivative(&p, &[unit(i), unit(j), unit(k)]).unwrap();
        let kji = f.directional_derivative(&p, &[unit(k), unit(j), unit(i)]).unwrap();
        prop_assert!((ijk - kji).abs() < 1e-12 * (1.0 + ijk.abs()));
    }

    #[test]
    fn polynomial_derivatives_are_exact(c in prop::array::uniform3(-2.0f64..2.0), p in point()) {
        // f = c₀ x¹(y¹)³ + c₁ x²y² + c₂ (y²)²
        let f = ScalarField::new(2, move |q| {
            Ok(q[0] * q[2] * q[2] * q[2] * c[0] + q[1] * q[3] * c[1] + q[3] * q[3] * c[2])
        });
        let (x, y) = (p.base(), p.fiber());
        let fy1 = f.directional_derivative(&p, &[unit(2)]).unwrap();
        prop_assert!((fy1 - 3.0 * c[0] * x[0] * y[0] * y[0]).abs() < 1e-12);
        let fx1y1y1 = f.directional_derivative(&p, &[unit(0), unit(2), unit(2)]).unwrap();
        prop_assert!((fx1y1y1 - 6.0 * c[0] * y[0]).abs() < 1e-12);
        let fy2y2 = f.directional_derivative(&p, &[unit(3), unit(3)]).unwrap();
        prop_assert!((fy2y2 - 2.0 * c[2]).abs() < 1e-12);
    }

    #[test]
    fn jacobi_identity(a in coeffs(), b in coeffs(), c in coeffs(), p in point()) {
        let (x, y, z) = (field(a, b), field(b, c), field(c, a));
        let t1 = lie_bracket(&x, &lie_bracket(&y, &z)).at(&p).unwrap();
        let t2 = lie_bracket(&y, &lie_bracket(&z, &x)).at(&p).unwrap();
        let t3 = lie_bracket(&z, &lie_bracket(&x, &y)).at(&p).unwrap();
        for q in 0..4 {
            prop_assert!((t1[q] + t2[q] + t3[q]).abs() < 1e-8);
        }
    }

    #[test]
    fn forms_change_sign_under_transposition(a in coeffs(), b in coeffs(), p in point(),
                                            u in prop::array::uniform4(-1.0f64..1.0),
                                            v in prop::array::uniform4(-1.0f64..1.0),
                                            w in prop::array::uniform4(-1.0f64..1.0)) {
        let alpha = DifferentialForm::differential(&mixture(b)).scaled_by(&mixture(a));
        let two = alpha.exterior_derivative().unwrap();
        let three = DifferentialForm::differential(&mixture(a)).scaled_by(&mixture(b))
            .exterior_derivative().unwrap();
        let (u, v, w) = (u.to_vec(), v.to_vec(), w.to_vec());
        let s = two.at(&p, &[u.clone(), v.clone()]).unwrap() + two.at(&p, &[v.clone(), u.clone()]).unwrap();
        prop_assert!(s.abs() < 1e-12);
        // d of an exact form vanishes, so get a genuine 3-form through i_K
        let j = finslerlab_core::tangent::vertical_endomorphism(2);
        let k = finslerlab_core::tangent::fn_bracket(&j, &field(a, b).into()).unwrap();
        let jj = finslerlab_core::tangent::fn_bracket(&j, &k).unwrap();
        let cubic = three.insert_vector_form(&jj).unwrap();
        let uvw = cubic.at(&p, &[u.clone(), v.clone(), w.clone()]).unwrap();
        let vuw = cubic.at(&p, &[v.clone(), u.clone(), w.clone()]).unwrap();
        let uwv = cubic.at(&p, &[u, w, v]).unwrap();
        prop_assert!((uvw + vuw).abs() < 1e-12 * (1.0 + uvw.abs()));
        prop_assert!((uvw + uwv).abs() < 1e-12 * (1.0 + uvw.abs()));
    }

    #[test]
    fn sampling_is_reproducible(seed in any::<u64>(), count in 1usize..40) {
        let a = sample_slit_points(2, count, seed, SampleConfig::default()).unwrap();
        let b = sample_slit_points(2, count, seed, SampleConfig::default()).unwrap();
        prop_assert_eq!(a.len(), count);
        for (p, q) in a.iter().zip(b.iter()) {
            prop_assert!(p.fiber_norm() >= 0.1);
            let (pc, qc) = (p.coords(), q.coords());
            for (s, t) in pc.iter().zip(&qc) {
                prop_assert_eq!(s.to_bits(), t.to_bits());
            }
        }
    }
}

#[test]
fn berwald_connection_is_a_projector_on_a_wide_grid() {
    let g = sample_slit_points(2, 32, 42, SampleConfig::default()).unwrap();
    for fx in Fixture::ALL {
        let f = validate_finsler(&fx.energy(2), &g).unwrap();
        assert!(projector_residual(&f.berwald_connection(), &g).unwrap() < 1e-12);
    }
}

#[test]
fn fixture_energies_work_in_higher_dimension() {
    let g = sample_slit_points(3, 8, 3, SampleConfig::default()).unwrap();
    for fx in Fixture::ALL {
        let f = validate_finsler(&fx.energy(3), &g).unwrap();
        let s = f.canonical_spray();
        for p in g.iter() {
            let v = s.at(p).unwrap();
            assert_eq!(v.len(), 6);
            for i in 0..3 {
                assert!((v[i] - p.fiber()[i]).abs() < 1e-12);
            }
        }
    }
}
