//! Property tests for the identities that hold on the whole input space,
//! not just at sampled points.

use num_complex::Complex;
use proptest::prelude::*;
use spinlab_core::clifford::{build_gamma, Signature};
use spinlab_core::constants::{dirac_time_unit, torus_duality};
use spinlab_core::fields::{mass_sphere, matrix_decomposition, pauli_bilinear};
use spinlab_core::linalg::{max_abs_vec, CVec, C64};
use spinlab_core::quadrature::{gauss_chebyshev2, gauss_chebyshev3, gauss_legendre};
use spinlab_core::spinor::{vector_from_spinors, Spinor};

fn finite() -> impl Strategy<Value = f64> {
    -1e3..1e3f64
}

fn complex2() -> impl Strategy<Value = [C64; 2]> {
    (finite(), finite(), finite(), finite())
        .prop_map(|(a, b, c, d)| [Complex::new(a, b), Complex::new(c, d)])
}

proptest! {
    #[test]
    fn pauli_bilinear_is_null_with_positive_energy(phi in complex2()) {
        let norm2 = phi[0].norm_sqr() + phi[1].norm_sqr();
        prop_assume!(norm2 > 1e-12);
        let p = pauli_bilinear(&phi).unwrap();
        prop_assert!(p.norm_squared().abs() <= 1e-12 * p.euclidean_scale());
        prop_assert!(p.p0 > 0.0);
    }

    #[test]
    fn matrix_decomposition_is_always_null(phi in complex2(), psi in complex2()) {
        let z = matrix_decomposition(&phi, &psi);
        let scale = z.magnitude_squared();
        prop_assert!(z.quadratic_form().norm() <= 1e-12 * scale.max(1e-300));
    }

    #[test]
    fn bilinear_vector_is_linear_in_the_first_slot(
        a in finite(), b in finite(), c in finite(), d in finite(),
    ) {
        let rep = build_gamma(2, Signature::new(4, 0)).unwrap();
        let alpha = Complex::new(a, b);
        let beta = Complex::new(c, d);
        let e = |k: usize| {
            let mut v = CVec::zeros(4);
            v[k] = Complex::new(1.0, 0.0);
            Spinor::new(v)
        };
        let psi = Spinor::new(CVec::from_vec(vec![
            Complex::new(0.3, -0.1),
            Complex::new(1.0, 0.7),
            Complex::new(-0.4, 0.2),
            Complex::new(0.9, 0.0),
        ]));
        let combo = Spinor::new(&e(0).components * alpha + &e(2).components * beta);
        let z_combo = vector_from_spinors(&rep, &combo, &psi).unwrap();
        let z0 = vector_from_spinors(&rep, &e(0), &psi).unwrap();
        let z2 = vector_from_spinors(&rep, &e(2), &psi).unwrap();
        let expect = &z0.components * alpha + &z2.components * beta;
        let scale = 1.0 + alpha.norm() + beta.norm();
        prop_assert!(max_abs_vec(&(z_combo.components - expect)) <= 1e-12 * scale);
    }

    #[test]
    fn mass_sphere_radius_is_boost_invariant(
        p1 in finite(), p2 in finite(), p3 in finite(),
        e5 in finite(), e6 in finite(),
        rapidity in -2.0..2.0f64,
    ) {
        let rest = p1 * p1 + p2 * p2 + p3 * p3 + e5 * e5 + e6 * e6;
        prop_assume!(rest > 1e-9);
        let v = [rest.sqrt(), p1, p2, p3, e5, e6];
        let d0 = mass_sphere(&v, 1).unwrap();
        let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
        let boosted = [
            ch * v[0] + sh * v[1],
            sh * v[0] + ch * v[1],
            v[2], v[3], v[4], v[5],
        ];
        let d1 = mass_sphere(&boosted, 1).unwrap();
        prop_assert!((d0.m_n - d1.m_n).abs() <= 1e-9 * d0.m_n.max(1.0));
    }

    #[test]
    fn torus_lattice_spacing_invariant(n in 1u64..1_000_000, t in 1e-6..1e6f64) {
        let d = torus_duality(n, t, 1.0).unwrap();
        let product = d.lattice.delta_t * n as f64;
        prop_assert!((product - std::f64::consts::PI * t).abs() <= 1e-9 * product.abs());
        prop_assert!((d.convention_ratio - 0.5).abs() < 1e-12);
    }

    #[test]
    fn dirac_unit_is_inverse_homogeneous(e in 1e-20..1e20f64, s in 1e-6..1e6f64) {
        let base = dirac_time_unit(e, 1.0).unwrap();
        let scaled = dirac_time_unit(s * e, 1.0).unwrap();
        prop_assert!((scaled * s - base).abs() <= 1e-12 * base);
    }

    #[test]
    fn quadrature_total_weights_match_closed_forms(order in 2usize..50) {
        let pi = std::f64::consts::PI;
        let leg: f64 = gauss_legendre(order).weights.iter().sum();
        prop_assert!((leg - 2.0).abs() < 1e-12);
        let c2: f64 = gauss_chebyshev2(order).weights.iter().sum();
        prop_assert!((c2 - pi / 2.0).abs() < 1e-12);
        let c3: f64 = gauss_chebyshev3(order).weights.iter().sum();
        prop_assert!((c3 - pi).abs() < 1e-12);
    }
}
