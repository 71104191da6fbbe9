use jmatrix_core::linalg::{lu_solve, sym_generalized_eigen};
use jmatrix_core::quadrature::integrate;
use jmatrix_core::specfun::{laguerre, riccati_bessel_with_derivative};
use jmatrix_core::{basis, freewave, kinematics, BasisKind, BasisSpec};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn riccati_cross_product_is_one(l in 0usize..12, x in 0.05f64..50.0) {
        let (j, n, jp, np) = riccati_bessel_with_derivative(l, x).unwrap();
        let w = j * np - jp * n;
        prop_assert!((w - 1.0).abs() < 1e-9, "l={} x={} w={}", l, x, w);
    }

    #[test]
    fn laguerre_recurrence_residual(n in 1usize..40, alpha in 0.1f64..6.0, x in 0.0f64..30.0) {
        let lm = laguerre(n - 1, alpha, x).value;
        let l0 = laguerre(n, alpha, x).value;
        let lp = laguerre(n + 1, alpha, x).value;
        let resid = (n as f64 + 1.0) * lp - (2.0 * n as f64 + alpha + 1.0 - x) * l0
            + (n as f64 + alpha) * lm;
        let scale = lp.abs().max(l0.abs()).max(lm.abs()).max(1.0);
        prop_assert!(resid.abs() < 1e-11 * scale);
    }

    #[test]
    fn quadrature_is_additive(c in 0.2f64..4.8, a3 in -2.0f64..2.0, a1 in -3.0f64..3.0) {
        let f = |r: f64| a3 * r * r * r + a1 * r + 0.7;
        let whole = integrate(&f, 0.0, 5.0, &[], 1e-12).unwrap();
        let left = integrate(&f, 0.0, c, &[], 1e-12).unwrap();
        let right = integrate(&f, c, 5.0, &[], 1e-12).unwrap();
        prop_assert!((whole - (left + right)).abs() < 1e-9 * whole.abs().max(1.0));
    }

    #[test]
    fn kinematic_invariants(c in 1.0f64..1e6, e in 1e-4f64..10.0, m in 0.1f64..5.0) {
        let kin = kinematics(m, c, e).unwrap();
        prop_assert!(kin.ktilde > 0.0 && kin.eps > 0.0 && kin.eps < 1.0);
        let lhs = kin.ktilde * kin.eps * c;
        prop_assert!((lhs - e).abs() < 1e-12 * e);
        let rhs = kin.ktilde / kin.eps * c;
        prop_assert!((rhs - (e + 2.0 * m * c * c)).abs() < 1e-11 * rhs);
    }

    #[test]
    fn lu_solve_residual(seed in 0u64..1000) {
        // diagonally dominant pseudo-random system
        let n = 5usize;
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = next() + if i == j { 4.0 } else { 0.0 };
            }
        }
        let b = DVector::from_fn(n, |_, _| next());
        let x = lu_solve(&m, &b).unwrap();
        prop_assert!((m * x - b).amax() < 1e-12);
    }

    #[test]
    fn eigen_invariant_under_metric_congruence(s in 0.2f64..3.0) {
        // scaling the basis rescales (A, B) congruently: eigenvalues unchanged
        let a0 = DMatrix::from_row_slice(3, 3, &[2.0, 0.3, 0.0, 0.3, 1.0, 0.1, 0.0, 0.1, 3.0]);
        let b0 = DMatrix::from_row_slice(3, 3, &[1.0, 0.2, 0.0, 0.2, 1.0, 0.2, 0.0, 0.2, 1.0]);
        let d = DMatrix::from_diagonal(&DVector::from_row_slice(&[s, 1.0 / s, s * s]));
        let a1 = &d * &a0 * &d;
        let b1 = &d * &b0 * &d;
        let e0 = sym_generalized_eigen(&a0, &b0).unwrap().eigenvalues;
        let e1 = sym_generalized_eigen(&a1, &b1).unwrap().eigenvalues;
        for (x, y) in e0.iter().zip(&e1) {
            prop_assert!((x - y).abs() < 1e-10 * x.abs().max(1.0));
        }
    }
}

proptest! {
    // quadrature-backed properties get fewer cases to keep the suite quick
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn phi_dual_normalization(kind in prop_oneof![Just(BasisKind::Laguerre), Just(BasisKind::Gaussian)],
                              kappa in prop_oneof![Just(-2i32), Just(-1), Just(1), Just(2)],
                              lam in 0.8f64..3.0,
                              n in 0usize..5) {
        let spec = BasisSpec::new(kind, kappa, lam, 6).unwrap();
        let v = integrate(
            &|r| basis::phibar(&spec, n, r) * basis::phi(&spec, n, r),
            0.0,
            spec.cutoff_radius(),
            &[],
            1e-11,
        ).unwrap();
        prop_assert!((v - 1.0).abs() < 1e-8, "{:?} kappa={} lam={} n={}: {}", kind, kappa, lam, n, v);
    }

    #[test]
    fn recursion_residuals_hold_for_random_k(kind in prop_oneof![Just(BasisKind::Laguerre), Just(BasisKind::Gaussian)],
                                             k in 0.2f64..5.0) {
        let spec = BasisSpec::for_orbital(kind, 1, 2.0, 25).unwrap();
        let w = freewave::sine_cosine_coefficients(&spec, k, 25).unwrap();
        let j = freewave::jacobi_matrix(&spec, k).unwrap();
        for n in 1..25usize {
            let rs = j.j(n, n - 1) * w.s[n - 1] + j.j(n, n) * w.s[n] + j.j(n, n + 1) * w.s[n + 1];
            let ss = (j.j(n, n - 1) * w.s[n - 1]).abs()
                + (j.j(n, n) * w.s[n]).abs()
                + (j.j(n, n + 1) * w.s[n + 1]).abs();
            prop_assert!(rs.abs() <= 1e-8 * ss.max(1e-280), "{:?} k={} n={}", kind, k, n);
        }
    }
}
