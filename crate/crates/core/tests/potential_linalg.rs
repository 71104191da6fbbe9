use jmatrix_core::linalg::{lu_solve, sym_generalized_eigen};
use jmatrix_core::quadrature::integrate;
use jmatrix_core::{basis, potential, BasisKind, BasisSpec, PotentialModel};
use nalgebra::{DMatrix, DVector};

#[test]
fn potential_values_and_metadata() {
    let sw = PotentialModel::SquareWell { depth: -1.0, radius: 1.5 };
    assert_eq!(sw.evaluate(0.2), -1.0);
    assert_eq!(sw.evaluate(2.0), 0.0);
    assert_eq!(sw.discontinuities(), vec![1.5]);

    let ew = PotentialModel::Exponential { depth: -2.0, range: 0.5 };
    assert!((ew.evaluate(1.0) - (-2.0 * (-0.5f64).exp())).abs() < 1e-15);
    assert!(ew.discontinuities().is_empty());

    let gw = PotentialModel::Gaussian { depth: -3.0, width: 2.0 };
    assert!((gw.evaluate(2.0) - (-3.0 * (-1.0f64).exp())).abs() < 1e-15);

    assert_eq!(PotentialModel::Free.evaluate(1.0), 0.0);
    assert!(PotentialModel::Free.is_free());
    assert!(!sw.is_free());
}

#[test]
fn potential_blocks_are_symmetric() {
    let spec = BasisSpec::new(BasisKind::Laguerre, -2, 1.5, 8).unwrap();
    let ew = PotentialModel::Exponential { depth: -2.0, range: 1.0 };
    let blocks = potential::potential_blocks(&ew, &spec).unwrap();
    assert!((&blocks.v_phi - blocks.v_phi.transpose()).amax() < 1e-12);
    assert!((&blocks.v_psi - blocks.v_psi.transpose()).amax() < 1e-12);
}

#[test]
fn potential_blocks_match_direct_integrals() {
    let spec = BasisSpec::new(BasisKind::Gaussian, -1, 1.3, 5).unwrap();
    let sw = PotentialModel::SquareWell { depth: -1.0, radius: 1.0 };
    let blocks = potential::potential_blocks(&sw, &spec).unwrap();
    for m in 0..5usize {
        for n in 0..5usize {
            let direct = integrate(
                &|r| basis::phi(&spec, m, r) * sw.evaluate(r) * basis::phi(&spec, n, r),
                0.0,
                spec.cutoff_radius(),
                &[1.0],
                1e-12,
            )
            .unwrap();
            assert!(
                (blocks.v_phi[(m, n)] - direct).abs() < 1e-9 * direct.abs().max(1.0),
                "m={m} n={n}"
            );
        }
    }
}

#[test]
fn free_potential_blocks_vanish() {
    let spec = BasisSpec::new(BasisKind::Laguerre, -1, 2.0, 6).unwrap();
    let blocks = potential::potential_blocks(&PotentialModel::Free, &spec).unwrap();
    assert_eq!(blocks.v_phi.amax(), 0.0);
    assert_eq!(blocks.v_psi.amax(), 0.0);
}

#[test]
fn generalized_eigen_reproduces_known_pencil() {
    // A = diag(1, 4), B = I: eigenvalues 1, 4
    let a = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 4.0]);
    let b = DMatrix::identity(2, 2);
    let r = sym_generalized_eigen(&a, &b).unwrap();
    assert!((r.eigenvalues[0] - 1.0).abs() < 1e-13);
    assert!((r.eigenvalues[1] - 4.0).abs() < 1e-13);
}

#[test]
fn generalized_eigen_satisfies_residual_and_metric_normalization() {
    // moderately conditioned 5x5 pencil
    let n = 5;
    let mut a = DMatrix::zeros(n, n);
    let mut b = DMatrix::identity(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = 1.0 / (1.0 + (i as f64 - j as f64).abs());
            if i != j {
                b[(i, j)] = 0.3 / (1.0 + i as f64 + j as f64);
            }
        }
    }
    let r = sym_generalized_eigen(&a, &b).unwrap();
    let g = &r.eigenvectors;
    // A g_i = lambda_i B g_i
    for i in 0..n {
        let gi = g.column(i);
        let resid = &a * gi - r.eigenvalues[i] * (&b * gi);
        assert!(resid.amax() < 1e-12, "i={i}");
    }
    // g^T B g = I
    let m = g.transpose() * &b * g;
    assert!((m - DMatrix::identity(n, n)).amax() < 1e-12);
    // ascending order
    for w in r.eigenvalues.windows(2) {
        assert!(w[0] <= w[1]);
    }
}

#[test]
fn generalized_eigen_rejects_indefinite_metric() {
    let a = DMatrix::identity(2, 2);
    let b = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
    assert!(sym_generalized_eigen(&a, &b).is_err());
}

#[test]
fn lu_solve_roundtrip() {
    let m = DMatrix::from_row_slice(3, 3, &[2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 4.0]);
    let x_true = DVector::from_row_slice(&[1.0, -2.0, 0.5]);
    let rhs = &m * &x_true;
    let x = lu_solve(&m, &rhs).unwrap();
    assert!((x - x_true).amax() < 1e-13);
}

#[test]
fn lu_solve_rejects_singular_matrix() {
    let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
    let rhs = DVector::from_row_slice(&[1.0, 1.0]);
    assert!(lu_solve(&m, &rhs).is_err());
}
