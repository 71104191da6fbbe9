use jmatrix_core::rel::{self, RelContext, RelSystem};
use jmatrix_core::{kinematics, nonrel, BasisKind, BasisSpec, PotentialModel, DEFAULT_LIGHT_SPEED};

const C: f64 = DEFAULT_LIGHT_SPEED;

#[test]
fn kinematic_identities() {
    for &(m, c, e) in &[(1.0, C, 0.5), (1.0, 10.0, 2.0), (2.5, 500.0, 0.01)] {
        let kin = kinematics(m, c, e).unwrap();
        assert!((kin.e_total - (e + m * c * c)).abs() < 1e-12 * kin.e_total);
        // ktilde * eps = E_nr / c and ktilde / eps = (E_nr + 2mc^2)/c, exactly
        // the combinations entering the matrix assembly
        assert!((kin.ktilde * kin.eps - e / c).abs() < 1e-13 * (e / c));
        let cm = (e + 2.0 * m * c * c) / c;
        assert!((kin.ktilde / kin.eps - cm).abs() < 1e-13 * cm);
        // ktilde^2 = (E - mc^2)(E + mc^2)/c^2, in the cancellation-free form
        let k2 = e * (e + 2.0 * m * c * c) / (c * c);
        assert!((kin.ktilde * kin.ktilde - k2).abs() < 1e-12 * k2);
    }
}

#[test]
fn ktilde_approaches_k_at_large_c() {
    let e = 0.5f64;
    let k = (2.0 * e).sqrt();
    let mut prev = f64::INFINITY;
    for &c in &[1e2, 1e4, 1e6] {
        let kin = kinematics(1.0, c, e).unwrap();
        let gap = (kin.ktilde - k).abs();
        assert!(gap < prev);
        prev = gap;
    }
    assert!(prev < 1e-12);
}

#[test]
fn kinematics_rejects_bad_input() {
    assert!(kinematics(0.0, C, 0.5).is_err());
    assert!(kinematics(1.0, -1.0, 0.5).is_err());
    assert!(kinematics(1.0, C, 0.0).is_err());
}

#[test]
fn free_potential_gives_zero_relativistic_tangent() {
    for n in [4usize, 10, 40] {
        let spec = BasisSpec::new(BasisKind::Laguerre, -1, 2.0, n).unwrap();
        let kin = kinematics(1.0, C, 0.5).unwrap();
        let r = rel::rel_tan_delta(&spec, &PotentialModel::Free, &kin).unwrap();
        assert!(r.tan_delta_tilde.abs() < 1e-12, "N={n}: {:e}", r.tan_delta_tilde);
    }
}

/// Pinned to the independent Dirac integration (see the oracle module tests
/// for that side of the bargain).
#[test]
fn square_well_matches_dirac_oracle() {
    let sw = PotentialModel::SquareWell { depth: -1.0, radius: 1.0 };
    let spec = BasisSpec::new(BasisKind::Laguerre, -1, 2.0, 40).unwrap();
    let kin = kinematics(1.0, C, 0.5).unwrap();
    let r = rel::rel_tan_delta(&spec, &sw, &kin).unwrap();
    assert!((r.tan_delta_tilde - 1.127933132970).abs() < 1e-3, "{}", r.tan_delta_tilde);
    assert!(r.consistency_gap < 1e-7, "gap {:e}", r.consistency_gap);
}

#[test]
fn positive_kappa_channel_matches_dirac_oracle() {
    let sw = PotentialModel::SquareWell { depth: -1.0, radius: 1.0 };
    let spec = BasisSpec::new(BasisKind::Laguerre, 1, 1.76, 40).unwrap();
    let kin = kinematics(1.0, C, 0.5).unwrap();
    let r = rel::rel_tan_delta(&spec, &sw, &kin).unwrap();
    assert!((r.tan_delta_tilde - 0.050710407922).abs() < 1e-3, "{}", r.tan_delta_tilde);
}

#[test]
fn green_consistency_identity_holds() {
    // G^{-+} = (eps/ktilde) G^{++}
    let sw = PotentialModel::SquareWell { depth: -1.0, radius: 1.0 };
    let spec = BasisSpec::new(BasisKind::Laguerre, -1, 2.0, 30).unwrap();
    let sys = RelSystem::new(spec, sw, 1.0, C).unwrap();
    let kin = kinematics(1.0, C, 0.5).unwrap();
    let (gpp, gmp) = sys.green_elements(&kin).unwrap();
    let gap = (gmp - kin.eps / kin.ktilde * gpp).abs() / gpp.abs();
    assert!(gap < 1e-7, "gap {gap:e}");
}

#[test]
fn spectrum_splits_around_rest_mass() {
    // N eigenvalues above mc^2 - |V0|, N below -mc^2
    let n = 20usize;
    for (model, v0) in [
        (PotentialModel::Free, 0.0),
        (PotentialModel::SquareWell { depth: -1.0, radius: 1.0 }, 1.0),
    ] {
        let spec = BasisSpec::new(BasisKind::Laguerre, -1, 2.0, n).unwrap();
        let sys = RelSystem::new(spec, model, 1.0, C).unwrap();
        let (a, s) = sys.m_plus_v();
        let h = rel::rel_harris_spectrum(&a, &s, C).unwrap();
        let mc2 = C * C;
        let above = h.energies.iter().filter(|&&e| e > mc2 - v0).count();
        let below = h.energies.iter().filter(|&&e| e < -mc2).count();
        assert_eq!(above, n, "{model:?}");
        assert_eq!(below, n, "{model:?}");
    }
}

#[test]
fn limit_scan_decreases_toward_nonrel() {
    let sw = PotentialModel::SquareWell { depth: -1.0, radius: 1.0 };
    let spec = BasisSpec::new(BasisKind::Laguerre, -1, 2.0, 40).unwrap();
    let cs = [137.0, 1370.0, 13700.0];
    let rows = rel::nonrel_limit_scan(&spec, &sw, 0.5, &cs).unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].gap > rows[1].gap && rows[1].gap > rows[2].gap);
    assert!(rows[2].gap / rows[0].gap < 1e-3);
    let tn = nonrel::tan_delta(&spec, &sw, 0.5).unwrap().tan_delta;
    assert_eq!(rows[0].tan_nonrel, tn);
}

#[test]
fn limit_scan_rejects_unsorted_c() {
    let sw = PotentialModel::SquareWell { depth: -1.0, radius: 1.0 };
    let spec = BasisSpec::new(BasisKind::Laguerre, -1, 2.0, 10).unwrap();
    assert!(rel::nonrel_limit_scan(&spec, &sw, 0.5, &[100.0, 50.0]).is_err());
    assert!(rel::nonrel_limit_scan(&spec, &sw, 0.5, &[-1.0, 2.0]).is_err());
}

/// Beyond the basis span the reconstruction is the pure tail solution, and
/// both spinor components must satisfy the free coupled first-order system;
/// checked by central differences. (Inside the basis span the truncated
/// potential is a projected, nonlocal operator, so no pointwise ODE holds.)
#[test]
fn spinor_reconstruction_solves_dirac_system() {
    let sw = PotentialModel::SquareWell { depth: -1.0, radius: 1.0 };
    let spec = BasisSpec::new(BasisKind::Laguerre, -1, 2.0, 40).unwrap();
    let ctx = RelContext::new(spec, sw, 1.0, C).unwrap();
    let kin = kinematics(1.0, C, 0.5).unwrap();
    let h = 1e-4;
    let mc2 = C * C;
    for &r in &[110.0f64, 135.0] {
        let rs = [r - h, r, r + h];
        let (f, g) = ctx.reconstruct_spinor(kin.nonrel_energy, &rs).unwrap();
        let fp = (f[2] - f[0]) / (2.0 * h);
        let gp = (g[2] - g[0]) / (2.0 * h);
        let v = sw.evaluate(r);
        let kap = -1.0f64;
        let want_fp = -kap / r * f[1] + (kin.e_total + mc2 - v) / C * g[1];
        let want_gp = kap / r * g[1] + (mc2 - kin.e_total + v) / C * f[1];
        let scale = f[1].abs().max(1.0);
        assert!((fp - want_fp).abs() < 1e-6 * scale, "r={r}: F' {fp} vs {want_fp}");
        assert!((gp - want_gp).abs() < 1e-6 * scale, "r={r}: G' {gp} vs {want_gp}");
    }
}

#[test]
fn context_matches_one_shot() {
    let sw = PotentialModel::SquareWell { depth: -1.0, radius: 1.0 };
    let spec = BasisSpec::new(BasisKind::Laguerre, -1, 2.0, 20).unwrap();
    let ctx = RelContext::new(spec, sw, 1.0, C).unwrap();
    let kin = kinematics(1.0, C, 0.5).unwrap();
    let a = ctx.tan_delta(0.5).unwrap().tan_delta_tilde;
    let b = rel::rel_tan_delta(&spec, &sw, &kin).unwrap().tan_delta_tilde;
    assert_eq!(a, b);
}
