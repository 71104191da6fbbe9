//! Free-particle machinery: the tridiagonal Jacobi matrix J(k), the
//! sine-like and cosine-like expansion coefficients s_n(k), c_n(k), and the
//! regular cosine-like solution C(k, r) itself.
//!
//! The three-term recursion rows (the homogeneous rows of J s = 0 and the
//! single inhomogeneous row of J c = beta phibar_0) are treated as ground
//! truth; printed closed forms act as seeds (n = 0, 1) and as a cross-check
//! wherever their own evaluation is free of cancellation.

use crate::basis::{self, BasisKind, BasisSpec};
use crate::error::{Error, Result};
use crate::quadrature;
use crate::specfun::{
    gauss_2f1_terminating_with_peak, gegenbauer, kummer_1f1_with_peak, laguerre, log_gamma,
    riccati_bessel_with_derivative,
};
use nalgebra::DMatrix;

/// J(m,n;k) = 1/2 <psi_m|psi_n> - (k^2/2) <phi_m|phi_n>, stored through its
/// energy-independent parts.
#[derive(Debug, Clone)]
pub struct JacobiMatrix {
    pub t_half_psi: DMatrix<f64>,
    pub s_phi: DMatrix<f64>,
    pub k: f64,
}

impl JacobiMatrix {
    pub fn j(&self, m: usize, n: usize) -> f64 {
        0.5 * self.t_half_psi[(m, n)] - 0.5 * self.k * self.k * self.s_phi[(m, n)]
    }

    pub fn dim(&self) -> usize {
        self.s_phi.nrows()
    }
}

pub fn jacobi_matrix(spec: &BasisSpec, k: f64) -> Result<JacobiMatrix> {
    if !(k > 0.0) {
        return Err(Error::Domain(format!("wave number must be positive, got {k}")));
    }
    let ov = basis::overlaps(spec);
    Ok(JacobiMatrix { t_half_psi: ov.s_psi, s_phi: ov.s_phi, k })
}

#[derive(Debug, Clone)]
pub struct WaveCoefficients {
    pub k: f64,
    /// s_n(k), n = 0..=n_max.
    pub s: Vec<f64>,
    /// c_n(k), n = 0..=n_max.
    pub c: Vec<f64>,
    /// beta = k/(2 s_0): source strength of the inhomogeneous cosine row.
    pub beta: f64,
    /// sin(theta) for Laguerre, eta = k/lambda for Gaussian.
    pub theta_or_eta: f64,
}

/// Closed-form s_n. Laguerre: Gegenbauer form in cos(theta). Gaussian:
/// Laguerre-polynomial form in eta^2.
fn s_closed(spec: &BasisSpec, k: f64, n: usize) -> f64 {
    let lam = spec.scale;
    let l = spec.l as f64;
    let nf = n as f64;
    let lg = |x: f64| log_gamma(x).unwrap();
    match spec.kind {
        BasisKind::Laguerre => {
            let denom = k * k + lam * lam / 4.0;
            let sin_t = k * lam / denom;
            let cos_t = (k * k - lam * lam / 4.0) / denom;
            let pref =
                (l * 2.0f64.ln() + lg(l + 1.0) + lg(nf + 1.0) - lg(nf + 2.0 * l + 2.0)).exp();
            pref * sin_t.powf(l + 1.0) * gegenbauer(n, l + 1.0, cos_t)
        }
        BasisKind::Gaussian => {
            let eta = k / lam;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let pref = (2.0 * std::f64::consts::PI).sqrt()
                * sign
                * (lg(nf + 1.0) - lg(nf + l + 1.5)).exp();
            pref * eta.powf(l + 1.0) * (-eta * eta / 2.0).exp()
                * laguerre(n, l + 0.5, eta * eta).value
        }
    }
}

/// Closed-form c_n together with the cancellation estimate of its
/// hypergeometric factor. The value is always well-defined in absolute
/// terms (error ~ eps * peak * prefactor); a large peak only disqualifies
/// it as a *relative* cross-check.
fn c_closed(spec: &BasisSpec, k: f64, n: usize) -> Result<(f64, f64)> {
    let lam = spec.scale;
    let l = spec.l as f64;
    let li = spec.l as i64;
    let nf = n as f64;
    let lg = |x: f64| log_gamma(x).unwrap();
    match spec.kind {
        BasisKind::Laguerre => {
            let denom = k * k + lam * lam / 4.0;
            let sin_t = k * lam / denom;
            let cos_t = (k * k - lam * lam / 4.0) / denom;
            let half_arg = (1.0 - cos_t) / 2.0; // sin^2(theta/2)
            let (f, peak) = gauss_2f1_terminating_with_peak(
                -(n as i64) - 2 * li - 1,
                nf + 1.0,
                0.5 - l,
                half_arg,
            )?;
            let pref = -(l * 2.0f64.ln() + lg(l + 0.5) + lg(nf + 1.0)
                - 0.5 * std::f64::consts::PI.ln()
                - lg(nf + 2.0 * l + 2.0))
                .exp();
            Ok((pref / sin_t.powf(l) * f, peak))
        }
        BasisKind::Gaussian => {
            let eta = k / lam;
            let (f, peak) = kummer_1f1_with_peak(-nf - l - 0.5, 0.5 - l, eta * eta)?;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let pref = (2.0 / std::f64::consts::PI).sqrt()
                * sign
                * (lg(l + 0.5) + lg(nf + 1.0) - lg(nf + l + 1.5)).exp();
            Ok((pref * eta.powf(-l) * (-eta * eta / 2.0).exp() * f, peak))
        }
    }
}

/// Sine/cosine expansion coefficients through index n_max, produced by
/// recursion propagation seeded from the closed forms, cross-checked against
/// the closed forms through n <= 40 wherever those are trustworthy.
pub fn sine_cosine_coefficients(spec: &BasisSpec, k: f64, n_max: usize) -> Result<WaveCoefficients> {
    // Rows through m = n_max - 1 reference column n_max, so the overlap
    // block must extend to index n_max.
    let mut wide = *spec;
    wide.n_max = wide.n_max.max(n_max);
    let jm = jacobi_matrix(&wide, k)?;
    sine_cosine_coefficients_with(&jm, spec, k, n_max)
}

fn sine_cosine_coefficients_with(
    jm: &JacobiMatrix,
    spec: &BasisSpec,
    k: f64,
    n_max: usize,
) -> Result<WaveCoefficients> {
    let s0 = s_closed(spec, k, 0);
    if s0.abs() < 1e-280 {
        return Err(Error::SineNode { k });
    }
    let beta = k / (2.0 * s0);
    let s1 = s_closed(spec, k, 1);
    let (c0, _) = c_closed(spec, k, 0)?;
    // c1 from the single inhomogeneous row m = 0 of J c = beta phibar_0
    // projected on phi_0 (biorthonormality makes the right side just beta).
    let c1 = (beta - jm.j(0, 0) * c0) / jm.j(0, 1);

    let mut s = vec![0.0; n_max + 1];
    let mut c = vec![0.0; n_max + 1];
    s[0] = s0;
    c[0] = c0;
    if n_max >= 1 {
        s[1] = s1;
        c[1] = c1;
    }
    let mut runaway = false;
    for m in 1..n_max {
        let jmm1 = jm.j(m, m - 1);
        let jmm = jm.j(m, m);
        let jmp1 = jm.j(m, m + 1);
        s[m + 1] = -(jmm1 * s[m - 1] + jmm * s[m]) / jmp1;
        c[m + 1] = -(jmm1 * c[m - 1] + jmm * c[m]) / jmp1;
        // Growth monitor: forward propagation has blown up; fall back to the
        // closed form from here on.
        let scale = s[m].abs().max(s[m - 1].abs()).max(1e-300);
        if s[m + 1].abs() > 1e6 * scale {
            runaway = true;
        }
        if runaway {
            s[m + 1] = s_closed(spec, k, m + 1);
            c[m + 1] = c_closed(spec, k, m + 1)?.0;
        }
    }

    // Convention cross-check against closed forms where those are clean.
    let s_scale = s.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    let c_scale = c.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    for n in 0..=n_max.min(40) {
        let sc = s_closed(spec, k, n);
        if (s[n] - sc).abs() > 1e-8 * s_scale {
            return Err(Error::Convention { n, recursion: s[n], closed: sc });
        }
        let (cc, peak) = c_closed(spec, k, n)?;
        // relative cross-check is only meaningful while the closed form
        // itself retains precision
        if peak < 1e4 && (c[n] - cc).abs() > 1e-8 * c_scale {
            return Err(Error::Convention { n, recursion: c[n], closed: cc });
        }
    }

    let theta_or_eta = match spec.kind {
        BasisKind::Laguerre => k * spec.scale / (k * k + spec.scale * spec.scale / 4.0),
        BasisKind::Gaussian => k / spec.scale,
    };
    Ok(WaveCoefficients { k, s, c, beta, theta_or_eta })
}

/// The regular cosine-like solution C(k, r) and its radial derivative,
/// through the Green-function representation
///   C(r) = (2 beta / k) [ u2(r) Int_0^r u1 phibar_0 + u1(r) Int_r^R u2 phibar_0 ]
/// with u1 = jhat_l(kr), u2 = -nhat_l(kr). C solves the same inhomogeneous
/// equation as the c_n rows and is regular at the origin while approaching
/// -nhat_l(kr) asymptotically.
pub fn cosine_solution(spec: &BasisSpec, k: f64, beta: f64, r: f64) -> Result<(f64, f64)> {
    let l = spec.l as usize;
    let upper = spec.cutoff_radius().max(2.0 * r);
    let u1 = |t: f64| riccati_bessel_with_derivative(l, k * t).map(|(j, _, _, _)| j);
    let u2 = |t: f64| riccati_bessel_with_derivative(l, k * t).map(|(_, n, _, _)| -n);
    let f1 = |t: f64| u1(t).unwrap_or(0.0) * basis::phibar(spec, 0, t);
    let f2 = |t: f64| u2(t).unwrap_or(0.0) * basis::phibar(spec, 0, t);
    let i1 = quadrature::integrate(&f1, 0.0, r, &[], 1e-11)?;
    let i2 = quadrature::integrate(&f2, r, upper, &[], 1e-11)?;
    let (j, n, jp, np) = riccati_bessel_with_derivative(l, k * r)?;
    let pref = 2.0 * beta / k;
    let val = pref * (-n * i1 + j * i2);
    let deriv = pref * (-np * k * i1 + jp * k * i2);
    Ok((val, deriv))
}
