//! Laguerre- and Gaussian-type radial basis sets, their kinetic-balance
//! partners psi_n = (kappa/r + d/dr) phi_n, biorthonormal elements and
//! overlap matrices.
//!
//! Conventions (validated against quadrature in the test suite):
//!   Laguerre: phi_n = (lam r)^{l+1} e^{-lam r/2} L_n^{(2l+1)}(lam r)
//!   Gaussian: phi_n = (lam r)^{l+1} e^{-lam^2 r^2/2} L_n^{(l+1/2)}(lam^2 r^2)
//! All inner products are plain integrals in dr (no extra measure factor).

use crate::error::{Error, Result};
use crate::quadrature;
use crate::specfun::{laguerre, log_gamma};
use nalgebra::DMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    Laguerre,
    Gaussian,
}

/// l(kappa): the non-negative solution of l(l+1) = kappa(kappa+1).
pub fn l_of_kappa(kappa: i32) -> Result<u32> {
    match kappa {
        0 => Err(Error::Domain("kappa = 0 is not a Dirac quantum number".into())),
        k if k > 0 => Ok(k as u32),
        k => Ok((-k - 1) as u32),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisSpec {
    pub kind: BasisKind,
    pub kappa: i32,
    /// Orbital angular momentum, derived from kappa.
    pub l: u32,
    /// Scale parameter lambda (inverse length).
    pub scale: f64,
    /// Truncation size N: the interior space is n = 0..N-1.
    pub n_max: usize,
}

impl BasisSpec {
    pub fn new(kind: BasisKind, kappa: i32, scale: f64, n_max: usize) -> Result<Self> {
        let l = l_of_kappa(kappa)?;
        if !(scale > 0.0) {
            return Err(Error::Domain(format!("scale must be positive, got {scale}")));
        }
        if n_max < 2 {
            return Err(Error::Domain(format!("n_max must be at least 2, got {n_max}")));
        }
        Ok(Self { kind, kappa, l, scale, n_max })
    }

    /// Non-relativistic constructor: channel given by l alone. The
    /// corresponding kappa = -(l+1) reproduces the same l.
    pub fn for_orbital(kind: BasisKind, l: u32, scale: f64, n_max: usize) -> Result<Self> {
        Self::new(kind, -(l as i32) - 1, scale, n_max)
    }

    /// Radius beyond which every basis function is below 1e-16 of its peak.
    pub fn cutoff_radius(&self) -> f64 {
        let n = self.n_max as f64;
        let l = self.l as f64;
        match self.kind {
            BasisKind::Laguerre => 2.0 * (50.0 + 3.0 * (n + l + 2.0)) / self.scale,
            BasisKind::Gaussian => (12.0 + 2.0 * (n + l + 2.0).sqrt()) / self.scale,
        }
    }
}

/// Large-component basis function phi_n(r).
pub fn phi(spec: &BasisSpec, n: usize, r: f64) -> f64 {
    let lam = spec.scale;
    let l = spec.l as f64;
    match spec.kind {
        BasisKind::Laguerre => {
            let x = lam * r;
            (x).powf(l + 1.0) * (-x / 2.0).exp() * laguerre(n, 2.0 * l + 1.0, x).value
        }
        BasisKind::Gaussian => {
            let x = lam * lam * r * r;
            (lam * r).powf(l + 1.0) * (-x / 2.0).exp() * laguerre(n, l + 0.5, x).value
        }
    }
}

/// Kinetic-balance partner psi_n(r) = (kappa/r + d/dr) phi_n(r),
/// evaluated analytically through the Laguerre derivative identity.
pub fn psi(spec: &BasisSpec, n: usize, r: f64) -> f64 {
    let lam = spec.scale;
    let l = spec.l as f64;
    let kap = spec.kappa as f64;
    match spec.kind {
        BasisKind::Laguerre => {
            let x = lam * r;
            let le = laguerre(n, 2.0 * l + 1.0, x);
            let head = x.powf(l + 1.0) * (-x / 2.0).exp();
            let dphi = ((l + 1.0) / r - lam / 2.0) * head * le.value + head * lam * le.derivative;
            kap / r * head * le.value + dphi
        }
        BasisKind::Gaussian => {
            let x = lam * lam * r * r;
            let le = laguerre(n, l + 0.5, x);
            let head = (lam * r).powf(l + 1.0) * (-x / 2.0).exp();
            let dphi = ((l + 1.0) / r - lam * lam * r) * head * le.value
                + head * 2.0 * lam * lam * r * le.derivative;
            kap / r * head * le.value + dphi
        }
    }
}

/// Biorthonormal partner of phi: integral of phibar_m phi_n dr = delta_mn.
pub fn phibar(spec: &BasisSpec, n: usize, r: f64) -> f64 {
    let lam = spec.scale;
    let l = spec.l as f64;
    let nf = n as f64;
    match spec.kind {
        BasisKind::Laguerre => {
            let norm = lam * (log_gamma(nf + 1.0).unwrap() - log_gamma(nf + 2.0 * l + 2.0).unwrap()).exp();
            norm / (lam * r) * phi(spec, n, r)
        }
        BasisKind::Gaussian => {
            let norm = 2.0 * lam * (log_gamma(nf + 1.0).unwrap() - log_gamma(nf + l + 1.5).unwrap()).exp();
            norm * phi(spec, n, r)
        }
    }
}

/// Biorthonormal partner of psi, defined by (kappa/r - d/dr) psibar_n = phibar_n
/// with the unique square-integrable/regular branch. Evaluated through the
/// integral representation psibar = -r^kappa * Int_0^r t^{-kappa} phibar dt
/// (kappa < 0) or r^kappa * Int_r^inf t^{-kappa} phibar dt (kappa > 0).
pub fn psibar(spec: &BasisSpec, n: usize, r: f64) -> Result<f64> {
    let kap = spec.kappa;
    let integrand = |t: f64| t.powi(-kap) * phibar(spec, n, t);
    if kap < 0 {
        let val = quadrature::integrate(&integrand, 0.0, r, &[], 1e-12)?;
        Ok(-r.powi(kap) * val)
    } else {
        let upper = spec.cutoff_radius().max(2.0 * r);
        let val = quadrature::integrate(&integrand, r, upper, &[], 1e-12)?;
        Ok(r.powi(kap) * val)
    }
}

/// Overlap matrices over indices 0..=N (the boundary row N is needed by the
/// tangent formulas).
#[derive(Debug, Clone)]
pub struct OverlapMatrices {
    /// <phi_m | phi_n>
    pub s_phi: DMatrix<f64>,
    /// <psi_m | psi_n> = <phi_m | (-d^2/dr^2 + l(l+1)/r^2) | phi_n>
    pub s_psi: DMatrix<f64>,
}

/// Closed-form overlaps (fast path; cross-validated against quadrature by
/// `overlaps_by_quadrature` in the verification suite).
pub fn overlaps(spec: &BasisSpec) -> OverlapMatrices {
    let dim = spec.n_max + 1;
    let lam = spec.scale;
    let l = spec.l as f64;
    let mut s_phi = DMatrix::zeros(dim, dim);
    let mut s_psi = DMatrix::zeros(dim, dim);
    let lg = |x: f64| log_gamma(x).unwrap();
    match spec.kind {
        BasisKind::Laguerre => {
            for n in 0..dim {
                let nf = n as f64;
                let ratio = (lg(nf + 2.0 * l + 2.0) - lg(nf + 1.0)).exp(); // Gamma(n+2l+2)/n!
                s_phi[(n, n)] = 2.0 * (nf + l + 1.0) * ratio / lam;
                s_psi[(n, n)] = lam * (nf + l + 1.0) * ratio / 2.0;
                if n > 0 {
                    let ratio1 = (lg(nf + 2.0 * l + 2.0) - lg(nf)).exp(); // Gamma(n+2l+2)/(n-1)!
                    s_phi[(n, n - 1)] = -ratio1 / lam;
                    s_phi[(n - 1, n)] = s_phi[(n, n - 1)];
                    s_psi[(n, n - 1)] = lam * ratio1 / 4.0;
                    s_psi[(n - 1, n)] = s_psi[(n, n - 1)];
                }
            }
        }
        BasisKind::Gaussian => {
            for n in 0..dim {
                let nf = n as f64;
                let ratio = (lg(nf + l + 1.5) - lg(nf + 1.0)).exp(); // Gamma(n+l+3/2)/n!
                s_phi[(n, n)] = ratio / (2.0 * lam);
                s_psi[(n, n)] = lam * (2.0 * nf + l + 1.5) * ratio / 2.0;
                if n > 0 {
                    let ratio1 = (lg(nf + l + 1.5) - lg(nf)).exp(); // Gamma(n+l+3/2)/(n-1)!
                    s_psi[(n, n - 1)] = lam * ratio1 / 2.0;
                    s_psi[(n - 1, n)] = s_psi[(n, n - 1)];
                }
            }
        }
    }
    OverlapMatrices { s_phi, s_psi }
}

/// The same matrices by adaptive quadrature; authoritative slow path.
pub fn overlaps_by_quadrature(spec: &BasisSpec) -> Result<OverlapMatrices> {
    let dim = spec.n_max + 1;
    let upper = spec.cutoff_radius();
    let mut s_phi = DMatrix::zeros(dim, dim);
    let mut s_psi = DMatrix::zeros(dim, dim);
    for m in 0..dim {
        for n in 0..=m {
            let fp = |r: f64| phi(spec, m, r) * phi(spec, n, r);
            let vp = quadrature::integrate(&fp, 0.0, upper, &[], 1e-11)?;
            s_phi[(m, n)] = vp;
            s_phi[(n, m)] = vp;
            let fs = |r: f64| psi(spec, m, r) * psi(spec, n, r);
            let vs = quadrature::integrate(&fs, 0.0, upper, &[], 1e-11)?;
            s_psi[(m, n)] = vs;
            s_psi[(n, m)] = vs;
        }
    }
    Ok(OverlapMatrices { s_phi, s_psi })
}
