//! Short-range model potentials and their matrix elements in the phi and
//! psi bases.

use crate::basis::{self, BasisSpec};
use crate::error::{Error, Result};
use crate::quadrature;
use nalgebra::DMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialModel {
    /// V(r) = depth for r < radius, 0 beyond.
    SquareWell { depth: f64, radius: f64 },
    /// V(r) = depth * exp(-range * r).
    Exponential { depth: f64, range: f64 },
    /// V(r) = depth * exp(-(r/width)^2).
    Gaussian { depth: f64, width: f64 },
    /// Free particle.
    Free,
}

impl PotentialModel {
    pub fn evaluate(&self, r: f64) -> f64 {
        match *self {
            PotentialModel::SquareWell { depth, radius } => {
                if r < radius {
                    depth
                } else {
                    0.0
                }
            }
            PotentialModel::Exponential { depth, range } => depth * (-range * r).exp(),
            PotentialModel::Gaussian { depth, width } => depth * (-(r / width).powi(2)).exp(),
            PotentialModel::Free => 0.0,
        }
    }

    /// Locations where the integrand must be split.
    pub fn discontinuities(&self) -> Vec<f64> {
        match *self {
            PotentialModel::SquareWell { radius, .. } => vec![radius],
            _ => Vec::new(),
        }
    }

    /// Radius beyond which |V| < 1e-16 * |depth|.
    pub fn support_radius(&self) -> f64 {
        match *self {
            PotentialModel::SquareWell { radius, .. } => radius,
            PotentialModel::Exponential { range, .. } => 37.0 / range,
            PotentialModel::Gaussian { width, .. } => 6.1 * width,
            PotentialModel::Free => 0.0,
        }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, PotentialModel::Free)
    }
}

#[derive(Debug, Clone)]
pub struct PotentialBlocks {
    /// <phi_m | V | phi_n>, m, n = 0..N-1.
    pub v_phi: DMatrix<f64>,
    /// <psi_m | V | psi_n>, m, n = 0..N-1.
    pub v_psi: DMatrix<f64>,
}

/// Matrix elements of V in both bases by adaptive panel quadrature, with
/// panels split at potential discontinuities.
pub fn potential_blocks(model: &PotentialModel, spec: &BasisSpec) -> Result<PotentialBlocks> {
    let n = spec.n_max;
    let mut v_phi = DMatrix::zeros(n, n);
    let mut v_psi = DMatrix::zeros(n, n);
    if model.is_free() {
        return Ok(PotentialBlocks { v_phi, v_psi });
    }
    let breaks = model.discontinuities();
    let upper = spec.cutoff_radius().min(
        // the integrand dies when either factor does
        model.support_radius().max(breaks.iter().cloned().fold(0.0, f64::max)) + 1.0,
    ).max(1.0);
    let upper = upper.min(spec.cutoff_radius());
    for m in 0..n {
        for nn in 0..=m {
            let fp =
                |r: f64| basis::phi(spec, m, r) * basis::phi(spec, nn, r) * model.evaluate(r);
            let vp = quadrature::integrate(&fp, 0.0, upper, &breaks, 1e-10)?;
            v_phi[(m, nn)] = vp;
            v_phi[(nn, m)] = vp;
            let fs =
                |r: f64| basis::psi(spec, m, r) * basis::psi(spec, nn, r) * model.evaluate(r);
            let vs = quadrature::integrate(&fs, 0.0, upper, &breaks, 1e-10)?;
            v_psi[(m, nn)] = vs;
            v_psi[(nn, m)] = vs;
        }
    }
    if !v_phi.iter().chain(v_psi.iter()).all(|x| x.is_finite()) {
        return Err(Error::Numerical("potential matrix elements not finite".into()));
    }
    Ok(PotentialBlocks { v_phi, v_psi })
}
