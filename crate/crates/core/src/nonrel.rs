//! Non-relativistic pipeline: Harris spectrum of the truncated Hamiltonian,
//! the Green element g_{N-1,N-1}(E), the tangent formula, and wavefunction
//! reconstruction.

use crate::basis::{self, BasisSpec};
use crate::error::{Error, Result};
use crate::freewave::{self, WaveCoefficients};
use crate::linalg::{self, GeneralizedEigenResult};
use crate::potential::{self, PotentialModel};
use crate::specfun::riccati_bessel_with_derivative;
use nalgebra::{DMatrix, DVector};

pub const DEFAULT_POLE_GUARD: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct HarrisSpectrum {
    /// Ascending eigenvalues (non-relativistic energies here; shifted total
    /// energies for the relativistic problem).
    pub energies: Vec<f64>,
    /// Columns Gamma_i, metric-orthonormal.
    pub gamma: DMatrix<f64>,
    pub dimension: usize,
}

impl From<GeneralizedEigenResult> for HarrisSpectrum {
    fn from(r: GeneralizedEigenResult) -> Self {
        let dimension = r.eigenvalues.len();
        HarrisSpectrum { energies: r.eigenvalues, gamma: r.eigenvectors, dimension }
    }
}

impl HarrisSpectrum {
    pub fn pole_proximity(&self, energy: f64) -> f64 {
        self.energies
            .iter()
            .map(|e| (e - energy).abs())
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone)]
pub struct PhaseShiftResult {
    pub tan_delta: f64,
    /// Angle form in (-pi/2, pi/2]; finite even at tangent poles.
    pub delta: f64,
    /// Distance from the requested energy to the nearest Harris eigenvalue.
    pub pole_proximity: f64,
    /// Magnitude of the Eq.-denominator; small values flag a nearby tangent pole.
    pub residual: f64,
}

/// Diagonalize the truncated (H0 + V) over the interior space n = 0..N-1:
/// (T/2 + V) Gamma = E S_phi Gamma with Gamma^T S_phi Gamma = I.
pub fn harris_spectrum(spec: &BasisSpec, model: &PotentialModel) -> Result<HarrisSpectrum> {
    let n = spec.n_max;
    let ov = basis::overlaps(spec);
    let blocks = potential::potential_blocks(model, spec)?;
    let a = 0.5 * ov.s_psi.view((0, 0), (n, n)).clone_owned() + &blocks.v_phi;
    let b = ov.s_phi.view((0, 0), (n, n)).clone_owned();
    Ok(linalg::sym_generalized_eigen(&a, &b)?.into())
}

/// Spectral-sum Green element g_{N-1,N-1}(E) = sum_m Gamma_{N-1,m}^2/(E_m - E).
pub fn green_element(h: &HarrisSpectrum, energy: f64, pole_guard: f64) -> Result<f64> {
    let prox = h.pole_proximity(energy);
    if prox <= pole_guard {
        let nearest = h
            .energies
            .iter()
            .cloned()
            .min_by(|a, b| (a - energy).abs().partial_cmp(&(b - energy).abs()).unwrap())
            .unwrap();
        return Err(Error::Pole { energy, nearest, gap: prox });
    }
    let last = h.dimension - 1;
    Ok(h.energies
        .iter()
        .enumerate()
        .map(|(m, e)| h.gamma[(last, m)].powi(2) / (e - energy))
        .sum())
}

/// Reusable per-(spec, model) state for energy scans.
pub struct NonrelContext {
    pub spec: BasisSpec,
    pub model: PotentialModel,
    pub harris: HarrisSpectrum,
    pub pole_guard: f64,
    /// Overlap blocks through index N (boundary row included).
    s_phi: DMatrix<f64>,
    s_psi: DMatrix<f64>,
    v_phi: DMatrix<f64>,
}

impl NonrelContext {
    pub fn new(spec: BasisSpec, model: PotentialModel) -> Result<Self> {
        let ov = basis::overlaps(&spec);
        let blocks = potential::potential_blocks(&model, &spec)?;
        let harris = {
            let n = spec.n_max;
            let a = 0.5 * ov.s_psi.view((0, 0), (n, n)).clone_owned() + &blocks.v_phi;
            let b = ov.s_phi.view((0, 0), (n, n)).clone_owned();
            HarrisSpectrum::from(linalg::sym_generalized_eigen(&a, &b)?)
        };
        Ok(Self {
            spec,
            model,
            harris,
            pole_guard: DEFAULT_POLE_GUARD,
            s_phi: ov.s_phi,
            s_psi: ov.s_psi,
            v_phi: blocks.v_phi,
        })
    }

    fn boundary_j(&self, k: f64) -> f64 {
        let n = self.spec.n_max;
        0.5 * self.s_psi[(n, n - 1)] - 0.5 * k * k * self.s_phi[(n, n - 1)]
    }

    pub fn coefficients(&self, k: f64) -> Result<WaveCoefficients> {
        freewave::sine_cosine_coefficients(&self.spec, k, self.spec.n_max)
    }

    /// Tangent of the phase shift at non-relativistic energy E > 0.
    pub fn tan_delta(&self, energy: f64) -> Result<PhaseShiftResult> {
        if !(energy > 0.0) {
            return Err(Error::Domain(format!(
                "scattering energy must be positive, got {energy}"
            )));
        }
        let n = self.spec.n_max;
        let k = (2.0 * energy).sqrt();
        let w = self.coefficients(k)?;
        let g = green_element(&self.harris, energy, self.pole_guard)?;
        let fac = g * self.boundary_j(k);
        let num = w.s[n - 1] + fac * w.s[n];
        let den = w.c[n - 1] + fac * w.c[n];
        Ok(assemble_result(num, den, self.harris.pole_proximity(energy)))
    }

    /// Interior expansion coefficients a_n (n = 0..N-1) of Eq.-(12)-style
    /// reconstruction, given tan delta.
    fn interior_coefficients(&self, energy: f64, w: &WaveCoefficients, tan_d: f64) -> Result<DVector<f64>> {
        let n = self.spec.n_max;
        let a = 0.5 * self.s_psi.view((0, 0), (n, n)).clone_owned() + &self.v_phi
            - energy * self.s_phi.view((0, 0), (n, n)).clone_owned();
        let k = w.k;
        let jbound = self.boundary_j(k);
        let tail_n = w.s[n] + tan_d * w.c[n];
        let mut rhs = DVector::zeros(n);
        rhs[n - 1] = -jbound * tail_n;
        linalg::lu_solve(&a, &rhs)
    }

    /// Scattering solution u(r) on a grid, normalized to
    /// sin-like + tan(delta) * cos-like asymptotics.
    pub fn reconstruct_wavefunction(&self, energy: f64, r_grid: &[f64]) -> Result<Vec<f64>> {
        let n = self.spec.n_max;
        let k = (2.0 * energy).sqrt();
        let res = self.tan_delta(energy)?;
        let t = res.tan_delta;
        let w = self.coefficients(k)?;
        let a = self.interior_coefficients(energy, &w, t)?;
        let l = self.spec.l as usize;
        let mut out = Vec::with_capacity(r_grid.len());
        for &r in r_grid {
            // interior deviation from the free tail plus the exact tail
            let mut val = 0.0;
            for i in 0..n {
                val += (a[i] - w.s[i] - t * w.c[i]) * basis::phi(&self.spec, i, r);
            }
            let (jhat, _, _, _) = riccati_bessel_with_derivative(l, k * r)?;
            let (cval, _) = freewave::cosine_solution(&self.spec, k, w.beta, r)?;
            out.push(val + jhat + t * cval);
        }
        Ok(out)
    }
}

pub(crate) fn assemble_result(num: f64, den: f64, pole_proximity: f64) -> PhaseShiftResult {
    let tan_delta = -num / den;
    // atan2 folded into (-pi/2, pi/2] so tangent poles land at +pi/2.
    let delta = if den < 0.0 { num.atan2(-den) } else { (-num).atan2(den) };
    PhaseShiftResult { tan_delta, delta, pole_proximity, residual: den.abs() }
}

/// One-shot convenience wrapper around `NonrelContext`.
pub fn tan_delta(spec: &BasisSpec, model: &PotentialModel, energy: f64) -> Result<PhaseShiftResult> {
    NonrelContext::new(*spec, *model)?.tan_delta(energy)
}

/// One-shot wavefunction reconstruction.
pub fn reconstruct_wavefunction(
    spec: &BasisSpec,
    model: &PotentialModel,
    energy: f64,
    r_grid: &[f64],
) -> Result<Vec<f64>> {
    NonrelContext::new(*spec, *model)?.reconstruct_wavefunction(energy, r_grid)
}
