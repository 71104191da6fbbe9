//! Relativistic pipeline: kinematics, 2N x 2N spinor-block assembly, the
//! relativistic Harris spectrum, Green elements, the relativistic tangent,
//! the non-relativistic limit scan, and spinor reconstruction.
//!
//! Block layout: index s*N + n with s = 0 the large (+) component and s = 1
//! the small (-) component.

use crate::basis::{self, BasisSpec};
use crate::error::{Error, Result};
use crate::freewave::{self, WaveCoefficients};
use crate::linalg;
use crate::nonrel::{self, HarrisSpectrum};
use crate::potential::{self, PotentialModel};
use crate::specfun::riccati_bessel_with_derivative;
use nalgebra::{DMatrix, DVector};

pub const DEFAULT_LIGHT_SPEED: f64 = 137.035999;
/// Limit on |G^{-+} - (eps/ktilde) G^{++}| / |G^{++}|.
pub const CONSISTENCY_LIMIT: f64 = 1e-5;

#[derive(Debug, Clone, Copy)]
pub struct Kinematics {
    pub mass: f64,
    pub c: f64,
    /// Non-relativistic energy E_nr = E - mc^2 > 0.
    pub nonrel_energy: f64,
    /// Total energy E = E_nr + mc^2.
    pub e_total: f64,
    /// eps = sqrt((E - mc^2)/(E + mc^2)).
    pub eps: f64,
    /// ktilde = sqrt((E - mc^2)(E + mc^2))/c.
    pub ktilde: f64,
}

pub fn kinematics(mass: f64, c: f64, nonrel_energy: f64) -> Result<Kinematics> {
    if !(mass > 0.0) || !(c > 0.0) {
        return Err(Error::Domain(format!("mass and c must be positive, got m={mass}, c={c}")));
    }
    if !(nonrel_energy > 0.0) {
        return Err(Error::Domain(format!(
            "scattering requires positive energy above rest mass, got {nonrel_energy}"
        )));
    }
    let mc2 = mass * c * c;
    // Formed from E_nr directly so that E - mc^2 never suffers cancellation.
    let eps = (nonrel_energy / (nonrel_energy + 2.0 * mc2)).sqrt();
    let ktilde = (nonrel_energy * (nonrel_energy + 2.0 * mc2)).sqrt() / c;
    Ok(Kinematics {
        mass,
        c,
        nonrel_energy,
        e_total: nonrel_energy + mc2,
        eps,
        ktilde,
    })
}

/// Energy-independent relativistic system: (M + V, S_rel), with M + V and
/// S_rel as printed, plus the pieces needed for the cancellation-free
/// assembly of I + V at a given energy.
pub struct RelSystem {
    pub spec: BasisSpec,
    pub model: PotentialModel,
    pub c: f64,
    pub mass: f64,
    /// Overlap blocks through index N.
    s_phi: DMatrix<f64>,
    s_psi: DMatrix<f64>,
    v_phi: DMatrix<f64>,
    v_psi: DMatrix<f64>,
}

impl RelSystem {
    pub fn new(spec: BasisSpec, model: PotentialModel, mass: f64, c: f64) -> Result<Self> {
        if !(mass > 0.0) || !(c > 0.0) {
            return Err(Error::Domain("mass and c must be positive".into()));
        }
        let ov = basis::overlaps(&spec);
        let blocks = potential::potential_blocks(&model, &spec)?;
        Ok(Self {
            spec,
            model,
            c,
            mass,
            s_phi: ov.s_phi,
            s_psi: ov.s_psi,
            v_phi: blocks.v_phi,
            v_psi: blocks.v_psi,
        })
    }

    fn n(&self) -> usize {
        self.spec.n_max
    }

    /// (M + V, S_rel) of the printed block form; eigenvalues of this pencil,
    /// scaled by c, are total energies including the rest mass.
    pub fn m_plus_v(&self) -> (DMatrix<f64>, DMatrix<f64>) {
        let n = self.n();
        let mc2_over_c = self.mass * self.c;
        let mut a = DMatrix::zeros(2 * n, 2 * n);
        let mut s = DMatrix::zeros(2 * n, 2 * n);
        for m in 0..n {
            for nn in 0..n {
                let sp = self.s_phi[(m, nn)];
                let ts = self.s_psi[(m, nn)];
                a[(m, nn)] = mc2_over_c * sp + self.v_phi[(m, nn)] / self.c;
                a[(m, n + nn)] = ts;
                a[(n + m, nn)] = ts;
                a[(n + m, n + nn)] = -mc2_over_c * ts + self.v_psi[(m, nn)] / self.c;
                s[(m, nn)] = sp;
                s[(n + m, n + nn)] = ts;
            }
        }
        (a, s)
    }

    /// I + V at total energy E, assembled directly from the energy above the
    /// rest mass so no mc^2-scale cancellation occurs:
    ///   ++ block: -(E_nr/c) S_phi + V_phi/c
    ///   +-/-+   :  S_psi
    ///   --      : -((E_nr + 2mc^2)/c) S_psi + V_psi/c
    pub fn i_plus_v(&self, kin: &Kinematics) -> DMatrix<f64> {
        let n = self.n();
        let mc2 = self.mass * self.c * self.c;
        let cp = kin.nonrel_energy / self.c; // = ktilde * eps
        let cm = (kin.nonrel_energy + 2.0 * mc2) / self.c; // = ktilde / eps
        let mut a = DMatrix::zeros(2 * n, 2 * n);
        for m in 0..n {
            for nn in 0..n {
                let ts = self.s_psi[(m, nn)];
                a[(m, nn)] = -cp * self.s_phi[(m, nn)] + self.v_phi[(m, nn)] / self.c;
                a[(m, n + nn)] = ts;
                a[(n + m, nn)] = ts;
                a[(n + m, n + nn)] = -cm * ts + self.v_psi[(m, nn)] / self.c;
            }
        }
        a
    }

    /// Green elements (G^{++}, G^{-+}) at index (N-1, N-1), via a direct
    /// solve of (I + V) x = e. Equivalent to the spectral sum
    /// c * sum Gamma Gamma^T / (E_i - E) but immune to the rest-mass-scale
    /// round-off that dominates the sum at large c.
    pub fn green_elements(&self, kin: &Kinematics) -> Result<(f64, f64)> {
        let n = self.n();
        let iv = self.i_plus_v(kin);
        let mut e = DVector::zeros(2 * n);
        e[n - 1] = 1.0;
        let x = linalg::lu_solve(&iv, &e)?;
        Ok((x[n - 1], x[2 * n - 1]))
    }

    fn boundary_j(&self, k: f64) -> f64 {
        let n = self.n();
        0.5 * self.s_psi[(n, n - 1)] - 0.5 * k * k * self.s_phi[(n, n - 1)]
    }

    pub fn coefficients(&self, ktilde: f64) -> Result<WaveCoefficients> {
        freewave::sine_cosine_coefficients(&self.spec, ktilde, self.spec.n_max)
    }
}

/// Relativistic Harris spectrum: generalized eigensolve of (M + V, S_rel)
/// with eigenvalues reported as total energies E_i = c * eps_i.
pub fn rel_harris_spectrum(
    m_plus_v: &DMatrix<f64>,
    s_rel: &DMatrix<f64>,
    c: f64,
) -> Result<HarrisSpectrum> {
    let r = linalg::sym_generalized_eigen(m_plus_v, s_rel)?;
    let mut h = HarrisSpectrum::from(r);
    for e in &mut h.energies {
        *e *= c;
    }
    Ok(h)
}

#[derive(Debug, Clone)]
pub struct RelPhaseShiftResult {
    pub tan_delta_tilde: f64,
    pub delta: f64,
    pub g_pp: f64,
    pub g_mp: f64,
    /// |G^{-+} - (eps/ktilde) G^{++}| / |G^{++}|.
    pub consistency_gap: f64,
    pub pole_proximity: f64,
    pub residual: f64,
}

/// Reusable relativistic scan context: one assembly plus one spectrum per
/// (spec, model, mass, c); the tangent itself is a per-energy solve.
pub struct RelContext {
    pub system: RelSystem,
    pub harris: HarrisSpectrum,
    pub pole_guard: f64,
}

impl RelContext {
    pub fn new(spec: BasisSpec, model: PotentialModel, mass: f64, c: f64) -> Result<Self> {
        let system = RelSystem::new(spec, model, mass, c)?;
        let (a, s) = system.m_plus_v();
        let harris = rel_harris_spectrum(&a, &s, c)?;
        Ok(Self { system, harris, pole_guard: nonrel::DEFAULT_POLE_GUARD })
    }

    pub fn tan_delta(&self, nonrel_energy: f64) -> Result<RelPhaseShiftResult> {
        let kin = kinematics(self.system.mass, self.system.c, nonrel_energy)?;
        let prox = self.harris.pole_proximity(kin.e_total);
        if prox <= self.pole_guard {
            let nearest = self
                .harris
                .energies
                .iter()
                .cloned()
                .min_by(|a, b| {
                    (a - kin.e_total).abs().partial_cmp(&(b - kin.e_total).abs()).unwrap()
                })
                .unwrap();
            return Err(Error::Pole { energy: kin.e_total, nearest, gap: prox });
        }
        let n = self.system.n();
        let (g_pp, g_mp) = self.system.green_elements(&kin)?;
        let consistency_gap = (g_mp - kin.eps / kin.ktilde * g_pp).abs() / g_pp.abs();
        if consistency_gap > CONSISTENCY_LIMIT {
            return Err(Error::Consistency { gap: consistency_gap, limit: CONSISTENCY_LIMIT });
        }
        let w = self.system.coefficients(kin.ktilde)?;
        let jb = self.system.boundary_j(kin.ktilde);
        let fac = (2.0 * kin.eps / kin.ktilde) * g_pp * jb;
        let num = w.s[n - 1] + fac * w.s[n];
        let den = w.c[n - 1] + fac * w.c[n];
        let base = nonrel::assemble_result(num, den, prox);
        Ok(RelPhaseShiftResult {
            tan_delta_tilde: base.tan_delta,
            delta: base.delta,
            g_pp,
            g_mp,
            consistency_gap,
            pole_proximity: prox,
            residual: base.residual,
        })
    }

    /// Large and small radial components (F, G) on a grid, normalized to
    /// sin-like + t * cos-like asymptotics of F.
    pub fn reconstruct_spinor(
        &self,
        nonrel_energy: f64,
        r_grid: &[f64],
    ) -> Result<(Vec<f64>, Vec<f64>)> {
        let kin = kinematics(self.system.mass, self.system.c, nonrel_energy)?;
        let res = self.tan_delta(nonrel_energy)?;
        let t = res.tan_delta_tilde;
        let n = self.system.n();
        let spec = &self.system.spec;
        let w = self.system.coefficients(kin.ktilde)?;
        let ratio = kin.eps / kin.ktilde;
        // Interior rows: (I + V) d = -u_N * (coupling of row N-1 to the tail);
        // only the + row picks up a source, equal to (2 eps/ktilde) J_{N-1,N}.
        let iv = self.system.i_plus_v(&kin);
        let u_n = w.s[n] + t * w.c[n];
        let mut rhs = DVector::zeros(2 * n);
        rhs[n - 1] = -(2.0 * kin.eps / kin.ktilde) * self.system.boundary_j(kin.ktilde) * u_n;
        let d = linalg::lu_solve(&iv, &rhs)?;
        let l = spec.l as usize;
        let kappa = spec.kappa as f64;
        let mut f_out = Vec::with_capacity(r_grid.len());
        let mut g_out = Vec::with_capacity(r_grid.len());
        for &r in r_grid {
            let mut f_val = 0.0;
            let mut g_val = 0.0;
            for i in 0..n {
                let u_i = w.s[i] + t * w.c[i];
                f_val += (d[i] - u_i) * basis::phi(spec, i, r);
                g_val += (d[n + i] - ratio * u_i) * basis::psi(spec, i, r);
            }
            let x = kin.ktilde * r;
            let (jhat, _, jhat_p, _) = riccati_bessel_with_derivative(l, x)?;
            let (cval, cder) = freewave::cosine_solution(spec, kin.ktilde, w.beta, r)?;
            let tail_f = jhat + t * cval;
            // (kappa/r + d/dr) applied to the exact tail
            let tail_g = kappa / r * tail_f + kin.ktilde * jhat_p + t * cder;
            f_out.push(f_val + tail_f);
            g_out.push(g_val + ratio * tail_g);
        }
        Ok((f_out, g_out))
    }
}

/// One-shot relativistic tangent.
pub fn rel_tan_delta(
    spec: &BasisSpec,
    model: &PotentialModel,
    kin: &Kinematics,
) -> Result<RelPhaseShiftResult> {
    RelContext::new(*spec, *model, kin.mass, kin.c)?.tan_delta(kin.nonrel_energy)
}

#[derive(Debug, Clone, Copy)]
pub struct LimitRow {
    pub c: f64,
    pub tan_rel: f64,
    pub tan_nonrel: f64,
    pub gap: f64,
}

/// Scan of t-tilde against the non-relativistic tangent over ascending c.
pub fn nonrel_limit_scan(
    spec: &BasisSpec,
    model: &PotentialModel,
    energy: f64,
    c_values: &[f64],
) -> Result<Vec<LimitRow>> {
    if c_values.windows(2).any(|w| w[1] <= w[0]) || c_values.iter().any(|&c| !(c > 0.0)) {
        return Err(Error::Domain("c values must be positive and ascending".into()));
    }
    let tn = nonrel::NonrelContext::new(*spec, *model)?.tan_delta(energy)?.tan_delta;
    let mut rows = Vec::with_capacity(c_values.len());
    for &c in c_values {
        let ctx = RelContext::new(*spec, *model, 1.0, c)?;
        let tr = ctx.tan_delta(energy)?.tan_delta_tilde;
        rows.push(LimitRow { c, tan_rel: tr, tan_nonrel: tn, gap: (tr - tn).abs() });
    }
    Ok(rows)
}
