//! Independent phase-shift references by direct integration of the radial
//! equations: Numerov for the Schrodinger problem, adaptive embedded
//! Runge-Kutta for the coupled Dirac system, and the closed-form s-wave
//! square-well tangent.

use crate::error::{Error, Result};
use crate::potential::PotentialModel;
use crate::rel::Kinematics;
use crate::specfun::riccati_bessel_pair;

#[derive(Debug, Clone, Copy)]
pub struct GridParams {
    /// Starting number of steps per unit length (doubled until converged).
    pub initial_density: f64,
    /// Outer matching radius R2; R1 is placed at match_fraction * R2.
    pub r_max: f64,
    pub match_fraction: f64,
    /// Convergence goal for grid doubling.
    pub tolerance: f64,
}

impl Default for GridParams {
    fn default() -> Self {
        GridParams { initial_density: 400.0, r_max: 30.0, match_fraction: 0.75, tolerance: 1e-7 }
    }
}

/// tan(delta) for the radial Schrodinger equation u'' = (2V + l(l+1)/r^2 - k^2) u
/// by Numerov integration and two-point matching against the free pair.
pub fn schrodinger_phase_shift(
    model: &PotentialModel,
    l: u32,
    energy: f64,
    grid: &GridParams,
) -> Result<f64> {
    if !(energy > 0.0) {
        return Err(Error::Domain(format!("energy must be positive, got {energy}")));
    }
    let k = (2.0 * energy).sqrt();
    let mut density = grid.initial_density;
    let mut prev: Option<f64> = None;
    for _ in 0..12 {
        let t = numerov_once(model, l, k, density, grid)?;
        if let Some(p) = prev {
            if (t - p).abs() <= grid.tolerance * t.abs().max(1.0) {
                return Ok(t);
            }
        }
        prev = Some(t);
        density *= 2.0;
    }
    Err(Error::Numerical(
        "Numerov grid refinement did not converge to tolerance".into(),
    ))
}

fn numerov_once(
    model: &PotentialModel,
    l: u32,
    k: f64,
    density: f64,
    grid: &GridParams,
) -> Result<f64> {
    let r0 = 1e-6;
    let r_end = grid.r_max;
    let mut breaks: Vec<f64> = model
        .discontinuities()
        .into_iter()
        .filter(|&x| x > r0 && x < r_end)
        .collect();
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut bounds = vec![r0];
    bounds.extend(breaks);
    bounds.push(r_end);

    let lf = l as f64;
    // V evaluated at `side` (nudged off a discontinuity node), centrifugal at r
    let f_at = |r: f64, side: f64| 2.0 * model.evaluate(side) + lf * (lf + 1.0) / (r * r) - k * k;

    let mut nodes: Vec<f64> = Vec::new();
    let mut u: Vec<f64> = Vec::new();

    // Each segment is integrated on its own uniform grid; crossing a
    // potential discontinuity re-seeds from (u, u') so that no Numerov
    // stencil ever straddles the break (a straddling step with the two
    // sub-grid spacings slightly mismatched injects a derivative kick
    // that does not vanish under refinement).
    for (s, w) in bounds.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let steps = (((b - a) * density).ceil() as usize).max(8);
        let h = (b - a) / steps as f64;
        let nudge = 1e-9 * b.max(1.0);
        let fv: Vec<f64> = (0..=steps)
            .map(|i| {
                let r = a + i as f64 * h;
                // one-sided limits at the segment end points
                let side = if i == 0 { r + nudge } else if i == steps { r - nudge } else { r };
                f_at(r, side)
            })
            .collect();
        let (u0, u1) = if s == 0 {
            // series seed u = r^{l+1} (1 + c r^2 + ...) from u'' = f u; the
            // leading power alone would cap overall convergence at O(h^2)
            let cser = (2.0 * model.evaluate(r0 + nudge) - k * k) / (4.0 * lf + 6.0);
            let seed = |r: f64| r.powi(l as i32 + 1) * (1.0 + cser * r * r);
            (seed(a), seed(a + h))
        } else {
            // u at the break from the previous segment; u' by a one-sided
            // five-point O(h^4) formula on that segment's uniform grid
            let m = u.len() - 1;
            let hl = nodes[m] - nodes[m - 1];
            let du = (25.0 * u[m] - 48.0 * u[m - 1] + 36.0 * u[m - 2] - 16.0 * u[m - 3]
                + 3.0 * u[m - 4])
                / (12.0 * hl);
            // Taylor step into the new segment with right-side f and its
            // one-sided finite-difference derivatives; the third and fourth
            // u derivatives follow from repeated differentiation of u'' = f u
            let f0 = fv[0];
            let fp = (-3.0 * fv[0] + 4.0 * fv[1] - fv[2]) / (2.0 * h);
            let fpp = (fv[0] - 2.0 * fv[1] + fv[2]) / (h * h);
            let ub = u[m];
            let u1 = ub
                + h * du
                + h * h / 2.0 * f0 * ub
                + h * h * h / 6.0 * (fp * ub + f0 * du)
                + h * h * h * h / 24.0 * ((fpp + f0 * f0) * ub + 2.0 * fp * du);
            (ub, u1)
        };
        if s > 0 {
            // drop the duplicated break node kept by the previous segment
            nodes.pop();
            u.pop();
        }
        let base = nodes.len();
        nodes.push(a);
        u.push(u0);
        nodes.push(a + h);
        u.push(u1);
        for i in 1..steps {
            let h2 = h * h;
            // u'' = f u form: u_{i+1}(1 - h^2 f_{i+1}/12)
            //   = 2 u_i (1 + 5 h^2 f_i / 12) - u_{i-1}(1 - h^2 f_{i-1}/12)
            let c1 = 1.0 - h2 / 12.0 * fv[i + 1];
            let c2 = 2.0 * (1.0 + 5.0 * h2 / 12.0 * fv[i]);
            let c3 = 1.0 - h2 / 12.0 * fv[i - 1];
            let j = base + i + 1;
            u.push((c2 * u[j - 1] - c3 * u[j - 2]) / c1);
            nodes.push(a + (i + 1) as f64 * h);
            if u[j].abs() > 1e250 {
                let sc = 1e-250;
                for v in u.iter_mut() {
                    *v *= sc;
                }
            }
        }
    }

    // match at the nodes closest to R1 and R2
    let n = nodes.len();
    let r1_target = grid.match_fraction * r_end;
    let i1 = nodes
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - r1_target).abs().partial_cmp(&(b.1 - r1_target).abs()).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    let (ra, ua) = (nodes[i1], u[i1]);
    let (rb, ub) = (nodes[n - 1], u[n - 1]);
    two_point_match(l as usize, k, ra, ua, rb, ub)
}

fn two_point_match(l: usize, k: f64, r1: f64, u1: f64, r2: f64, u2: f64) -> Result<f64> {
    let (j1, n1) = riccati_bessel_pair(l, k * r1)?;
    let (j2, n2) = riccati_bessel_pair(l, k * r2)?;
    // u = A jhat + B (-nhat); tan delta = B / A
    let det = j1 * (-n2) - (-n1) * j2;
    if det.abs() < 1e-300 {
        return Err(Error::Numerical("degenerate matching radii".into()));
    }
    let a = (u1 * (-n2) - (-n1) * u2) / det;
    let b = (j1 * u2 - u1 * j2) / det;
    Ok(b / a)
}

/// tan(delta) for the radial Dirac system
///   F' = -(kappa/r) F + ((E + mc^2 - V)/c) G
///   G' =  (kappa/r) G + ((mc^2 - E + V)/c) F
/// via adaptive RK45 (Cash-Karp), matching the large component F.
pub fn dirac_phase_shift(
    model: &PotentialModel,
    kappa: i32,
    kin: &Kinematics,
    grid: &GridParams,
) -> Result<f64> {
    let l = crate::basis::l_of_kappa(kappa)? as usize;
    let mc2 = kin.mass * kin.c * kin.c;
    let c = kin.c;
    let e = kin.e_total;
    let deriv = |r: f64, y: [f64; 2]| -> [f64; 2] {
        let v = model.evaluate(r);
        let kap = kappa as f64;
        [
            -kap / r * y[0] + (e + mc2 - v) / c * y[1],
            kap / r * y[1] + (mc2 - e + v) / c * y[0],
        ]
    };
    let r0 = 1e-6;
    let v0 = model.evaluate(r0);
    let mut y = if kappa < 0 {
        let f = r0.powi(l as i32 + 1);
        let g = (mc2 - e + v0) / c * r0.powi(l as i32 + 2) / (2.0 * l as f64 + 3.0);
        [f, g]
    } else {
        let g = r0.powi(l as i32);
        let f = (e + mc2 - v0) / c * r0.powi(l as i32 + 1) / (2.0 * l as f64 + 1.0);
        [f, g]
    };

    let r_end = grid.r_max;
    let r1 = grid.match_fraction * r_end;
    let mut stops: Vec<f64> = model
        .discontinuities()
        .into_iter()
        .filter(|&x| x > r0 && x < r_end)
        .collect();
    stops.push(r1);
    stops.push(r_end);
    stops.sort_by(|a, b| a.partial_cmp(b).unwrap());
    stops.dedup();

    let mut r = r0;
    let mut f_at_r1 = None;
    for &stop in &stops {
        y = rk45_integrate(&deriv, r, stop, y, 1e-10)?;
        r = stop;
        if (stop - r1).abs() < 1e-12 * r1 {
            f_at_r1 = Some(y[0]);
        }
    }
    let f1 = f_at_r1.ok_or_else(|| Error::Numerical("matching radius lost".into()))?;
    two_point_match(l, kin.ktilde, r1, f1, r_end, y[0])
}

// Cash-Karp RK45 with step-size control on the two-component system.
fn rk45_integrate<F: Fn(f64, [f64; 2]) -> [f64; 2]>(
    deriv: &F,
    a: f64,
    b: f64,
    mut y: [f64; 2],
    rel_tol: f64,
) -> Result<[f64; 2]> {
    let mut r = a;
    let mut h = (b - a) / 64.0;
    let mut steps = 0usize;
    while r < b {
        if r + h > b {
            h = b - r;
        }
        let (ynext, err_est, scale) = cash_karp_step(deriv, r, y, h);
        let tol = rel_tol * scale.max(1e-290);
        if err_est <= tol || h < 1e-13 * (b - a) {
            r += h;
            y = ynext;
        }
        // PI-free classic step adaptation
        let factor = if err_est > 0.0 { 0.9 * (tol / err_est).powf(0.2) } else { 5.0 };
        h *= factor.clamp(0.2, 5.0);
        steps += 1;
        if steps > 20_000_000 {
            return Err(Error::Numerical("Dirac integrator exceeded step budget".into()));
        }
    }
    Ok(y)
}

#[allow(clippy::needless_range_loop)]
fn cash_karp_step<F: Fn(f64, [f64; 2]) -> [f64; 2]>(
    deriv: &F,
    r: f64,
    y: [f64; 2],
    h: f64,
) -> ([f64; 2], f64, f64) {
    const A: [f64; 6] = [0.0, 0.2, 0.3, 0.6, 1.0, 0.875];
    const B: [[f64; 5]; 6] = [
        [0.0, 0.0, 0.0, 0.0, 0.0],
        [0.2, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0],
        [0.3, -0.9, 1.2, 0.0, 0.0],
        [-11.0 / 54.0, 2.5, -70.0 / 27.0, 35.0 / 27.0, 0.0],
        [
            1631.0 / 55296.0,
            175.0 / 512.0,
            575.0 / 13824.0,
            44275.0 / 110592.0,
            253.0 / 4096.0,
        ],
    ];
    const C5: [f64; 6] = [37.0 / 378.0, 0.0, 250.0 / 621.0, 125.0 / 594.0, 0.0, 512.0 / 1771.0];
    const C4: [f64; 6] = [
        2825.0 / 27648.0,
        0.0,
        18575.0 / 48384.0,
        13525.0 / 55296.0,
        277.0 / 14336.0,
        0.25,
    ];
    let mut k = [[0.0f64; 2]; 6];
    k[0] = deriv(r, y);
    for s in 1..6 {
        let mut ys = y;
        for j in 0..s {
            ys[0] += h * B[s][j] * k[j][0];
            ys[1] += h * B[s][j] * k[j][1];
        }
        k[s] = deriv(r + A[s] * h, ys);
    }
    let mut y5 = y;
    let mut y4 = y;
    for s in 0..6 {
        y5[0] += h * C5[s] * k[s][0];
        y5[1] += h * C5[s] * k[s][1];
        y4[0] += h * C4[s] * k[s][0];
        y4[1] += h * C4[s] * k[s][1];
    }
    let err = ((y5[0] - y4[0]).powi(2) + (y5[1] - y4[1]).powi(2)).sqrt();
    let scale = y5[0].abs().max(y5[1].abs()).max(y[0].abs()).max(y[1].abs());
    (y5, err, scale)
}

/// Closed-form s-wave square-well tangent: with K = sqrt(k^2 - 2 V0),
/// tan delta = (k cos ka sin Ka - K sin ka cos Ka)
///           / (k sin ka sin Ka + K cos ka cos Ka).
pub fn squarewell_tan_delta_analytic(depth: f64, radius: f64, energy: f64) -> Result<f64> {
    if !(energy > 0.0) {
        return Err(Error::Domain(format!("energy must be positive, got {energy}")));
    }
    let k = (2.0 * energy).sqrt();
    let kk = (k * k - 2.0 * depth).sqrt();
    let (ska, cka) = ((k * radius).sin(), (k * radius).cos());
    let (ska2, cka2) = ((kk * radius).sin(), (kk * radius).cos());
    Ok((k * cka * ska2 - kk * ska * cka2) / (k * ska * ska2 + kk * cka * cka2))
}
