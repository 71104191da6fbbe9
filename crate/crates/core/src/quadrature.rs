//! Adaptive Gauss-Legendre panel quadrature used for all matrix elements.
//!
//! A single fixed-order rule per panel, panels split recursively until the
//! two-half refinement changes the panel value by less than the requested
//! relative tolerance. Discontinuity locations (square-well edges) are
//! supplied as mandatory panel breaks.

use crate::error::{Error, Result};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// computed by Newton iteration on the Legendre polynomial.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev-like initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 1.0;
    let mut cur = x;
    for m in 1..n {
        let mf = m as f64;
        let next = ((2.0 * mf + 1.0) * x * cur - mf * prev) / (mf + 1.0);
        prev = cur;
        cur = next;
    }
    let dp = n as f64 * (x * cur - prev) / (x * x - 1.0);
    (cur, dp)
}

const PANEL_ORDER: usize = 32;

thread_local! {
    static GL32: (Vec<f64>, Vec<f64>) = gauss_legendre(PANEL_ORDER);
}

fn panel_sum<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    GL32.with(|(xs, ws)| {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (&x, &w) in xs.iter().zip(ws) {
            acc += w * f(mid + half * x);
        }
        half * acc
    })
}

/// Integrate f over [a, b] with mandatory breaks, refining each panel until
/// the two-half split agrees with the parent to rel_tol (relative to the
/// running whole-interval scale).
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, breaks: &[f64], rel_tol: f64) -> Result<f64> {
    let mut edges: Vec<f64> = vec![a];
    for &x in breaks {
        if x > a && x < b {
            edges.push(x);
        }
    }
    edges.push(b);
    edges.sort_by(|p, q| p.partial_cmp(q).unwrap());

    // First pass for a magnitude scale.
    let coarse: f64 = edges
        .windows(2)
        .map(|w| panel_sum(f, w[0], w[1]).abs())
        .sum::<f64>()
        .max(f64::MIN_POSITIVE);

    // Cancellation in high-order integrands leaves panel residuals of order
    // eps times the global magnitude; refining past that chases roundoff.
    let noise = 1e-16 * coarse;

    let mut total = 0.0;
    for w in edges.windows(2) {
        total += refine(f, w[0], w[1], rel_tol * coarse, noise, 0)?;
    }
    Ok(total)
}

fn refine<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    noise: f64,
    depth: usize,
) -> Result<f64> {
    let whole = panel_sum(f, a, b);
    let mid = 0.5 * (a + b);
    let left = panel_sum(f, a, mid);
    let right = panel_sum(f, mid, b);
    let err = (left + right - whole).abs();
    // floor at machine noise relative to the local panel magnitude
    let floor = 1e-15 * (left.abs() + right.abs()).max(whole.abs());
    if err <= abs_tol.max(floor).max(noise).max(1e-300) {
        return Ok(left + right);
    }
    if depth >= 40 {
        return Err(Error::Numerical(format!(
            "quadrature failed to converge on [{a}, {b}] (residual {err:e})"
        )));
    }
    Ok(refine(f, a, mid, abs_tol / 2.0, noise, depth + 1)?
        + refine(f, mid, b, abs_tol / 2.0, noise, depth + 1)?)
}
