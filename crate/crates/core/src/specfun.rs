//! Special-function kernel: log-gamma, orthogonal polynomials,
//! terminating/confluent hypergeometric series and Riccati-Bessel pairs.
//!
//! Everything here is pure and allocation-free; polynomial families use
//! three-term recurrences rather than factorial closed forms so that n ~ 60
//! stays well inside f64 range.

use crate::error::{Error, Result};

/// Value of a polynomial together with its derivative in the argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyEval {
    pub value: f64,
    pub derivative: f64,
}

// Lanczos approximation, g = 7, 9 coefficients. Relative error below 1e-14
// over the positive axis; reflection is not needed since we require x > 0.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Gamma(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFF[0];
    for (i, &c) in LANCZOS_COEFF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + acc.ln())
}

/// Generalized Laguerre polynomial L_n^{(alpha)}(x) with derivative
/// d/dx L_n^{(alpha)} = -L_{n-1}^{(alpha+1)}.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> PolyEval {
    PolyEval {
        value: laguerre_value(n, alpha, x),
        derivative: if n == 0 {
            0.0
        } else {
            -laguerre_value(n - 1, alpha + 1.0, x)
        },
    }
}

fn laguerre_value(n: usize, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for m in 1..n {
        let mf = m as f64;
        let next = ((2.0 * mf + 1.0 + alpha - x) * cur - (mf + alpha) * prev) / (mf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Gegenbauer (ultraspherical) polynomial C_n^{(lam)}(x).
pub fn gegenbauer(n: usize, lam: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * lam * x;
    for m in 1..n {
        let mf = m as f64;
        let next = (2.0 * (mf + lam) * x * cur - (mf + 2.0 * lam - 1.0) * prev) / (mf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Terminating Gauss hypergeometric series 2F1(a, b; c; x) with a a
/// non-positive integer. Exact finite sum of |a| + 1 terms.
pub fn gauss_2f1_terminating(a: i64, b: f64, c: f64, x: f64) -> Result<f64> {
    if a > 0 {
        return Err(Error::Domain(format!(
            "2F1 terminating form needs a <= 0, got a = {a}"
        )));
    }
    let nterms = (-a) as usize;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..nterms {
        let kf = k as f64;
        let denom = c + kf;
        if denom == 0.0 {
            return Err(Error::Domain(format!(
                "2F1 parameter c = {c} hits a pole at term {k} before termination"
            )));
        }
        term *= (a as f64 + kf) * (b + kf) / denom * x / (kf + 1.0);
        sum += term;
    }
    Ok(sum)
}

/// Terminating 2F1 together with its cancellation estimate (largest partial
/// sum magnitude over result magnitude). Used by coefficient cross-checks to
/// decide whether the closed form is numerically trustworthy.
pub(crate) fn gauss_2f1_terminating_with_peak(a: i64, b: f64, c: f64, x: f64) -> Result<(f64, f64)> {
    if a > 0 {
        return Err(Error::Domain(format!(
            "2F1 terminating form needs a <= 0, got a = {a}"
        )));
    }
    let nterms = (-a) as usize;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut peak = 1.0f64;
    for k in 0..nterms {
        let kf = k as f64;
        let denom = c + kf;
        if denom == 0.0 {
            return Err(Error::Domain(format!(
                "2F1 parameter c = {c} hits a pole at term {k} before termination"
            )));
        }
        term *= (a as f64 + kf) * (b + kf) / denom * x / (kf + 1.0);
        sum += term;
        peak = peak.max(sum.abs()).max(term.abs());
    }
    Ok((sum, peak / sum.abs().max(f64::MIN_POSITIVE)))
}

/// Confluent hypergeometric function 1F1(a; b; x).
///
/// The direct series carries a running cancellation estimate (largest
/// intermediate partial sum vs. result). When cancellation exceeds 1e8 the
/// Kummer transform 1F1(a;b;x) = e^x 1F1(b-a;b;-x) is used instead; if both
/// directions cancel badly a loss-of-precision error is returned.
pub fn kummer_1f1(a: f64, b: f64, x: f64) -> Result<f64> {
    if b <= 0.0 && b == b.floor() {
        return Err(Error::Domain(format!(
            "1F1 undefined for non-positive integer b = {b}"
        )));
    }
    const GUARD: f64 = 1e8;
    let (val, canc) = kummer_series(a, b, x)?;
    if canc < GUARD {
        return Ok(val);
    }
    let (tval, tcanc) = kummer_series(b - a, b, -x)?;
    if tcanc < GUARD {
        return Ok(x.exp() * tval);
    }
    Err(Error::Numerical(format!(
        "1F1({a};{b};{x}) lost precision: cancellation {canc:e} direct, {tcanc:e} transformed"
    )))
}

/// 1F1 value plus its cancellation estimate (best of direct/transformed).
pub(crate) fn kummer_1f1_with_peak(a: f64, b: f64, x: f64) -> Result<(f64, f64)> {
    if b <= 0.0 && b == b.floor() {
        return Err(Error::Domain(format!(
            "1F1 undefined for non-positive integer b = {b}"
        )));
    }
    let (val, canc) = kummer_series(a, b, x)?;
    let (tval, tcanc) = kummer_series(b - a, b, -x)?;
    if tcanc < canc {
        Ok((x.exp() * tval, tcanc))
    } else {
        Ok((val, canc))
    }
}

fn kummer_series(a: f64, b: f64, x: f64) -> Result<(f64, f64)> {
    let terminating = a <= 0.0 && a == a.floor();
    let max_terms = if terminating { (-a) as usize + 1 } else { 700 };
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut peak = 1.0f64;
    for k in 0..max_terms {
        let kf = k as f64;
        term *= (a + kf) / (b + kf) * x / (kf + 1.0);
        sum += term;
        peak = peak.max(sum.abs()).max(term.abs());
        if !terminating && term.abs() <= 1e-17 * sum.abs().max(1e-300) {
            break;
        }
        if k + 1 == max_terms && !terminating {
            return Err(Error::Numerical(format!(
                "1F1 series did not converge for a={a}, b={b}, x={x}"
            )));
        }
    }
    let canc = peak / sum.abs().max(f64::MIN_POSITIVE);
    Ok((sum, canc))
}

/// Riccati-Bessel pair (jhat_l(x), nhat_l(x)) for x > 0.
///
/// jhat_l(x) = x j_l(x) ~ x^{l+1}/(2l+1)!! at the origin;
/// nhat_l(x) = x y_l(x) ~ -(2l-1)!!/x^l.
pub fn riccati_bessel_pair(l: usize, x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "riccati_bessel_pair requires x > 0, got {x}"
        )));
    }
    Ok((riccati_j(l as i64, x), riccati_n(l as i64, x)))
}

/// Riccati-Bessel pair plus derivatives: (jhat, nhat, jhat', nhat').
pub fn riccati_bessel_with_derivative(l: usize, x: f64) -> Result<(f64, f64, f64, f64)> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!(
            "riccati_bessel_with_derivative requires x > 0, got {x}"
        )));
    }
    let li = l as i64;
    let (j, n) = (riccati_j(li, x), riccati_n(li, x));
    // f_l'(x) = f_{l-1}(x) - (l/x) f_l(x); valid down to l = 0 with the
    // l = -1 members jhat_{-1} = cos x, nhat_{-1} = sin x.
    let jp = riccati_j(li - 1, x) - li as f64 / x * j;
    let np = riccati_n(li - 1, x) - li as f64 / x * n;
    Ok((j, n, jp, np))
}

/// nhat is stable under upward recurrence for all l.
pub(crate) fn riccati_n(l: i64, x: f64) -> f64 {
    if l == -1 {
        return x.sin();
    }
    let mut prev = x.sin(); // l = -1
    let mut cur = -x.cos(); // l = 0
    for m in 0..l {
        let next = (2 * m + 1) as f64 / x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// jhat: upward recurrence below the turning point l <= x, Miller-style
/// downward recurrence (normalized against jhat_0 = sin x) above it.
pub(crate) fn riccati_j(l: i64, x: f64) -> f64 {
    if l == -1 {
        return x.cos();
    }
    if (l as f64) <= x {
        let mut prev = x.cos(); // l = -1
        let mut cur = x.sin(); // l = 0
        for m in 0..l {
            let next = (2 * m + 1) as f64 / x * cur - prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    // Miller's device: downward sweep from a padded start order with an
    // arbitrary tiny seed, then normalize against the exact l = 0 / l = -1
    // members (whichever of sin/cos is away from a node).
    let lu = l as usize;
    let start = lu + 20 + (2.0 * x) as usize;
    let mut f_above = 0.0f64; // f_{m+1}
    let mut f_m = 1e-290f64; // f at current order m, starting at m = start
    let mut at_l = if start == lu { f_m } else { 0.0 };
    for m in (1..=start).rev() {
        let f_below = (2 * m + 1) as f64 / x * f_m - f_above;
        f_above = f_m;
        f_m = f_below;
        if m - 1 == lu {
            at_l = f_m;
        }
        if f_m.abs() > 1e250 {
            f_m *= 1e-250;
            f_above *= 1e-250;
            at_l *= 1e-250;
        }
    }
    // f_m is the unnormalized f_0 (prop. to sin x); one more step gives f_{-1}
    // (prop. to cos x).
    let f_minus1 = 1.0 / x * f_m - f_above;
    if x.sin().abs() >= x.cos().abs() {
        at_l * x.sin() / f_m
    } else {
        at_l * x.cos() / f_minus1
    }
}
