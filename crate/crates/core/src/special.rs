//! Complex log-gamma, digamma and overflow-safe trigonometric helpers.

use num_complex::Complex64;
use std::f64::consts::PI;

const LN_2PI_HALF: f64 = 0.918_938_533_204_672_8;

/// B_{2k} for k = 1..=10, enough for Stirling's series at |z| ≥ 15.
const STIRLING_BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

const SHIFT_RADIUS: f64 = 15.0;

/// ln Γ(z) on the branch continuous in the right half-plane.
///
/// Uses upward recurrence until |z| ≥ 15, Stirling's series there, and the
/// reflection formula for Re z < ½. Poles (non-positive integers) give an
/// infinite real part.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z)Γ(1−z) = π / sin(πz)
        return Complex64::new(PI.ln(), 0.0) - ln_sin(z * PI) - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < SHIFT_RADIUS {
        shift += w.ln();
        w += 1.0;
    }
    stirling(w) - shift
}

fn stirling(w: Complex64) -> Complex64 {
    let mut series = Complex64::new(0.0, 0.0);
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut power = inv;
    for (k, b) in STIRLING_BERNOULLI.iter().enumerate() {
        let k = (k + 1) as f64;
        series += power * (b / (2.0 * k * (2.0 * k - 1.0)));
        power *= inv2;
    }
    (w - 0.5) * w.ln() - w + LN_2PI_HALF + series
}

/// ln Γ(x) for real x > 0.
pub fn ln_gamma_real(x: f64) -> f64 {
    ln_gamma(Complex64::new(x, 0.0)).re
}

/// Digamma ψ(z) = Γ′(z)/Γ(z).
pub fn digamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // ψ(1−z) − ψ(z) = π cot(πz)
        return digamma(Complex64::new(1.0, 0.0) - z) - cot(z * PI) * PI;
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < SHIFT_RADIUS {
        shift += w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut power = inv2;
    let mut series = Complex64::new(0.0, 0.0);
    for (k, b) in STIRLING_BERNOULLI.iter().enumerate() {
        let k = (k + 1) as f64;
        series += power * (b / (2.0 * k));
        power *= inv2;
    }
    w.ln() - inv * 0.5 - series - shift
}

/// ln sin(w), evaluated without forming sin(w) so that |Im w| in the
/// hundreds does not overflow. The imaginary part is only meaningful
/// modulo 2π.
pub fn ln_sin(w: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    if w.im >= 0.0 {
        // sin w = (i/2) e^{−iw} (1 − e^{2iw})
        -i * w + Complex64::new(-std::f64::consts::LN_2, PI / 2.0)
            + (Complex64::new(1.0, 0.0) - (i * w * 2.0).exp()).ln()
    } else {
        // sin w = (−i/2) e^{iw} (1 − e^{−2iw})
        i * w + Complex64::new(-std::f64::consts::LN_2, -PI / 2.0)
            + (Complex64::new(1.0, 0.0) - (-i * w * 2.0).exp()).ln()
    }
}

/// cot(w) without overflow for large |Im w|.
pub fn cot(w: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    if w.im >= 0.0 {
        let e = (i * w * 2.0).exp();
        i * (e + one) / (e - one)
    } else {
        let e = (-i * w * 2.0).exp();
        i * (one + e) / (one - e)
    }
}
