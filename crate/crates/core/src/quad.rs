//! Composite Simpson quadrature with step halving.

use crate::error::{Error, Result};
use crate::sum::ComplexSum;
use num_complex::Complex64;

/// Relative stopping tolerance between successive halvings.
pub const DEFAULT_QUAD_TOL: f64 = 1e-9;

const MAX_HALVINGS: usize = 14;

/// Integrates `f` over `[a, b]` starting from panels no wider than `step`,
/// halving the step (reusing earlier nodes) until two successive Simpson
/// values differ by less than `tol · max(1, |S|)`.
pub fn simpson<F>(f: F, a: f64, b: f64, step: f64, tol: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if !(step > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!(
            "quadrature needs finite bounds and a positive step (a={a}, b={b}, step={step})"
        )));
    }
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let len = b - a;
    let mut panels = ((len.abs() / step).ceil() as usize).max(1);
    panels += panels % 2;
    let mut h = len / panels as f64;

    let ends = f(a) + f(b);
    let mut odd = ComplexSum::new();
    let mut even = ComplexSum::new();
    for i in 1..panels {
        let v = f(a + i as f64 * h);
        if i % 2 == 1 {
            odd.add(v);
        } else {
            even.add(v);
        }
    }
    let simpson_value =
        |h: f64, odd: &ComplexSum, even: &ComplexSum| (ends + odd.value() * 4.0 + even.value() * 2.0) * (h / 3.0);
    let mut current = simpson_value(h, &odd, &even);
    let mut change = f64::INFINITY;

    for _ in 0..MAX_HALVINGS {
        let mut new_even = even;
        new_even.add(odd.value());
        let mut new_odd = ComplexSum::new();
        let half = h / 2.0;
        for i in 0..panels {
            new_odd.add(f(a + (2 * i + 1) as f64 * half));
        }
        panels *= 2;
        h = half;
        odd = new_odd;
        even = new_even;
        let next = simpson_value(h, &odd, &even);
        change = (next - current).norm();
        current = next;
        if change < tol * current.norm().max(1.0) {
            return Ok(current);
        }
    }
    Err(Error::Quadrature { tolerance: tol, change })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let v = simpson(|x| Complex64::new(x * x * x, 0.0), 0.0, 2.0, 0.5, 1e-12).unwrap();
        assert!((v.re - 4.0).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_complex_integrand() {
        // ∫_0^π e^{ix} dx = 2i
        let v = simpson(|x| Complex64::new(0.0, x).exp(), 0.0, std::f64::consts::PI, 0.1, 1e-12).unwrap();
        assert!((v - Complex64::new(0.0, 2.0)).norm() < 1e-11);
    }

    #[test]
    fn reversed_orientation_flips_sign() {
        let f = |x: f64| Complex64::new(x.exp(), 0.0);
        let fwd = simpson(f, 0.0, 1.0, 0.1, 1e-12).unwrap();
        let back = simpson(f, 1.0, 0.0, 0.1, 1e-12).unwrap();
        assert!((fwd + back).norm() < 1e-13);
        assert!((fwd.re - (1f64.exp() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_step() {
        assert!(simpson(|_| Complex64::new(1.0, 0.0), 0.0, 1.0, 0.0, 1e-9).is_err());
    }
}
