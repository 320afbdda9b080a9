//! Truncated explicit formulas over zeta zeros for the half-jump
//! summatory functions 𝔠♯^(β)(n, x) and ψ♯_m^(β)(x).

use crate::arith::{beta_divisors, sigma, summatory_c, summatory_psi, SumParams};
use crate::error::{Error, Result};
use crate::special::ln_gamma_real;
use crate::sum::NeumaierSum;
use crate::zeta::{zeta_odd, ZeroTable};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Hard cap on terms in the trivial-zero series.
const MAX_SERIES_TERMS: u32 = 100_000;

/// One evaluation of a truncated explicit formula, term by term.
///
/// `formula_total = leading_term + constant_term + zero_sum + trivial_series`
/// and `residual = actual_sharp − formula_total`. Each field holds the
/// contribution exactly as it enters the total.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExplicitEvaluation {
    pub x: f64,
    /// σ_{1−1/β}(m)·x for ψ; zero for 𝔠.
    pub leading_term: f64,
    pub constant_term: f64,
    pub zero_sum: f64,
    pub trivial_series: f64,
    pub formula_total: f64,
    pub actual_sharp: f64,
    pub residual: f64,
    pub pairs: usize,
    /// Height midway between the last used ordinate and the next one.
    pub truncation_height: f64,
}

fn rho(gamma: f64) -> Complex64 {
    Complex64::new(0.5, gamma)
}

fn check_positive(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("x must be positive and finite, got {x}")));
    }
    Ok(())
}

/// Σ over the first `pairs` zeros of 2·Re[σ_{1−ρ/β}(n) x^ρ / (ζ′(ρ) ρ)].
pub fn zero_sum_c(x: f64, params: SumParams, table: &ZeroTable, pairs: usize) -> Result<f64> {
    check_positive(x)?;
    let ln_x = x.ln();
    let beta = params.beta as f64;
    let mut acc = NeumaierSum::new();
    for (gamma, dz) in table.take(pairs)? {
        let r = rho(gamma);
        let s = sigma(1.0 - r / beta, params).value;
        let term = s * (r * ln_x).exp() / (dz * r);
        acc.add(2.0 * term.re);
    }
    Ok(acc.value())
}

/// Σ_{k≥1} (−1)^{k−1} (2π/x)^{2k} σ_{1+2k/β}(n) / ((2k)! k ζ(2k+1)).
///
/// Summed per β-divisor d of n in log space, since σ_{1+2k/β}(n) =
/// Σ_d d^β·d^{2k}; each inner series stops once past its peak term and
/// the next term is below `tol`.
pub fn trivial_series_c(x: f64, params: SumParams, tol: f64) -> Result<f64> {
    check_positive(x)?;
    let mut acc = NeumaierSum::new();
    for d in beta_divisors(params) {
        let weight = (d as f64).powi(params.beta as i32);
        let ln_ratio = (2.0 * PI * d as f64 / x).ln();
        let mut k = 1u32;
        loop {
            let kf = k as f64;
            let magnitude = (2.0 * kf * ln_ratio - ln_gamma_real(2.0 * kf + 1.0)).exp() / (kf * zeta_odd(k)) * weight;
            if !magnitude.is_finite() {
                return Err(Error::Divergence(format!("trivial-zero series term {k} is not finite")));
            }
            let past_peak = (2.0 * PI * d as f64 / x).powi(2) < (2.0 * kf + 1.0) * (2.0 * kf + 2.0);
            if past_peak && magnitude < tol {
                break;
            }
            acc.add(if k % 2 == 1 { magnitude } else { -magnitude });
            k += 1;
            if k > MAX_SERIES_TERMS {
                return Err(Error::Divergence("trivial-zero series exceeded term limit".into()));
            }
        }
    }
    Ok(acc.value())
}

/// Truncated explicit formula for 𝔠♯^(β)(n, x):
/// −2σ_1(n) + zero sum + trivial-zero series.
pub fn explicit_c(x: f64, params: SumParams, table: &ZeroTable, pairs: usize, tol: f64) -> Result<ExplicitEvaluation> {
    let constant_term = -2.0 * sigma(Complex64::new(1.0, 0.0), params).value.re;
    let zero_sum = zero_sum_c(x, params, table, pairs)?;
    let trivial_series = trivial_series_c(x, params, tol)?;
    let actual_sharp = summatory_c(x, params)?.sharp;
    let formula_total = constant_term + zero_sum + trivial_series;
    Ok(ExplicitEvaluation {
        x,
        leading_term: 0.0,
        constant_term,
        zero_sum,
        trivial_series,
        formula_total,
        actual_sharp,
        residual: actual_sharp - formula_total,
        pairs,
        truncation_height: table.truncation_height(pairs)?,
    })
}

fn check_psi_domain(x: f64, m: u64) -> Result<()> {
    check_positive(x)?;
    if !(x > m as f64) {
        return Err(Error::Domain(format!("x must exceed m = {m}, got {x}")));
    }
    Ok(())
}

/// −Σ over the first `pairs` zeros of 2·Re[σ_{1−ρ/β}(m) x^ρ / ρ].
pub fn zero_sum_psi(x: f64, m: u64, beta: u32, table: &ZeroTable, pairs: usize) -> Result<f64> {
    check_psi_domain(x, m)?;
    let params = SumParams::new(m, beta)?;
    let ln_x = x.ln();
    let b = beta as f64;
    let mut acc = NeumaierSum::new();
    for (gamma, _) in table.take(pairs)? {
        let r = rho(gamma);
        let term = sigma(1.0 - r / b, params).value * (r * ln_x).exp() / r;
        acc.add(-2.0 * term.re);
    }
    Ok(acc.value())
}

/// −Σ_{k≥1} σ_{1+2k/β}(m) x^{−2k} / (2k), which equals ½·log(1 − x⁻²)
/// when m = β = 1.
pub fn trivial_series_psi(x: f64, m: u64, beta: u32, tol: f64) -> Result<f64> {
    check_psi_domain(x, m)?;
    let params = SumParams::new(m, beta)?;
    let mut acc = NeumaierSum::new();
    for d in beta_divisors(params) {
        let weight = (d as f64).powi(beta as i32);
        let r = (d as f64 / x).powi(2);
        let mut power = r;
        let mut k = 1u32;
        loop {
            let term = weight * power / (2.0 * k as f64);
            if term < tol {
                break;
            }
            acc.add(-term);
            power *= r;
            k += 1;
            if k > MAX_SERIES_TERMS {
                return Err(Error::Divergence("trivial-zero series exceeded term limit".into()));
            }
        }
    }
    Ok(acc.value())
}

/// Truncated explicit formula for ψ♯_m^(β)(x):
/// σ_{1−1/β}(m)·x − zero sum − σ_1(m) log 2π + Σ_k σ_{1+2k/β}(m) x^{−2k}/(2k).
///
/// The trivial-zero part enters with a plus sign (the negative of
/// [`trivial_series_psi`]), which is what makes the m = β = 1 case the
/// classical x − Σ x^ρ/ρ − log 2π − ½ log(1 − x⁻²).
pub fn explicit_psi(x: f64, m: u64, beta: u32, table: &ZeroTable, pairs: usize, tol: f64) -> Result<ExplicitEvaluation> {
    check_psi_domain(x, m)?;
    let params = SumParams::new(m, beta)?;
    let leading_term = sigma(Complex64::new(1.0 - 1.0 / beta as f64, 0.0), params).value.re * x;
    let constant_term = -sigma(Complex64::new(1.0, 0.0), params).value.re * (2.0 * PI).ln();
    let zero_sum = zero_sum_psi(x, m, beta, table, pairs)?;
    let trivial_series = -trivial_series_psi(x, m, beta, tol)?;
    let actual_sharp = summatory_psi(x, m, beta)?.sharp;
    let formula_total = leading_term + constant_term + zero_sum + trivial_series;
    Ok(ExplicitEvaluation {
        x,
        leading_term,
        constant_term,
        zero_sum,
        trivial_series,
        formula_total,
        actual_sharp,
        residual: actual_sharp - formula_total,
        pairs,
        truncation_height: table.truncation_height(pairs)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> &'static ZeroTable {
        ZeroTable::bundled()
    }

    fn p(n: u64, beta: u32) -> SumParams {
        SumParams::new(n, beta).unwrap()
    }

    #[test]
    fn empty_zero_sums() {
        assert_eq!(zero_sum_c(10.5, p(12, 1), table(), 0).unwrap(), 0.0);
        assert_eq!(zero_sum_psi(10.5, 1, 1, table(), 0).unwrap(), 0.0);
        assert!(zero_sum_c(10.5, p(12, 1), table(), 101).is_err());
    }

    #[test]
    fn first_psi_zero_term_is_classical() {
        let x = 30.5f64;
        let r = Complex64::new(0.5, table().ordinates()[0]);
        let expected = -2.0 * ((r * x.ln()).exp() / r).re;
        assert!((zero_sum_psi(x, 1, 1, table(), 1).unwrap() - expected).abs() < 1e-13);
    }

    #[test]
    fn trivial_c_leading_term_dominates_at_ten() {
        let full = trivial_series_c(10.0, p(1, 1), 1e-18).unwrap();
        let lead = (2.0 * PI / 10.0).powi(2) / (2.0 * zeta_odd(1));
        // The k = 2 term is (2π/10)²·ζ(3)/(24·ζ(5)) ≈ 1.9% of the first.
        let rel = (full - lead).abs() / full;
        assert!(rel > 0.015 && rel < 0.02, "{full} {lead}");
    }

    fn trivial_c_brute(x: f64, params: SumParams, terms: u32) -> f64 {
        let mut acc = NeumaierSum::new();
        let mut fact = 1.0f64;
        for k in 1..=terms {
            fact *= ((2 * k - 1) * (2 * k)) as f64;
            let s = sigma(Complex64::new(1.0 + 2.0 * k as f64 / params.beta as f64, 0.0), params).value.re;
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            acc.add(sign * (2.0 * PI / x).powi(2 * k as i32) / (fact * k as f64 * zeta_odd(k)) * s);
        }
        acc.value()
    }

    #[test]
    fn trivial_c_matches_fifty_term_brute_force() {
        let v = trivial_series_c(50.0, p(12, 1), 1e-18).unwrap();
        let b = trivial_c_brute(50.0, p(12, 1), 50);
        assert!((v - b).abs() < 1e-12, "{v} vs {b}");
        let v = trivial_series_c(20.0, p(24, 2), 1e-18).unwrap();
        let b = trivial_c_brute(20.0, p(24, 2), 50);
        assert!((v - b).abs() < 1e-12);
    }

    #[test]
    fn trivial_c_vanishes_at_infinity() {
        assert!(trivial_series_c(1e12, p(12, 1), 1e-30).unwrap().abs() < 1e-18);
    }

    #[test]
    fn trivial_psi_closed_form() {
        for &x in &[2.0f64, 10.0, 100.0] {
            let v = trivial_series_psi(x, 1, 1, 1e-20).unwrap();
            assert!((v - 0.5 * (-x.powi(-2)).ln_1p()).abs() < 1e-12);
        }
        assert!(trivial_series_psi(1e9, 1, 1, 1e-30).unwrap().abs() < 1e-17);
    }

    #[test]
    fn trivial_psi_matches_brute_force() {
        let x = 10.0f64;
        let params = p(4, 2);
        let brute: f64 = (1..=50)
            .map(|k| {
                -sigma(Complex64::new(1.0 + k as f64, 0.0), params).value.re * x.powi(-2 * k) / (2.0 * k as f64)
            })
            .sum();
        assert!((trivial_series_psi(x, 4, 2, 1e-20).unwrap() - brute).abs() < 1e-12);
    }

    #[test]
    fn psi_domain_requires_x_above_m() {
        assert!(explicit_psi(5.0, 6, 1, table(), 10, 1e-16).is_err());
        assert!(trivial_series_psi(6.0, 6, 1, 1e-16).is_err());
    }

    #[test]
    fn evaluation_fields_are_consistent() {
        let e = explicit_c(37.5, p(12, 1), table(), 25, 1e-16).unwrap();
        assert_eq!(e.formula_total, e.constant_term + e.zero_sum + e.trivial_series);
        assert_eq!(e.residual, e.actual_sharp - e.formula_total);
        assert_eq!(e.constant_term, -56.0);
        let e = explicit_psi(37.5, 6, 1, table(), 25, 1e-16).unwrap();
        assert_eq!(e.leading_term, 4.0 * 37.5);
        assert_eq!(
            e.formula_total,
            e.leading_term + e.constant_term + e.zero_sum + e.trivial_series
        );
    }

    #[test]
    fn classical_psi_at_fifty_and_a_half() {
        let e = explicit_psi(50.5, 1, 1, table(), 100, 1e-16).unwrap();
        assert!(e.residual.abs() < 0.5, "{e:?}");
    }

    #[test]
    fn leading_coefficient_for_m_six() {
        let e = explicit_psi(200.0, 6, 1, table(), 100, 1e-16).unwrap();
        assert!((e.actual_sharp / 200.0 - 4.0).abs() < 0.4);
    }
}
