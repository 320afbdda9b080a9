//! Riemann zeta function on the complex plane by Euler–Maclaurin summation,
//! its derivative, odd integer values, and a table of nontrivial zeros.

use crate::dd::zeta_int_dd;
use crate::error::{Error, Result};
use crate::special::{digamma, ln_gamma, ln_sin};
use crate::sum::ComplexSum;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::path::Path;
use std::sync::OnceLock;

/// B_2, B_4, ..., B_60.
const BERNOULLI: [f64; 30] = [
    0.16666666666666666,
    -0.03333333333333333,
    0.023809523809523808,
    -0.03333333333333333,
    0.07575757575757576,
    -0.2531135531135531,
    1.1666666666666667,
    -7.092156862745098,
    54.971177944862156,
    -529.1242424242424,
    6192.123188405797,
    -86580.25311355312,
    1425517.1666666667,
    -27298231.067816094,
    601580873.9006424,
    -15116315767.092157,
    429614643061.1667,
    -13711655205088.332,
    488332318973593.2,
    -1.9296579341940068e16,
    8.416930475736826e17,
    -4.0338071854059454e19,
    2.1150748638081993e21,
    -1.2086626522296526e23,
    7.500866746076964e24,
    -5.038778101481069e26,
    3.6528776484818122e28,
    -2.849876930245088e30,
    2.3865427499683627e32,
    -2.1399949257225335e34,
];

/// Distance from s = 1 below which evaluation is refused.
pub const POLE_GUARD: f64 = 1e-12;

/// Re s below which ζ is evaluated through the functional equation.
const REFLECTION_EDGE: f64 = -0.5;

/// Default |ζ(½ + iγ)| bound for accepting a tabulated zero.
pub const ZERO_VERIFY_TOL: f64 = 1e-8;

/// Newton refinement stops once |ζ(½ + iγ)| drops below this.
pub const ZERO_REFINE_TOL: f64 = 1e-10;

const REFINE_MAX_ITER: usize = 30;
const REFINE_MAX_DRIFT: f64 = 0.5;
const MAX_DIRECT_TERMS: usize = 1 << 16;

/// Euler–Maclaurin effort and accuracy settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalAccuracy {
    /// Minimum number of directly summed terms N.
    pub em_terms: usize,
    /// Number of Bernoulli correction terms.
    pub bernoulli_terms: usize,
    /// Target absolute error; N is doubled until the remainder estimate
    /// falls below it.
    pub target_abs_err: f64,
}

impl Default for EvalAccuracy {
    fn default() -> Self {
        EvalAccuracy {
            em_terms: 20,
            bernoulli_terms: 12,
            target_abs_err: 1e-12,
        }
    }
}

impl EvalAccuracy {
    pub fn validate(&self) -> Result<()> {
        if self.em_terms < 10 {
            return Err(Error::Domain(format!("em_terms must be >= 10, got {}", self.em_terms)));
        }
        if !(2..=30).contains(&self.bernoulli_terms) {
            return Err(Error::Domain(format!(
                "bernoulli_terms must lie in [2, 30], got {}",
                self.bernoulli_terms
            )));
        }
        if !(self.target_abs_err > 0.0) {
            return Err(Error::Domain("target_abs_err must be positive".into()));
        }
        Ok(())
    }

    fn start_terms(&self, s: Complex64) -> usize {
        self.em_terms.max((2.0 * s.im.abs()).ceil() as usize)
    }
}

struct EmParts {
    /// Σ_{n<N} n^{-s} + N^{-s}/2 + corrections: everything but N^{1-s}/(s-1).
    regular: Complex64,
    /// N^{1-s}
    n_pow: Complex64,
    /// Derivatives with respect to s of `regular` and `n_pow`.
    d_regular: Complex64,
    d_n_pow: Complex64,
    remainder: f64,
}

fn em_parts(s: Complex64, n: usize, bernoulli_terms: usize, with_derivative: bool) -> EmParts {
    let mut direct = ComplexSum::new();
    let mut d_direct = ComplexSum::new();
    for k in 1..n {
        let lk = (k as f64).ln();
        let term = (-s * lk).exp();
        direct.add(term);
        if with_derivative {
            d_direct.add(-term * lk);
        }
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let n_neg_s = (-s * ln_n).exp();
    let n_pow = n_neg_s * nf;

    let mut corr = ComplexSum::new();
    let mut d_corr = ComplexSum::new();
    // poch = s(s+1)...(s+2j-2), tracked with its derivative.
    let mut poch = s;
    let mut d_poch = Complex64::new(1.0, 0.0);
    let mut factorial = 2.0;
    let mut n_factor = n_neg_s / nf;
    let mut last = 0.0;
    for j in 1..=bernoulli_terms {
        if j > 1 {
            let a = s + (2 * j - 3) as f64;
            let b = s + (2 * j - 2) as f64;
            d_poch = d_poch * a * b + poch * (a + b);
            poch = poch * a * b;
            factorial *= ((2 * j - 1) * (2 * j)) as f64;
            n_factor /= nf * nf;
        }
        let coeff = BERNOULLI[j - 1] / factorial;
        let term = poch * n_factor * coeff;
        corr.add(term);
        if with_derivative {
            d_corr.add((d_poch - poch * ln_n) * n_factor * coeff);
        }
        last = term.norm();
    }
    // The remainder after M terms is bounded by the next term times
    // |s + 2M + 1| / (Re s + 2M + 1); the ratio of consecutive terms is
    // roughly |s + 2M|² / (2πN)².
    let m = bernoulli_terms as f64;
    let ratio = (s + 2.0 * m).norm() / (2.0 * PI * nf);
    let growth = (s + 2.0 * m + 1.0).norm() / (s.re + 2.0 * m + 1.0).max(1.0);
    let remainder = last * ratio * ratio * growth;

    EmParts {
        regular: direct.value() + n_neg_s * 0.5 + corr.value(),
        n_pow,
        d_regular: d_direct.value() - n_neg_s * (0.5 * ln_n) + d_corr.value(),
        d_n_pow: -n_pow * ln_n,
        remainder,
    }
}

/// Euler–Maclaurin evaluation with N doubled until the remainder estimate
/// meets the target.
fn em_adaptive(s: Complex64, acc: &EvalAccuracy, with_derivative: bool) -> EmParts {
    let mut n = acc.start_terms(s);
    loop {
        let parts = em_parts(s, n, acc.bernoulli_terms, with_derivative);
        if parts.remainder <= acc.target_abs_err || n >= MAX_DIRECT_TERMS {
            return parts;
        }
        n *= 2;
    }
}

fn check_pole(s: Complex64) -> Result<()> {
    let distance = (s - 1.0).norm();
    if distance < POLE_GUARD {
        return Err(Error::PoleAtOne { distance });
    }
    Ok(())
}

/// ln χ(s) where ζ(s) = χ(s) ζ(1 − s), χ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s).
fn ln_chi(s: Complex64) -> Complex64 {
    s * std::f64::consts::LN_2 + (s - 1.0) * PI.ln() + ln_sin(s * (PI / 2.0)) + ln_gamma(1.0 - s)
}

/// ln of 2^s π^{s−1} (π/2) cos(πs/2) Γ(1−s), i.e. χ(s)·(π/2)cot(πs/2) in a
/// form that stays finite at the zeros of sin(πs/2).
fn ln_chi_cot(s: Complex64) -> Complex64 {
    s * std::f64::consts::LN_2
        + (s - 1.0) * PI.ln()
        + (PI / 2.0).ln()
        + ln_sin(s * (PI / 2.0) + PI / 2.0)
        + ln_gamma(1.0 - s)
}

/// ζ(s) for s ≠ 1.
pub fn zeta_eval(s: Complex64, acc: &EvalAccuracy) -> Result<Complex64> {
    acc.validate()?;
    check_pole(s)?;
    if s.re < REFLECTION_EDGE {
        let mirrored = zeta_eval(1.0 - s, acc)?;
        return Ok(ln_chi(s).exp() * mirrored);
    }
    Ok(zeta_em(s, acc))
}

/// ζ(s) by Euler–Maclaurin without reflection; valid for any s ≠ 1 but
/// costly far left of the critical strip.
pub fn zeta_em(s: Complex64, acc: &EvalAccuracy) -> Complex64 {
    let p = em_adaptive(s, acc, false);
    p.regular + p.n_pow / (s - 1.0)
}

/// ζ′(s) for s ≠ 1, by term-wise differentiated Euler–Maclaurin
/// (reflected for Re s < −½).
pub fn zeta_prime(s: Complex64, acc: &EvalAccuracy) -> Result<Complex64> {
    acc.validate()?;
    check_pole(s)?;
    if s.re < REFLECTION_EDGE {
        let w = 1.0 - s;
        let z_w = zeta_eval(w, acc)?;
        let dz_w = zeta_prime(w, acc)?;
        let chi = ln_chi(s).exp();
        let log_part = Complex64::new(std::f64::consts::LN_2 + PI.ln(), 0.0) - digamma(w);
        // d/ds [χ(s) ζ(1−s)] = χ′(s) ζ(1−s) − χ(s) ζ′(1−s)
        let chi_prime = chi * log_part + ln_chi_cot(s).exp();
        return Ok(chi_prime * z_w - chi * dz_w);
    }
    let p = em_adaptive(s, acc, true);
    let sm1 = s - 1.0;
    Ok(p.d_regular + p.d_n_pow / sm1 - p.n_pow / (sm1 * sm1))
}

/// 1/ζ(s), including the removable point s = 1 where it vanishes.
pub fn reciprocal_zeta(s: Complex64, acc: &EvalAccuracy) -> Result<Complex64> {
    acc.validate()?;
    let sm1 = s - 1.0;
    if sm1.norm() < 0.25 {
        // (s−1)ζ(s) = (s−1)·regular + N^{1−s} is smooth through s = 1.
        let p = em_adaptive(s, acc, false);
        return Ok(sm1 / (sm1 * p.regular + p.n_pow));
    }
    Ok(zeta_eval(s, acc)?.inv())
}

/// ζ(2k+1) for k ≥ 1: direct sum over n < 32 plus an Euler–Maclaurin
/// tail, accurate to double-double and rounded to `f64`.
pub fn zeta_odd(k: u32) -> f64 {
    assert!(k >= 1, "zeta_odd needs k >= 1");
    zeta_int_dd(2 * k + 1).to_f64()
}

/// Riemann–Siegel theta θ(t) = arg Γ(¼ + it/2) − (t/2) log π, on the
/// continuous branch.
pub fn riemann_siegel_theta(t: f64) -> f64 {
    let z = Complex64::new(0.25, 0.5 * t);
    // Shift by one so the continuous log-gamma branch is used.
    let lg = ln_gamma(z + 1.0) - z.ln();
    lg.im - 0.5 * t * PI.ln()
}

/// Hardy's Z(t) = e^{iθ(t)} ζ(½ + it), real for real t.
pub fn hardy_z(t: f64, acc: &EvalAccuracy) -> Result<f64> {
    let zeta = zeta_eval(Complex64::new(0.5, t), acc)?;
    let rot = Complex64::from_polar(1.0, riemann_siegel_theta(t));
    Ok((rot * zeta).re)
}

/// Newton iteration on t ↦ ζ(½ + it) from `gamma0`.
pub fn refine_zero(gamma0: f64, acc: &EvalAccuracy) -> Result<f64> {
    let fail = |reason: String| Error::NonConvergence { seed: gamma0, reason };
    if !(gamma0 > 0.0) || !gamma0.is_finite() {
        return Err(Error::Domain(format!("ordinate must be positive and finite, got {gamma0}")));
    }
    let mut t = gamma0;
    for _ in 0..REFINE_MAX_ITER {
        let s = Complex64::new(0.5, t);
        let z = zeta_eval(s, acc)?;
        if z.norm() < ZERO_REFINE_TOL {
            return Ok(t);
        }
        let dz = zeta_prime(s, acc)?;
        if dz.norm() == 0.0 {
            return Err(fail("vanishing derivative".into()));
        }
        // d/dt ζ(½ + it) = i ζ′
        let step = (z / (Complex64::new(0.0, 1.0) * dz)).re;
        t -= step;
        if !t.is_finite() || (t - gamma0).abs() > REFINE_MAX_DRIFT {
            return Err(fail(format!("iterate wandered to {t}")));
        }
    }
    let residual = zeta_eval(Complex64::new(0.5, t), acc)?.norm();
    if residual < ZERO_REFINE_TOL {
        Ok(t)
    } else {
        Err(fail(format!("|zeta| = {residual:e} after {REFINE_MAX_ITER} iterations")))
    }
}

/// Checks |ζ(½ + iγ)| < tol and a sign change of Hardy's Z across γ;
/// returns ζ′(½ + iγ).
pub fn verify_zero(gamma: f64, tol: f64, acc: &EvalAccuracy) -> Result<Complex64> {
    let s = Complex64::new(0.5, gamma);
    let magnitude = zeta_eval(s, acc)?.norm();
    if !(magnitude < tol) {
        return Err(Error::Verification {
            gamma,
            reason: format!("|zeta| = {magnitude:e} is not below {tol:e}"),
        });
    }
    let delta = 1e-3;
    let left = hardy_z(gamma - delta, acc)?;
    let right = hardy_z(gamma + delta, acc)?;
    if left.signum() == right.signum() {
        return Err(Error::Verification {
            gamma,
            reason: format!("Z does not change sign ({left:e}, {right:e})"),
        });
    }
    let derivative = zeta_prime(s, acc)?;
    if derivative.norm() == 0.0 {
        return Err(Error::Verification {
            gamma,
            reason: "zeta' vanishes (multiple zero)".into(),
        });
    }
    Ok(derivative)
}

/// Ascending positive ordinates of nontrivial zeros with ζ′ at each.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
    zeta_prime_at: Vec<Complex64>,
    source: String,
}

const BUNDLED_ZEROS: &str = include_str!("../data/zeros100.txt");

impl ZeroTable {
    /// Refines and verifies each ordinate, then caches ζ′ at each zero.
    pub fn from_ordinates(ordinates: &[f64], source: impl Into<String>, acc: &EvalAccuracy) -> Result<Self> {
        check_ordinates(ordinates)?;
        let mut refined = Vec::with_capacity(ordinates.len());
        let mut derivs = Vec::with_capacity(ordinates.len());
        for &gamma in ordinates {
            let g = refine_zero(gamma, acc).map_err(|e| match e {
                Error::NonConvergence { reason, .. } => Error::Verification { gamma, reason },
                other => other,
            })?;
            derivs.push(verify_zero(g, ZERO_VERIFY_TOL, acc)?);
            refined.push(g);
        }
        check_ordinates(&refined)?;
        Ok(ZeroTable {
            ordinates: refined,
            zeta_prime_at: derivs,
            source: source.into(),
        })
    }

    /// Parses table text (see [`parse_ordinates`]) and builds a verified table.
    pub fn from_text(text: &str, source: impl Into<String>, acc: &EvalAccuracy) -> Result<Self> {
        Self::from_ordinates(&parse_ordinates(text)?, source, acc)
    }

    /// The first 100 zeros shipped with the crate, verified once per process.
    pub fn bundled() -> &'static ZeroTable {
        static TABLE: OnceLock<ZeroTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            ZeroTable::from_text(BUNDLED_ZEROS, "bundled", &EvalAccuracy::default())
                .expect("bundled zero table failed verification")
        })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn zeta_prime_at(&self) -> &[Complex64] {
        &self.zeta_prime_at
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// The first `count` (γ, ζ′(½+iγ)) pairs, or an error if the table is
    /// shorter.
    pub fn take(&self, count: usize) -> Result<impl Iterator<Item = (f64, Complex64)> + '_> {
        if count > self.len() {
            return Err(Error::TableTooSmall {
                requested: count,
                available: self.len(),
            });
        }
        Ok(self
            .ordinates
            .iter()
            .copied()
            .zip(self.zeta_prime_at.iter().copied())
            .take(count))
    }

    /// Height T implied by truncating after `pairs` zeros: midway between
    /// γ_pairs and the next ordinate (or half the previous gap above the
    /// last one).
    pub fn truncation_height(&self, pairs: usize) -> Result<f64> {
        let g = &self.ordinates;
        if pairs > g.len() {
            return Err(Error::TableTooSmall {
                requested: pairs,
                available: g.len(),
            });
        }
        Ok(match pairs {
            0 => 0.5 * g[0],
            p if p < g.len() => 0.5 * (g[p - 1] + g[p]),
            p if p >= 2 => g[p - 1] + 0.5 * (g[p - 1] - g[p - 2]),
            _ => g[0] * 1.5,
        })
    }

    /// Table text that parses back to exactly these ordinates.
    pub fn dump(&self) -> String {
        format_ordinates(&self.ordinates)
    }
}

fn check_ordinates(ordinates: &[f64]) -> Result<()> {
    if ordinates.is_empty() {
        return Err(Error::EmptyTable);
    }
    for (i, &g) in ordinates.iter().enumerate() {
        if !(g > 0.0) || !g.is_finite() {
            return Err(Error::Domain(format!("ordinate {i} is not a positive finite number: {g}")));
        }
        if i > 0 && !(g > ordinates[i - 1]) {
            return Err(Error::NotAscending {
                index: i,
                previous: ordinates[i - 1],
                current: g,
            });
        }
    }
    Ok(())
}

/// Parses one ordinate per line; blank lines and lines starting with '#'
/// are skipped. Checks the list is non-empty and strictly ascending.
pub fn parse_ordinates(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let value: f64 = trimmed.parse().map_err(|_| Error::Parse {
            line: idx + 1,
            message: format!("not a decimal number: {trimmed:?}"),
        })?;
        out.push(value);
    }
    check_ordinates(&out)?;
    Ok(out)
}

/// One ordinate per line in shortest round-trip decimal form.
pub fn format_ordinates(ordinates: &[f64]) -> String {
    let mut s = String::new();
    for g in ordinates {
        s.push_str(&format!("{g:?}\n"));
    }
    s
}

/// Reads, refines and verifies a zero table from a file.
pub fn load_zero_table(path: impl AsRef<Path>, acc: &EvalAccuracy) -> Result<ZeroTable> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    ZeroTable::from_text(&text, path.display().to_string(), acc)
}
