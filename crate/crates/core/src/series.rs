//! Dirichlet series of c_q^(β)(n) and Λ_{1,m}^(β) against their closed
//! forms, and an empirical growth probe for 𝔠^(β)(n, x).

use crate::arith::{cohen_sum_table, sigma, von_mangoldt_table, SumParams};
use crate::error::{Error, Result};
use crate::sum::ComplexSum;
use crate::zeta::{reciprocal_zeta, zeta_eval, zeta_prime, EvalAccuracy, POLE_GUARD};
use num_complex::Complex64;

/// |ζ(s)| below which the target σ/ζ is refused.
pub const NEAR_ZERO_GUARD: f64 = 1e-12;

/// Partial sums of Σ c_q q^{−s} at a list of cutoffs, with the closed-form
/// limit and the distance to it.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesDiagnostic {
    pub s: Complex64,
    pub params: SumParams,
    pub cutoffs: Vec<u64>,
    pub partials: Vec<Complex64>,
    pub target: Complex64,
    pub residuals: Vec<f64>,
}

/// Running partial sums Σ_{q≤Q} c_q q^{−s} for Q = 1..=qmax (index Q−1).
pub fn dirichlet_prefix(s: Complex64, params: SumParams, qmax: u64) -> Vec<Complex64> {
    let c = cohen_sum_table(qmax as usize, params);
    let mut acc = ComplexSum::new();
    let mut out = Vec::with_capacity(qmax as usize);
    for (q, &cq) in c.iter().enumerate().skip(1) {
        if cq != 0 {
            acc.add((-s * (q as f64).ln()).exp() * cq as f64);
        }
        out.push(acc.value());
    }
    out
}

/// Σ_{q≤Q} c_q^(β)(n) q^{−s}, compensated, ascending q.
pub fn dirichlet_partial(s: Complex64, params: SumParams, q_max: u64) -> Result<Complex64> {
    if q_max == 0 {
        return Err(Error::Domain("cutoff Q must be at least 1".into()));
    }
    Ok(*dirichlet_prefix(s, params, q_max).last().expect("non-empty"))
}

/// σ_{1−s/β}(n) / ζ(s), the limit of the partial sums; zero at s = 1.
pub fn dirichlet_target(s: Complex64, params: SumParams, acc: &EvalAccuracy) -> Result<Complex64> {
    let sig = sigma(1.0 - s / params.beta as f64, params).value;
    if (s - 1.0).norm() < POLE_GUARD {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if (s - 1.0).norm() < 0.25 {
        return Ok(sig * reciprocal_zeta(s, acc)?);
    }
    let z = zeta_eval(s, acc)?;
    if z.norm() < NEAR_ZERO_GUARD {
        return Err(Error::NearZetaZero {
            s: format!("{s}"),
            magnitude: z.norm(),
        });
    }
    Ok(sig / z)
}

/// Partial sums at each cutoff (strictly ascending, ≥ 1) against the target.
pub fn convergence_sweep(s: Complex64, params: SumParams, cutoffs: &[u64], acc: &EvalAccuracy) -> Result<SeriesDiagnostic> {
    if cutoffs.is_empty() {
        return Err(Error::Domain("at least one cutoff is required".into()));
    }
    if cutoffs[0] == 0 || cutoffs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("cutoffs must be strictly ascending and positive".into()));
    }
    let target = dirichlet_target(s, params, acc)?;
    let prefix = dirichlet_prefix(s, params, *cutoffs.last().unwrap());
    let partials: Vec<Complex64> = cutoffs.iter().map(|&q| prefix[q as usize - 1]).collect();
    let residuals = partials.iter().map(|p| (p - target).norm()).collect();
    Ok(SeriesDiagnostic {
        s,
        params,
        cutoffs: cutoffs.to_vec(),
        partials,
        target,
        residuals,
    })
}

/// Root mean square of |values| over the inclusive Q-window [lo, hi] of a
/// prefix vector indexed by Q − 1.
pub fn windowed_rms(prefix: &[Complex64], lo: u64, hi: u64) -> Result<f64> {
    if lo == 0 || hi < lo || hi as usize > prefix.len() {
        return Err(Error::Domain(format!("window [{lo}, {hi}] does not fit {} values", prefix.len())));
    }
    let window = &prefix[lo as usize - 1..hi as usize];
    let mean_sq = window.iter().map(|v| v.norm_sqr()).sum::<f64>() / window.len() as f64;
    Ok(mean_sq.sqrt())
}

/// Partial sum Σ_{j≤Q} Λ_{1,m}^(β)(j) j^{−s} and the closed form
/// −σ_{1−s/β}(m) ζ′(s)/ζ(s), for Re s > 1.
pub fn mangoldt_series_check(
    s: Complex64,
    m: u64,
    beta: u32,
    q_max: u64,
    acc: &EvalAccuracy,
) -> Result<(Complex64, Complex64)> {
    if !(s.re > 1.0) {
        return Err(Error::Domain(format!("the series needs Re s > 1, got {s}")));
    }
    let params = SumParams::new(m, beta)?;
    let lam = von_mangoldt_table(q_max as usize, m, beta)?;
    let mut sum = ComplexSum::new();
    for (j, &l) in lam.iter().enumerate().skip(1) {
        if l != 0.0 {
            sum.add((-s * (j as f64).ln()).exp() * l);
        }
    }
    let target = -sigma(1.0 - s / beta as f64, params).value * zeta_prime(s, acc)? / zeta_eval(s, acc)?;
    Ok((sum.value(), target))
}

/// Outcome of the growth probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GrowthEstimate {
    /// Least-squares slope of log max|𝔠| against log x.
    Exponent(f64),
    /// The sequence vanishes identically over the fitted range.
    DegenerateTail,
}

/// Growth exponent of 𝔠^(β)(n, x) for x ≤ xmax (xmax ≥ 100).
pub fn growth_exponent(params: SumParams, xmax: u64) -> Result<GrowthEstimate> {
    if xmax < 100 {
        return Err(Error::Domain(format!("xmax must be at least 100, got {xmax}")));
    }
    let c = cohen_sum_table(xmax as usize, params);
    let mut running = 0i64;
    let values: Vec<f64> = c[1..]
        .iter()
        .map(|&v| {
            running += v;
            running as f64
        })
        .collect();
    growth_exponent_of(&values)
}

/// Growth exponent of a sequence a(1), a(2), ..., a(X) given as
/// `values[x − 1]`: running maxima of |a| at dyadic checkpoints x = 2^k
/// (and X itself), fitted by least squares on log–log scale over the
/// checkpoints with x ≥ √X.
pub fn growth_exponent_of(values: &[f64]) -> Result<GrowthEstimate> {
    let xmax = values.len();
    if xmax < 4 {
        return Err(Error::Domain("need at least four values".into()));
    }
    let lower = (xmax as f64).sqrt();
    if values[(lower.ceil() as usize).saturating_sub(1)..].iter().all(|v| *v == 0.0) {
        return Ok(GrowthEstimate::DegenerateTail);
    }
    let mut checkpoints: Vec<usize> = (0..usize::BITS)
        .map(|k| 1usize << k)
        .take_while(|&x| x <= xmax)
        .collect();
    if *checkpoints.last().unwrap() != xmax {
        checkpoints.push(xmax);
    }
    let mut running_max = 0.0f64;
    let mut next = 0;
    let mut points = Vec::new();
    for (i, v) in values.iter().enumerate() {
        running_max = running_max.max(v.abs());
        if i + 1 == checkpoints[next] {
            if (i + 1) as f64 >= lower && running_max > 0.0 {
                points.push((((i + 1) as f64).ln(), running_max.ln()));
            }
            next += 1;
            if next == checkpoints.len() {
                break;
            }
        }
    }
    if points.len() < 2 {
        return Ok(GrowthEstimate::DegenerateTail);
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(GrowthEstimate::Exponent(sxy / sxx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn p(n: u64, beta: u32) -> SumParams {
        SumParams::new(n, beta).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn first_partial_is_one() {
        assert_eq!(dirichlet_partial(c(0.7, 3.0), p(24, 2), 1).unwrap(), c(1.0, 0.0));
        assert!(dirichlet_partial(c(2.0, 0.0), p(1, 1), 0).is_err());
    }

    #[test]
    fn mobius_series_at_two() {
        let v = dirichlet_partial(c(2.0, 0.0), p(1, 1), 100_000).unwrap();
        assert!((v.re - 6.0 / (PI * PI)).abs() < 2e-5);
    }

    #[test]
    fn partial_agrees_with_prefix() {
        let s = c(1.0, 5.0);
        let prefix = dirichlet_prefix(s, p(24, 1), 300);
        assert_eq!(prefix[299], dirichlet_partial(s, p(24, 1), 300).unwrap());
    }

    #[test]
    fn targets() {
        let a = EvalAccuracy::default();
        assert_eq!(dirichlet_target(c(1.0, 0.0), p(24, 3), &a).unwrap(), c(0.0, 0.0));
        assert_eq!(dirichlet_target(c(1.0, 0.0), p(1, 1), &a).unwrap(), c(0.0, 0.0));
        let t = dirichlet_target(c(2.0, 0.0), p(24, 2), &a).unwrap();
        // σ_0^(2)(24) = #{1, 2} = 2
        assert!((t.re - 2.0 * 6.0 / (PI * PI)).abs() < 1e-13);
        let near = dirichlet_target(c(0.5, 14.134725141734694), p(1, 1), &a);
        assert!(matches!(near, Err(Error::NearZetaZero { .. })));
        let t = dirichlet_target(c(1.0 + 1e-6, 0.0), p(1, 1), &a).unwrap();
        assert!((t.re - 1e-6).abs() < 1e-11);
    }

    #[test]
    fn sweep_validates_cutoffs() {
        let a = EvalAccuracy::default();
        assert!(convergence_sweep(c(2.0, 0.0), p(1, 1), &[], &a).is_err());
        assert!(convergence_sweep(c(2.0, 0.0), p(1, 1), &[10, 10], &a).is_err());
        let d = convergence_sweep(c(2.0, 0.0), p(24, 2), &[10, 100, 1000], &a).unwrap();
        assert_eq!(d.partials.len(), 3);
        assert!(d.residuals[2] < d.residuals[0]);
    }

    #[test]
    fn mangoldt_series_small_cases() {
        let a = EvalAccuracy::default();
        let (partial, _) = mangoldt_series_check(c(2.0, 0.0), 1, 1, 1, &a).unwrap();
        assert_eq!(partial, c(0.0, 0.0));
        let (partial, target) = mangoldt_series_check(c(4.0, 0.0), 1, 1, 20_000, &a).unwrap();
        assert!((partial - target).norm() < 1e-9);
        assert!(mangoldt_series_check(c(1.0, 3.0), 1, 1, 100, &a).is_err());
    }

    #[test]
    fn growth_of_synthetic_power_law() {
        let seq: Vec<f64> = (1..=100_000).map(|x| (x as f64).powf(0.3) * if x % 2 == 0 { 1.0 } else { -1.0 }).collect();
        match growth_exponent_of(&seq).unwrap() {
            GrowthEstimate::Exponent(e) => assert!((e - 0.3).abs() < 1e-3, "{e}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn growth_flags_vanishing_tail() {
        let mut seq = vec![0.0; 1000];
        seq[3] = 5.0;
        assert_eq!(growth_exponent_of(&seq).unwrap(), GrowthEstimate::DegenerateTail);
        assert!(growth_exponent(p(1, 1), 99).is_err());
    }

    #[test]
    fn mertens_growth_below_one() {
        match growth_exponent(p(1, 1), 100_000).unwrap() {
            GrowthEstimate::Exponent(e) => assert!(e > 0.0 && e < 1.0, "{e}"),
            other => panic!("{other:?}"),
        }
    }
}
