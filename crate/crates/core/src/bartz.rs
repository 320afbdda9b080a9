//! The Bartz-type zero sum
//!
//! ϖ(z) = Σ_{γ>0} σ_{1−ρ/β}(n) e^{ρz} / ζ′(ρ),   Im z > 0,
//!
//! its contour decomposition 2πi·ϖ = ϖ₁ + ϖ₂ + ϖ₃, the functional equation
//! ϖ(z) + conj ϖ(z̄) = A(z), and the residues at z = log q.
//!
//! Throughout, f(s) = σ_{1−s/β}(n) e^{sz} / ζ(s):
//! - ϖ₁ integrates f down the line Re s = −½ from +i∞ to −½;
//! - ϖ₂ integrates f along the real segment [−½, 3/2];
//! - ϖ₃ = −e^{3z/2} Σ_q c_q / (q^{3/2} (z − log q)).
//!
//! The lower half-plane value ϖ(z̄) cannot be reached by the zero sum, which
//! diverges there. It is obtained from the decomposition by rotating the
//! vertical contour of ϖ₁ through the gamma factor of the functional
//! equation of ζ, which splits it into an entire power series in
//! u = 2π e^{−z} plus two rapidly decaying line integrals.

use crate::arith::{beta_divisors, cohen_sum, cohen_sum_table, sigma, SumParams};
use crate::config::TruncationConfig;
use crate::dd::{zeta_int_dd, CDd, Dd};
use crate::error::{Error, Result};
use crate::quad::{simpson, DEFAULT_QUAD_TOL};
use crate::special::ln_gamma;
use crate::sum::ComplexSum;
use crate::zeta::{reciprocal_zeta, zeta_eval, EvalAccuracy, ZeroTable};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Largest tail estimate accepted for the truncated vertical integral.
pub const TAIL_TOL: f64 = 1e-10;

/// Points closer than this to a pole log q of ϖ₃ are rejected.
pub const POLE_DISTANCE_GUARD: f64 = 1e-9;

/// Tilt (radians, measured from the upward vertical towards Re s < 0) of
/// the ray used to continue ϖ₁ across the real axis.
pub const CONTINUATION_TILT: f64 = 0.3;

/// Number of nodes on the circle used by [`residue_probe`].
pub const RESIDUE_NODES: usize = 32;

/// Series cap for the power series in u.
const MAX_POWER_TERMS: u32 = 2000;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// The zero sum, the three pieces of its decomposition, and the mismatch
/// 2πi·ϖ − (ϖ₁ + ϖ₂ + ϖ₃).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BartzEvaluation {
    pub z: Complex64,
    pub varpi_zero_sum: Complex64,
    pub varpi1: Complex64,
    pub varpi2: Complex64,
    pub varpi3: Complex64,
    /// Crude bound on the omitted q > Q part of ϖ₃.
    pub varpi3_tail_bound: f64,
    pub decomposition_residual: Complex64,
}

/// Truncated ϖ₃ and a bound on what the truncation left out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleSeries {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// Which closed form of the entire function A(z) to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AForm {
    /// −2 Σ_k (−1)^k (2π)^{2k} e^{−2kz} σ_{1+2k/β}(n) / ((2k)! ζ(2k+1)),
    /// the form obtained by carrying out the contour shift.
    Derived,
    /// +2 Σ_k (−1)^k (2π)^{2k} e^{−2kz} σ_{1+k/β}(n) / ((2k)! ζ(2k+1)),
    /// the form given in the statement of the functional equation.
    AsStated,
}

/// Both sides of ϖ(z) + conj ϖ(z̄) = A(z) at one point, for both A-forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalEquationCheck {
    pub z: Complex64,
    /// ϖ(z) from the zero sum.
    pub varpi: Complex64,
    /// conj ϖ(z̄) from the continued decomposition.
    pub varpi_conj_reflected: Complex64,
    pub a_derived: Complex64,
    pub a_as_stated: Complex64,
    /// ϖ(z) + conj ϖ(z̄) − A(z) with the derived A.
    pub residual_derived: Complex64,
    /// Same with the A of the statement.
    pub residual_as_stated: Complex64,
}

fn require_upper(z: Complex64) -> Result<()> {
    if !(z.im > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("z must lie in the upper half-plane, got {z}")));
    }
    Ok(())
}

/// f(s) = σ_{1−s/β}(n) e^{sz} / ζ(s).
fn integrand(s: Complex64, z: Complex64, params: SumParams, acc: &EvalAccuracy) -> Result<Complex64> {
    let sig = sigma(1.0 - s / params.beta as f64, params).value;
    Ok(sig * (s * z).exp() * reciprocal_zeta(s, acc)?)
}

/// Simpson over a closure that may fail; the first error is reported.
fn integrate<F>(f: F, a: f64, b: f64, step: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let failure = std::cell::RefCell::new(None);
    let value = simpson(
        |t| match f(t) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                Complex64::new(f64::NAN, f64::NAN)
            }
        },
        a,
        b,
        step,
        DEFAULT_QUAD_TOL,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    value
}

/// Σ over the first `count` zeros (γ > 0 only) of σ_{1−ρ/β}(n) e^{ρz}/ζ′(ρ).
pub fn varpi_zero_sum(z: Complex64, params: SumParams, table: &ZeroTable, count: usize) -> Result<Complex64> {
    require_upper(z)?;
    let beta = params.beta as f64;
    let mut acc = ComplexSum::new();
    for (gamma, dz) in table.take(count)? {
        let rho = Complex64::new(0.5, gamma);
        acc.add(sigma(1.0 - rho / beta, params).value * (rho * z).exp() / dz);
    }
    Ok(acc.value())
}

/// Height where the integrand of ϖ₁, bounded by n^{β+3/2} e^{−Re z/2}
/// e^{−t Im z}, has fallen to 1e−12·Im z.
pub fn suggested_t_cut(z: Complex64, params: SumParams) -> f64 {
    let y = z.im;
    let scale = (params.n as f64).ln() * (params.beta as f64 + 1.5) - 0.5 * z.re;
    let t = (scale - (y * 1e-12).ln()) / y;
    t.max(10.0)
}

/// ϖ₁(z) = ∫ f(s) ds from −½ + i∞ down to −½, truncated at height `t_cut`.
pub fn varpi1(z: Complex64, params: SumParams, t_cut: f64, step: f64) -> Result<Complex64> {
    require_upper(z)?;
    if !(t_cut > 0.0) {
        return Err(Error::Domain(format!("t_cut must be positive, got {t_cut}")));
    }
    let acc = EvalAccuracy::default();
    let f = |t: f64| integrand(Complex64::new(-0.5, t), z, params, &acc);
    let value = -I * integrate(f, 0.0, t_cut, step)?;
    // The integrand decays at least like e^{−t Im z}, so the omitted
    // tail is about |f(t_cut)| / Im z.
    let estimate = f(t_cut)?.norm() / z.im;
    if estimate > TAIL_TOL * value.norm().max(1.0) {
        return Err(Error::TailTooLarge {
            estimate,
            tolerance: TAIL_TOL,
        });
    }
    Ok(value)
}

/// ϖ₁ along the ray s = −½ + t e^{i(π/2 + tilt)}, t ≥ 0, which equals the
/// vertical integral for Im z > 0 and continues it analytically to any z.
/// The integrand decays faster than any exponential along the ray
/// because 1/ζ(s) does in the left half-plane.
pub fn varpi1_continued(z: Complex64, params: SumParams, tilt: f64, step: f64) -> Result<Complex64> {
    if !(tilt > 0.0 && tilt < PI / 2.0) {
        return Err(Error::Domain(format!("tilt must lie in (0, π/2), got {tilt}")));
    }
    let acc = EvalAccuracy::default();
    let dir = Complex64::from_polar(1.0, PI / 2.0 + tilt);
    let f = |t: f64| integrand(Complex64::new(-0.5, 0.0) + dir * t, z, params, &acc);
    // March outward until the integrand is negligible against its peak.
    let mut peak = 0.0f64;
    let mut prev = f64::INFINITY;
    let mut t_end = 0.0;
    loop {
        let m = f(t_end)?.norm();
        peak = peak.max(m);
        if t_end > 1.0 && m < prev && m < 1e-17 * peak.max(1.0) {
            break;
        }
        prev = m;
        t_end += 1.0;
        if t_end > 5000.0 {
            return Err(Error::TailTooLarge {
                estimate: m,
                tolerance: TAIL_TOL,
            });
        }
    }
    Ok(-dir * integrate(f, 0.0, t_end, step)?)
}

/// ϖ₂(z) = ∫_{−1/2}^{3/2} f(s) ds along the real axis; 1/ζ vanishes at
/// s = 1 so the path needs no indentation.
pub fn varpi2(z: Complex64, params: SumParams, step: f64) -> Result<Complex64> {
    let acc = EvalAccuracy::default();
    integrate(|s| integrand(Complex64::new(s, 0.0), z, params, &acc), -0.5, 1.5, step)
}

/// ϖ₃(z) = −e^{3z/2} Σ_{q≤Q} c_q / (q^{3/2} (z − log q)).
pub fn varpi3(z: Complex64, params: SumParams, q_cutoff: u64) -> Result<PoleSeries> {
    if q_cutoff == 0 {
        return Err(Error::Domain("Q must be at least 1".into()));
    }
    let c = cohen_sum_table(q_cutoff as usize, params);
    let mut acc = ComplexSum::new();
    for (q, &cq) in c.iter().enumerate().skip(1) {
        if cq == 0 {
            continue;
        }
        let lq = (q as f64).ln();
        let gap = z - lq;
        if gap.norm() < POLE_DISTANCE_GUARD {
            return Err(Error::PoleProximity {
                z: format!("{z}"),
                q: q as u64,
                distance: gap.norm(),
            });
        }
        acc.add(cq as f64 / ((q as f64).powf(1.5) * gap));
    }
    let front = (1.5 * z).exp();
    let sigma1 = sigma(Complex64::new(1.0, 0.0), params).value.re;
    let next_log = ((q_cutoff + 1) as f64).ln();
    let dist = if z.re < next_log {
        (next_log - z.re).hypot(z.im)
    } else {
        z.im.abs()
    };
    let tail_bound = 2.0 * sigma1 * front.norm() / ((q_cutoff as f64).sqrt() * dist);
    Ok(PoleSeries {
        value: -front * acc.value(),
        tail_bound,
    })
}

fn resolve_t_cut(z: Complex64, params: SumParams, cfg: &TruncationConfig) -> f64 {
    cfg.t_cut.unwrap_or_else(|| suggested_t_cut(z, params))
}

/// Zero sum and decomposition at one point of the upper half-plane.
pub fn decomposition(z: Complex64, params: SumParams, table: &ZeroTable, cfg: &TruncationConfig) -> Result<BartzEvaluation> {
    cfg.validate(table.len())?;
    let varpi_zero_sum = varpi_zero_sum(z, params, table, cfg.zero_pairs)?;
    let varpi1 = varpi1(z, params, resolve_t_cut(z, params, cfg), cfg.quad_step)?;
    let varpi2 = varpi2(z, params, cfg.quad_step)?;
    let v3 = varpi3(z, params, cfg.q_cutoff)?;
    Ok(BartzEvaluation {
        z,
        varpi_zero_sum,
        varpi1,
        varpi2,
        varpi3: v3.value,
        varpi3_tail_bound: v3.tail_bound,
        decomposition_residual: 2.0 * PI * I * varpi_zero_sum - (varpi1 + varpi2 + v3.value),
    })
}

/// Σ_{k≥1} (−1)^k w^k / ((2k)! ζ(2k+1)) in double-double.
fn alternating_even_series(w: CDd, kmax: u32) -> Result<CDd> {
    let mut power = CDd::new(Dd::ONE, Dd::ZERO);
    let mut total = CDd::ZERO;
    let wn = w.norm_f64();
    for k in 1..=kmax {
        let denom = Dd::from_f64(((2 * k - 1) * (2 * k)) as f64);
        power = (power * w).scale(denom.recip());
        let term = power.scale(zeta_int_dd(2 * k + 1).recip());
        total = if k % 2 == 1 { total - term } else { total + term };
        let kk = (2 * k) as f64;
        if kk * kk > 4.0 * wn && term.norm_f64() < 1e-24 {
            return Ok(total);
        }
    }
    Err(Error::Divergence(format!("power series in u did not settle within {kmax} terms")))
}

/// Σ_{k≥1} v^k / (k! ζ(k+1)) in double-double. Equals
/// Σ_q μ(q)/q (e^{v/q} − 1).
fn exp_zeta_series(v: CDd, kmax: u32) -> Result<CDd> {
    let mut power = CDd::new(Dd::ONE, Dd::ZERO);
    let mut total = CDd::ZERO;
    let vn = v.norm_f64();
    for k in 1..=kmax {
        power = (power * v).scale(Dd::from_f64(k as f64).recip());
        let term = power.scale(zeta_int_dd(k + 1).recip());
        total = total + term;
        if k as f64 > vn && term.norm_f64() < 1e-24 {
            return Ok(total);
        }
    }
    Err(Error::Divergence(format!("power series in u did not settle within {kmax} terms")))
}

fn u_of(z: Complex64) -> Complex64 {
    Complex64::from_polar(2.0 * PI * (-z.re).exp(), -z.im)
}

fn a_series_dd(u: Complex64, params: SumParams, kmax: u32, form: AForm) -> Result<CDd> {
    let u = CDd::from_c64(u);
    let mut total = CDd::ZERO;
    for d in beta_divisors(params) {
        let weight = Dd::from_f64((d as f64).powi(params.beta as i32));
        let dd = Dd::from_f64(d as f64);
        let (w, factor) = match form {
            AForm::Derived => {
                let du = u.scale(dd);
                (du * du, Dd::from_f64(-2.0))
            }
            AForm::AsStated => ((u * u).scale(dd), Dd::from_f64(2.0)),
        };
        total = total + alternating_even_series(w, kmax)?.scale(weight * factor);
    }
    Ok(total)
}

/// A(z) in the requested form, summed until the terms drop below 1e−24
/// (at most `kmax` terms per β-divisor). The series is entire in
/// u = 2π e^{−z}; its terms can be far larger than its value, so it is
/// accumulated in double-double.
pub fn a_series(z: Complex64, params: SumParams, kmax: u32, form: AForm) -> Result<Complex64> {
    Ok(a_series_dd(u_of(z), params, kmax, form)?.to_c64())
}

/// G(s) e^{s w} with G(s) = σ_{1−s/β}(n) Γ(s) (2π)^{−s} / ζ(1−s).
fn rotated_integrand(s: Complex64, w: Complex64, params: SumParams, acc: &EvalAccuracy) -> Result<Complex64> {
    let sig = sigma(1.0 - s / params.beta as f64, params).value;
    let log_part = ln_gamma(s) - s * (2.0 * PI).ln() + s * w;
    Ok(sig * log_part.exp() / zeta_eval(1.0 - s, acc)?)
}

/// The two line integrals left over after rotating ϖ₁'s contour of the
/// reflected function; they decay like e^{−(π ± Im z) t}.
fn rotated_line_integrals(z: Complex64, params: SumParams, step: f64) -> Result<(Complex64, Complex64)> {
    let acc = EvalAccuracy::default();
    let sig_bound = sigma(Complex64::new(1.0 + 0.5 / params.beta as f64, 0.0), params).value.re;
    let budget = 40.0 + sig_bound.ln() + 0.5 * z.re.abs();
    let cut_plus = budget / (PI + z.im) + 5.0;
    let cut_minus = budget / (PI - z.im) + 5.0;
    let w_plus = z + I * (PI / 2.0);
    let w_minus = z - I * (PI / 2.0);
    let l_plus = I * integrate(
        |t| rotated_integrand(Complex64::new(-0.5, t), w_plus, params, &acc),
        0.0,
        cut_plus,
        step,
    )?;
    let l_minus = -I * integrate(
        |t| rotated_integrand(Complex64::new(-0.5, -t), w_minus, params, &acc),
        0.0,
        cut_minus,
        step,
    )?;
    Ok((l_plus, l_minus))
}

/// Both sides of the functional equation at z with 0 < Im z < π.
///
/// conj ϖ(z̄) is evaluated as (L₊ + L₋ − ϖ₂ − ϖ₃)/(2πi) − Σ_d d^β F(i d u)
/// where F(v) = Σ_k v^k/(k! ζ(k+1)), u = 2π e^{−z}, and L± are the
/// rotated line integrals. F(i d u) is huge when Im z is small; it is
/// combined with A in double-double before the difference is rounded.
pub fn functional_equation_residual(
    z: Complex64,
    params: SumParams,
    table: &ZeroTable,
    cfg: &TruncationConfig,
) -> Result<FunctionalEquationCheck> {
    require_upper(z)?;
    if !(z.im < PI) {
        return Err(Error::Domain(format!("the reflected evaluation needs Im z < π, got {z}")));
    }
    cfg.validate(table.len())?;
    let varpi = varpi_zero_sum(z, params, table, cfg.zero_pairs)?;
    let (l_plus, l_minus) = rotated_line_integrals(z, params, cfg.quad_step)?;
    let v2 = varpi2(z, params, cfg.quad_step)?;
    let v3 = varpi3(z, params, cfg.q_cutoff)?.value;
    let smooth = (l_plus + l_minus - v2 - v3) / (2.0 * PI * I);

    let u = u_of(z);
    let ucd = CDd::from_c64(u);
    let mut big = CDd::ZERO;
    for d in beta_divisors(params) {
        let weight = Dd::from_f64((d as f64).powi(params.beta as i32));
        let v = CDd::new(Dd::ZERO, Dd::ONE) * ucd.scale(Dd::from_f64(d as f64));
        big = big + exp_zeta_series(v, MAX_POWER_TERMS)?.scale(weight);
    }
    let a_derived = a_series_dd(u, params, MAX_POWER_TERMS, AForm::Derived)?;
    let a_as_stated = a_series_dd(u, params, MAX_POWER_TERMS, AForm::AsStated)?;
    let minus_big = CDd::ZERO - big;
    let residual_derived = varpi + smooth + (minus_big - a_derived).to_c64();
    let residual_as_stated = varpi + smooth + (minus_big - a_as_stated).to_c64();
    Ok(FunctionalEquationCheck {
        z,
        varpi,
        varpi_conj_reflected: smooth + minus_big.to_c64(),
        a_derived: a_derived.to_c64(),
        a_as_stated: a_as_stated.to_c64(),
        residual_derived,
        residual_as_stated,
    })
}

/// ϖ(z) anywhere off the poles, as (ϖ₁ + ϖ₂ + ϖ₃)/(2πi) with ϖ₁ taken
/// along the tilted ray.
pub fn varpi_continued(z: Complex64, params: SumParams, cfg: &TruncationConfig) -> Result<Complex64> {
    let v1 = varpi1_continued(z, params, CONTINUATION_TILT, cfg.quad_step)?;
    let v2 = varpi2(z, params, cfg.quad_step)?;
    let v3 = varpi3(z, params, cfg.q_cutoff)?.value;
    Ok((v1 + v2 + v3) / (2.0 * PI * I))
}

/// Residue of ϖ at z = log q, estimated as the mean of (z − log q)·ϖ(z)
/// over equally spaced points on the circle |z − log q| = eps.
pub fn residue_probe(q: u64, params: SumParams, eps: f64, cfg: &TruncationConfig) -> Result<Complex64> {
    if q == 0 {
        return Err(Error::Domain("q must be at least 1".into()));
    }
    if cohen_sum(q, params) == 0 {
        return Err(Error::Domain(format!("c_{q}(n) = 0, so log {q} is not a pole")));
    }
    if !(eps > 1e-6 && eps < 1e-2) {
        return Err(Error::Domain(format!("eps must lie in (1e-6, 1e-2), got {eps}")));
    }
    let center = (q as f64).ln();
    let lo = (q as f64 * (-eps).exp()).floor().max(1.0) as u64;
    let hi = (q as f64 * eps.exp()).ceil() as u64;
    for other in lo..=hi {
        if other != q && ((other as f64).ln() - center).abs() <= eps && cohen_sum(other, params) != 0 {
            return Err(Error::PoleProximity {
                z: format!("circle of radius {eps} about log {q}"),
                q: other,
                distance: ((other as f64).ln() - center).abs(),
            });
        }
    }
    let mut acc = ComplexSum::new();
    for j in 0..RESIDUE_NODES {
        let theta = 2.0 * PI * (j as f64 + 0.5) / RESIDUE_NODES as f64;
        let offset = Complex64::from_polar(eps, theta);
        acc.add(offset * varpi_continued(center + offset, params, cfg)?);
    }
    Ok(acc.value() / RESIDUE_NODES as f64)
}
