//! Möbius function, Cohen's generalized Ramanujan sums c_q^(β)(n), the
//! divisor function σ_z^(β)(n), the generalized von Mangoldt function and
//! their summatory functions.

use crate::error::{Error, Result};
use crate::sum::{ComplexSum, NeumaierSum};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Largest q^β the brute-force exponential sum will enumerate by default.
pub const DIRECT_ENUMERATION_BOUND: u64 = 1_000_000;

/// The pair (n, β) that parameterizes every arithmetic function here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SumParams {
    pub n: u64,
    pub beta: u32,
}

impl SumParams {
    pub fn new(n: u64, beta: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        if beta == 0 {
            return Err(Error::Domain("beta must be at least 1".into()));
        }
        Ok(SumParams { n, beta })
    }
}

/// σ_z^(β)(n) together with the exponent and parameters it was computed for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivisorPowerSum {
    pub value: Complex64,
    pub z: Complex64,
    pub params: SumParams,
}

/// A summatory function at x: the plain sum and the half-jump adjusted one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummatoryValue {
    pub x: f64,
    pub raw: f64,
    pub sharp: f64,
}

/// Distinct prime factors of `q`, ascending.
pub fn prime_factors(mut q: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            primes.push(p);
            while q % p == 0 {
                q /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if q > 1 {
        primes.push(q);
    }
    primes
}

/// μ(q) by trial division.
///
/// # Panics
/// If `q == 0`.
pub fn mobius(mut q: u64) -> i8 {
    assert!(q >= 1, "mobius is defined on positive integers");
    let mut sign = 1i8;
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            q /= p;
            if q % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if q > 1 {
        sign = -sign;
    }
    sign
}

/// μ(0..=limit) by a linear sieve; entry 0 is 0.
pub fn mobius_table(limit: usize) -> Vec<i8> {
    let mut mu = vec![1i8; limit + 1];
    if limit == 0 {
        mu[0] = 0;
        return mu;
    }
    mu[0] = 0;
    let mut composite = vec![false; limit + 1];
    let mut primes: Vec<usize> = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > limit {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu
}

/// All d ≥ 1 with d^β | n, ascending.
pub fn beta_divisors(params: SumParams) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d: u64 = 1;
    loop {
        let Some(power) = d.checked_pow(params.beta) else { break };
        if power > params.n {
            break;
        }
        if params.n % power == 0 {
            out.push(d);
        }
        d += 1;
    }
    out
}

fn beta_power(d: u64, beta: u32) -> i64 {
    d.pow(beta) as i64
}

/// c_q^(β)(n) = Σ_{d | q, d^β | n} μ(q/d) d^β, exactly.
pub fn cohen_sum(q: u64, params: SumParams) -> i64 {
    assert!(q >= 1, "cohen_sum needs q >= 1");
    beta_divisors(params)
        .into_iter()
        .filter(|d| q % d == 0)
        .map(|d| mobius(q / d) as i64 * beta_power(d, params.beta))
        .sum()
}

/// c_q^(β)(n) for every q in 0..=qmax (entry 0 is 0), by sieving over the
/// β-divisors of n.
pub fn cohen_sum_table(qmax: usize, params: SumParams) -> Vec<i64> {
    let mu = mobius_table(qmax);
    let mut c = vec![0i64; qmax + 1];
    for d in beta_divisors(params) {
        let d = d as usize;
        if d > qmax {
            break;
        }
        let w = beta_power(d as u64, params.beta);
        for (k, q) in (d..=qmax).step_by(d).enumerate() {
            c[q] += mu[k + 1] as i64 * w;
        }
    }
    c
}

/// Brute-force c_q^(β)(n) as the exponential sum over admissible
/// h ∈ [0, q^β), using the default enumeration bound.
pub fn cohen_sum_direct(q: u64, params: SumParams) -> Result<Complex64> {
    cohen_sum_direct_bounded(q, params, DIRECT_ENUMERATION_BOUND)
}

/// As [`cohen_sum_direct`] with an explicit bound on q^β.
///
/// h is admissible when no prime p | q has p^β | h. For q > 1 this
/// excludes h = 0; for q = 1 the only term is h = 0.
pub fn cohen_sum_direct_bounded(q: u64, params: SumParams, bound: u64) -> Result<Complex64> {
    if q == 0 {
        return Err(Error::Domain("q must be at least 1".into()));
    }
    let modulus = (q as u128)
        .checked_pow(params.beta)
        .filter(|m| *m <= bound as u128)
        .ok_or(Error::OracleOutOfRange {
            modulus: (q as u128).saturating_pow(params.beta),
            bound,
        })?;
    let killers: Vec<u128> = prime_factors(q)
        .into_iter()
        .map(|p| (p as u128).pow(params.beta))
        .collect();
    let n_mod = params.n as u128 % modulus;
    let scale = 2.0 * PI / modulus as f64;
    let mut acc = ComplexSum::new();
    for h in 0..modulus {
        if killers.iter().any(|k| h % k == 0) {
            continue;
        }
        let r = (n_mod * h) % modulus;
        let (s, c) = (scale * r as f64).sin_cos();
        acc.add(Complex64::new(c, s));
    }
    Ok(acc.value())
}

/// σ_z^(β)(n) = Σ_{d^β | n} d^{βz}.
pub fn sigma(z: Complex64, params: SumParams) -> DivisorPowerSum {
    let value = if z.im == 0.0 && z.re >= 0.0 && z.re.fract() == 0.0 && z.re <= 64.0 {
        match sigma_int(z.re as u32, params) {
            Some(v) => Complex64::new(v as f64, 0.0),
            None => sigma_float(z, params),
        }
    } else {
        sigma_float(z, params)
    };
    DivisorPowerSum { value, z, params }
}

/// σ_k^(β)(n) for a nonnegative integer exponent in exact arithmetic, or
/// `None` on overflow.
pub fn sigma_int(k: u32, params: SumParams) -> Option<u128> {
    let exponent = params.beta.checked_mul(k)?;
    beta_divisors(params)
        .into_iter()
        .try_fold(0u128, |acc, d| acc.checked_add((d as u128).checked_pow(exponent)?))
}

fn sigma_float(z: Complex64, params: SumParams) -> Complex64 {
    let scale = z * params.beta as f64;
    beta_divisors(params)
        .into_iter()
        .map(|d| (scale * (d as f64).ln()).exp())
        .collect::<ComplexSum>()
        .value()
}

/// Λ_{1,m}^(β)(j) = Σ_{dδ = j} c_d^(β)(m) log δ, summed over ascending d.
pub fn von_mangoldt(j: u64, m: u64, beta: u32) -> Result<f64> {
    if j == 0 {
        return Err(Error::Domain("j must be at least 1".into()));
    }
    let params = SumParams::new(m, beta)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= j {
        if j % d == 0 {
            small.push(d);
            if d * d != j {
                large.push(j / d);
            }
        }
        d += 1;
    }
    let mut acc = NeumaierSum::new();
    for d in small.into_iter().chain(large.into_iter().rev()) {
        let c = cohen_sum(d, params);
        if c != 0 {
            acc.add(c as f64 * ((j / d) as f64).ln());
        }
    }
    Ok(acc.value())
}

/// Λ_{1,m}^(β)(j) for every j in 0..=jmax (entry 0 is 0). Each entry is
/// accumulated in the same order as [`von_mangoldt`], so values agree bit
/// for bit.
pub fn von_mangoldt_table(jmax: usize, m: u64, beta: u32) -> Result<Vec<f64>> {
    let params = SumParams::new(m, beta)?;
    let c = cohen_sum_table(jmax, params);
    let mut acc = vec![NeumaierSum::new(); jmax + 1];
    for d in 1..=jmax {
        if c[d] == 0 {
            continue;
        }
        let cd = c[d] as f64;
        for (k, j) in (d..=jmax).step_by(d).enumerate() {
            acc[j].add(cd * ((k + 1) as f64).ln());
        }
    }
    Ok(acc.iter().map(NeumaierSum::value).collect())
}

fn check_x(x: f64) -> Result<()> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::Domain(format!("summation limit must be a finite x >= 1, got {x}")));
    }
    Ok(())
}

fn is_integer(x: f64) -> bool {
    x == x.round()
}

/// 𝔠^(β)(n, x) = Σ_{q ≤ x} c_q^(β)(n) and its half-jump variant.
pub fn summatory_c(x: f64, params: SumParams) -> Result<SummatoryValue> {
    check_x(x)?;
    let top = x.floor() as u64;
    let raw: i64 = (1..=top).map(|q| cohen_sum(q, params)).sum();
    let sharp = if is_integer(x) {
        raw as f64 - 0.5 * cohen_sum(top, params) as f64
    } else {
        raw as f64
    };
    Ok(SummatoryValue {
        x,
        raw: raw as f64,
        sharp,
    })
}

/// ψ_m^(β)(x) = Σ_{j ≤ x} Λ_{1,m}^(β)(j) and its half-jump variant.
pub fn summatory_psi(x: f64, m: u64, beta: u32) -> Result<SummatoryValue> {
    check_x(x)?;
    let top = x.floor() as usize;
    let table = von_mangoldt_table(top, m, beta)?;
    let raw = table[1..].iter().copied().collect::<NeumaierSum>().value();
    let sharp = if is_integer(x) { raw - 0.5 * table[top] } else { raw };
    Ok(SummatoryValue { x, raw, sharp })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64, beta: u32) -> SumParams {
        SumParams::new(n, beta).unwrap()
    }

    #[test]
    fn params_reject_zero() {
        assert!(SumParams::new(0, 1).is_err());
        assert!(SumParams::new(1, 0).is_err());
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(97), -1);
    }

    #[test]
    fn mobius_table_matches_pointwise() {
        let t = mobius_table(2000);
        for q in 1..=2000u64 {
            assert_eq!(t[q as usize], mobius(q), "q={q}");
        }
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(cohen_sum_direct(1, p(7, 3)).unwrap(), Complex64::new(1.0, 0.0));
        let v = cohen_sum_direct(2, p(1, 1)).unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        let v = cohen_sum_direct(4, p(16, 2)).unwrap();
        assert!((v - Complex64::new(12.0, 0.0)).norm() < 1e-12);
        let v = cohen_sum_direct(2, p(3, 2)).unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn direct_sum_rejects_large_modulus() {
        let err = cohen_sum_direct(101, p(1, 3)).unwrap_err();
        assert!(matches!(err, Error::OracleOutOfRange { .. }));
        assert!(cohen_sum_direct(100, p(1, 3)).is_ok());
    }

    #[test]
    fn mobius_form_examples() {
        assert_eq!(cohen_sum(2, p(3, 2)), -1);
        assert_eq!(cohen_sum(4, p(16, 2)), 12);
        for q in 1..200 {
            assert_eq!(cohen_sum(q, p(1, 1)), mobius(q) as i64);
        }
    }

    #[test]
    fn classical_ramanujan_sums() {
        // c_q(n) for β = 1 against gcd-based enumeration.
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        for q in 1..=30u64 {
            for n in 1..=30u64 {
                let direct: f64 = (1..=q)
                    .filter(|h| gcd(*h, q) == 1)
                    .map(|h| (2.0 * PI * (n * h) as f64 / q as f64).cos())
                    .sum();
                assert_eq!(cohen_sum(q, p(n, 1)), direct.round() as i64, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn small_oracle_sweep() {
        for beta in 1..=3 {
            for n in 1..=20 {
                for q in 1..=12u64 {
                    let direct = cohen_sum_direct(q, p(n, beta)).unwrap();
                    assert!(direct.im.abs() < 1e-9);
                    assert_eq!(direct.re.round() as i64, cohen_sum(q, p(n, beta)), "q={q} n={n} β={beta}");
                }
            }
        }
    }

    #[test]
    fn table_matches_pointwise() {
        for &(n, beta) in &[(1, 1), (12, 1), (24, 2), (810, 3), (64, 2)] {
            let t = cohen_sum_table(500, p(n, beta));
            for q in 1..=500u64 {
                assert_eq!(t[q as usize], cohen_sum(q, p(n, beta)));
            }
        }
    }

    #[test]
    fn beta_divisor_lists() {
        assert_eq!(beta_divisors(p(36, 2)), vec![1, 2, 3, 6]);
        assert_eq!(beta_divisors(p(12, 2)), vec![1, 2]);
        assert_eq!(beta_divisors(p(810, 3)), vec![1, 3]);
        assert_eq!(beta_divisors(p(1, 5)), vec![1]);
    }

    #[test]
    fn sigma_examples() {
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(sigma(Complex64::new(0.3, -2.0), p(1, 2)).value, one);
        assert_eq!(sigma(one, p(12, 2)).value, Complex64::new(5.0, 0.0));
        assert_eq!(sigma(Complex64::new(0.0, 0.0), p(36, 2)).value, Complex64::new(4.0, 0.0));
        assert_eq!(sigma_int(1, p(12, 1)), Some(28));
    }

    #[test]
    fn sigma_complex_exponent_matches_direct_powers() {
        let z = Complex64::new(-0.25, 14.134725);
        let v = sigma(z, p(24, 2)).value;
        let expected: Complex64 = [1.0f64, 2.0]
            .iter()
            .map(|d| Complex64::new(*d, 0.0).powc(z * 2.0))
            .sum();
        assert!((v - expected).norm() < 1e-13);
    }

    #[test]
    fn von_mangoldt_examples() {
        assert_eq!(von_mangoldt(1, 1, 1).unwrap(), 0.0);
        assert!((von_mangoldt(4, 1, 1).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!(von_mangoldt(6, 1, 1).unwrap().abs() < 1e-15);
        assert!((von_mangoldt(27, 1, 1).unwrap() - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn von_mangoldt_table_is_bit_identical() {
        for &(m, beta) in &[(1, 1), (6, 1), (4, 2), (810, 3)] {
            let t = von_mangoldt_table(600, m, beta).unwrap();
            for j in 1..=600u64 {
                assert_eq!(t[j as usize].to_bits(), von_mangoldt(j, m, beta).unwrap().to_bits(), "j={j}");
            }
        }
    }

    #[test]
    fn summatory_c_examples() {
        let v = summatory_c(1.0, p(5, 2)).unwrap();
        assert_eq!(v.raw, 1.0);
        assert_eq!(v.sharp, 0.5);
        assert_eq!(summatory_c(5.0, p(1, 1)).unwrap().raw, -2.0);
        let v = summatory_c(4.0, p(16, 2)).unwrap();
        let expected: i64 = (1..=4).map(|q| cohen_sum(q, p(16, 2))).sum();
        assert_eq!(v.raw, expected as f64);
        assert_eq!(v.sharp, v.raw - 6.0);
        let v = summatory_c(4.5, p(16, 2)).unwrap();
        assert_eq!(v.sharp, v.raw);
        assert!(summatory_c(0.5, p(1, 1)).is_err());
    }

    #[test]
    fn summatory_psi_examples() {
        assert_eq!(summatory_psi(1.0, 1, 1).unwrap().raw, 0.0);
        let psi10 = 3.0 * 2f64.ln() + 2.0 * 3f64.ln() + 5f64.ln() + 7f64.ln();
        let v = summatory_psi(10.0, 1, 1).unwrap();
        assert!((v.raw - psi10).abs() < 1e-13);
        // 10 is not a prime power, so no half jump.
        assert!((v.sharp - psi10).abs() < 1e-13);
        let w = summatory_psi(10.5, 1, 1).unwrap();
        assert_eq!(w.raw, v.raw);
        assert_eq!(w.sharp, w.raw);
        let at9 = summatory_psi(9.0, 1, 1).unwrap();
        assert!((at9.raw - at9.sharp - 0.5 * 3f64.ln()).abs() < 1e-14);
    }
}
