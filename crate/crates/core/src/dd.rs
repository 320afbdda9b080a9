//! Minimal double-double arithmetic (about 32 significant digits).
//!
//! Only used where an entire-function series suffers catastrophic
//! cancellation in plain `f64`: the single-sum form of the Bartz
//! functional-equation series reaches magnitudes around 1e17 while the
//! quantity of interest is O(1).

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Quotient of two exactly representable integers, correctly rounded
    /// to double-double.
    pub fn ratio(num: i64, den: i64) -> Self {
        Dd::from_f64(num as f64) / Dd::from_f64(den as f64)
    }

    pub fn powi(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn recip(self) -> Self {
        Dd::ONE / self
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    fn mul(self, rhs: f64) -> Dd {
        self * Dd::from_f64(rhs)
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * q1;
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * q2;
        let q3 = r.hi / rhs.hi;
        Dd::new(q1, q2) + Dd::from_f64(q3)
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CDd {
    pub re: Dd,
    pub im: Dd,
}

impl CDd {
    pub const ZERO: CDd = CDd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };

    pub fn new(re: Dd, im: Dd) -> Self {
        CDd { re, im }
    }

    pub fn from_c64(z: num_complex::Complex64) -> Self {
        CDd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    pub fn to_c64(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn scale(self, k: Dd) -> Self {
        CDd {
            re: self.re * k,
            im: self.im * k,
        }
    }

    pub fn norm_f64(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }
}

impl Add for CDd {
    type Output = CDd;
    fn add(self, rhs: CDd) -> CDd {
        CDd::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for CDd {
    type Output = CDd;
    fn sub(self, rhs: CDd) -> CDd {
        CDd::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for CDd {
    type Output = CDd;
    fn mul(self, rhs: CDd) -> CDd {
        CDd::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

/// Bernoulli numbers B_2, B_4, ..., B_24 as exact fractions.
const BERNOULLI_FRACTIONS: [(i64, i64); 12] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
    (854513, 138),
    (-236364091, 2730),
];

const ZETA_DD_MAX: usize = 400;

/// ζ(s) for integer s ≥ 2 to double-double accuracy.
///
/// Direct sum over n < 32 followed by an Euler–Maclaurin tail with exact
/// Bernoulli coefficients; the correction terms shrink like 32^{-s-2j}.
pub fn zeta_int_dd(s: u32) -> Dd {
    assert!(s >= 2, "zeta_int_dd needs s >= 2");
    static CACHE: OnceLock<Vec<Dd>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| (0..=ZETA_DD_MAX as u32).map(zeta_int_dd_uncached).collect());
    if (s as usize) <= ZETA_DD_MAX {
        cache[s as usize]
    } else {
        zeta_int_dd_uncached(s)
    }
}

fn zeta_int_dd_uncached(s: u32) -> Dd {
    if s < 2 {
        return Dd::ZERO;
    }
    const N: u32 = 32;
    let threshold: f64 = 1e-40;
    let mut acc = Dd::ZERO;
    // Sum from the smallest term upward.
    let negligible = |n: u32| (s as f64) * (n as f64).ln() > -threshold.ln();
    for n in (1..N).rev() {
        if negligible(n) {
            continue;
        }
        acc = acc + Dd::from_f64(n as f64).powi(s).recip();
    }
    if negligible(N) {
        return acc;
    }
    let nn = Dd::from_f64(N as f64);
    let inv_ns = nn.powi(s).recip();
    // N^{1-s}/(s-1) + N^{-s}/2
    let mut tail = nn * inv_ns / Dd::from_f64((s - 1) as f64) + inv_ns * 0.5;
    // Σ_j B_{2j}/(2j)! · s(s+1)...(s+2j-2) · N^{-s-2j+1}
    let mut rising = Dd::from_f64(s as f64);
    let mut factorial = Dd::from_f64(2.0);
    let mut npow = inv_ns / nn;
    let inv_n2 = (nn * nn).recip();
    for (j, &(num, den)) in BERNOULLI_FRACTIONS.iter().enumerate() {
        let j = j as u32 + 1;
        if j > 1 {
            let a = (s + 2 * j - 3) as f64;
            let b = (s + 2 * j - 2) as f64;
            rising = rising * Dd::from_f64(a) * Dd::from_f64(b);
            factorial = factorial * Dd::from_f64((2 * j - 1) as f64) * Dd::from_f64((2 * j) as f64);
            npow = npow * inv_n2;
        }
        let term = Dd::ratio(num, den) / factorial * rising * npow;
        if term.abs().hi < threshold {
            break;
        }
        tail = tail + term;
    }
    acc + tail
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_round_trips() {
        let a = Dd::from_f64(1.0) / Dd::from_f64(3.0);
        let back = a * Dd::from_f64(3.0) - Dd::ONE;
        assert!(back.to_f64().abs() < 1e-31);
    }

    #[test]
    fn captures_bits_below_f64() {
        let a = Dd::from_f64(1.0) + Dd::from_f64(1e-20);
        let b = a - Dd::ONE;
        assert!((b.to_f64() - 1e-20).abs() < 1e-35);
    }

    #[test]
    fn zeta_two_matches_pi_squared_over_six() {
        // π²/6 split into hi and lo from a 50-digit reference.
        let reference = Dd::new(1.6449340668482264, 3.040672350398476e-17);
        let diff = (zeta_int_dd(2) - reference).to_f64().abs();
        assert!(diff < 1e-30, "diff {diff:e}");
    }

    #[test]
    fn zeta_three_matches_apery() {
        let reference = Dd::new(1.2020569031595942, 4.875891010379532e-17);
        let diff = (zeta_int_dd(3) - reference).to_f64().abs();
        assert!(diff < 1e-30, "diff {diff:e}");
    }

    #[test]
    fn large_arguments_tend_to_one() {
        let z = zeta_int_dd(201);
        assert_eq!(z.hi, 1.0);
        assert!(z.lo >= 0.0 && z.lo < 1e-60);
    }
}
