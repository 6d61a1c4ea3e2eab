//! Numerical single-valued polylogarithms.
//!
//! `li` evaluates the classical polylogarithm on its principal branch by a
//! three-region strategy: direct series for |z| <= 1/2, the expansion in
//! w = log z for 1/2 < |z| < 2, and the Bernoulli-polynomial inversion
//! formula for |z| >= 2. The single-valued combinations P_n^mod and P_n,Zag
//! are assembled from it; their true values are real for odd twist... see
//! `PolylogValue` for the sign conventions.
//!
//! All routines are pure; the shared constants table is built once.

use crate::error::{Error, Result};
use crate::poly::{q_to_f64, Q};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::sync::OnceLock;

const MAX_BERNOULLI: usize = 130;
const MAX_ZETA: usize = 80;

/// Exact Bernoulli numbers and binary64 zeta values, built once.
pub struct Constants {
    bernoulli: Vec<Q>,
    bernoulli_f64: Vec<f64>,
    zeta: Vec<f64>, // zeta[s] valid for 2 <= s <= MAX_ZETA
}

impl Constants {
    fn new() -> Self {
        // B_m from sum_{j<=m} C(m+1, j) B_j = 0, B_0 = 1 (so B_1 = -1/2)
        let mut bernoulli: Vec<Q> = Vec::with_capacity(MAX_BERNOULLI + 1);
        bernoulli.push(Q::one());
        for m in 1..=MAX_BERNOULLI {
            let mut acc = Q::zero();
            let mut binom = BigInt::one(); // C(m+1, 0)
            for (j, b) in bernoulli.iter().enumerate() {
                acc += b * Q::from_integer(binom.clone());
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            bernoulli.push(-acc / Q::from_integer(BigInt::from(m + 1)));
        }
        let bernoulli_f64 = bernoulli.iter().map(q_to_f64).collect();

        // Euler-Maclaurin for zeta(s), integer s >= 2
        let mut zeta = vec![0.0; MAX_ZETA + 1];
        for (s, slot) in zeta.iter_mut().enumerate().skip(2) {
            let n = 16u32;
            let nf = n as f64;
            let sf = s as f64;
            let mut v: f64 = (1..n).map(|m| (m as f64).powi(-(s as i32))).sum();
            v += nf.powf(1.0 - sf) / (sf - 1.0);
            v += 0.5 * nf.powf(-sf);
            let mut rising = sf; // s (s+1) ... accumulated
            let mut fact = 1.0f64;
            for j in 1..=8usize {
                fact *= (2 * j - 1) as f64 * (2 * j) as f64;
                let b2j = q_to_f64(&bernoulli[2 * j]);
                v += b2j / fact * rising * nf.powf(-sf - 2.0 * j as f64 + 1.0);
                rising *= (sf + 2.0 * j as f64 - 1.0) * (sf + 2.0 * j as f64);
            }
            *slot = v;
        }
        Constants {
            bernoulli,
            bernoulli_f64,
            zeta,
        }
    }

    pub fn bernoulli(&self, k: usize) -> &Q {
        &self.bernoulli[k]
    }

    pub fn bernoulli_f64(&self, k: usize) -> f64 {
        self.bernoulli_f64[k]
    }

    /// zeta at any integer argument except 1: table for s >= 2, rational
    /// closed forms zeta(0) = -1/2, zeta(-m) = -B_{m+1}/(m+1) for m >= 1.
    pub fn zeta_int(&self, s: i64) -> f64 {
        assert!(s != 1, "zeta(1) pole");
        if s >= 2 {
            self.zeta[s as usize]
        } else if s == 0 {
            -0.5
        } else {
            let m = (-s) as usize;
            -self.bernoulli_f64[m + 1] / (m as f64 + 1.0)
        }
    }

    pub fn zeta(&self, s: usize) -> f64 {
        self.zeta[s]
    }

    /// Bernoulli polynomial B_n(x) over C.
    pub fn bernoulli_poly(&self, n: usize, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut binom = 1.0f64;
        // B_n(x) = sum_j C(n, j) B_j x^(n-j)
        for j in 0..=n {
            acc += binom * self.bernoulli_f64[j] * x.powu((n - j) as u32);
            binom *= (n - j) as f64 / (j as f64 + 1.0);
        }
        acc
    }
}

pub fn constants() -> &'static Constants {
    static CONSTANTS: OnceLock<Constants> = OnceLock::new();
    CONSTANTS.get_or_init(Constants::new)
}

fn harmonic(k: u32) -> f64 {
    (1..k).map(|m| 1.0 / m as f64).sum()
}

/// Classical polylogarithm Li_k on the principal branch.
pub fn li(k: u32, z: Complex64) -> Result<Complex64> {
    assert!(k >= 1);
    if k == 1 {
        let w = Complex64::new(1.0, 0.0) - z;
        if w.norm() == 0.0 {
            return Err(Error::LiPole);
        }
        return Ok(-w.ln());
    }
    let r = z.norm();
    if r == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if r <= 0.5 {
        return Ok(li_series(k, z));
    }
    if r < 2.0 {
        return Ok(li_log_expansion(k, z));
    }
    // inversion to |1/z| <= 1/2 via the Bernoulli polynomial formula
    let c = constants();
    let inv = li(k, z.inv())?;
    let arg = Complex64::new(0.5, 0.0) + (-z).ln() / Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let bp = c.bernoulli_poly(k as usize, arg);
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut fact = 1.0f64;
    for m in 2..=k {
        fact *= m as f64;
    }
    Ok(-sign * inv - two_pi_i.powu(k) / fact * bp)
}

fn li_series(k: u32, z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut zpow = Complex64::new(1.0, 0.0);
    let r = z.norm();
    let stop = 1e-17 * (1.0 - r);
    for m in 1..10_000u32 {
        zpow *= z;
        let term = zpow / (m as f64).powi(k as i32);
        acc += term;
        if term.norm() < stop {
            break;
        }
    }
    acc
}

/// Li_k(z) = sum_{j >= 0, j != k-1} zeta(k-j) w^j / j!
///         + (H_{k-1} - log(-w)) w^(k-1)/(k-1)!   with w = Log z, |w| < 2 pi.
fn li_log_expansion(k: u32, z: Complex64) -> Complex64 {
    let c = constants();
    let w = z.ln();
    if w.norm() == 0.0 {
        return Complex64::new(c.zeta_int(k as i64), 0.0);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut wj = Complex64::new(1.0, 0.0); // w^j / j!
    let mut small = 0;
    for j in 0..=(MAX_BERNOULLI as i64 - 2) {
        if j == k as i64 - 1 {
            acc += (Complex64::new(harmonic(k), 0.0) - (-w).ln()) * wj;
        } else {
            let term = c.zeta_int(k as i64 - j) * wj;
            acc += term;
            // zeta vanishes at negative even integers, so a single tiny term
            // does not mean convergence
            if j > k as i64 {
                if term.norm() < 1e-18 * acc.norm().max(1.0) {
                    small += 1;
                    if small >= 2 {
                        break;
                    }
                } else {
                    small = 0;
                }
            }
        }
        wj *= w / (j as f64 + 1.0);
    }
    acc
}

/// An element of R(m): true value `coeff * i^(m mod 2)`, reported by its real
/// coefficient (real part for even twist, imaginary part for odd twist).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolylogValue {
    pub coeff: f64,
    pub twist: u32,
}

impl PolylogValue {
    pub fn from_value(v: Complex64, twist: u32) -> Self {
        let coeff = if twist.is_multiple_of(2) { v.re } else { v.im };
        PolylogValue { coeff, twist }
    }

    /// The honest complex number this represents.
    pub fn value(&self) -> Complex64 {
        if self.twist.is_multiple_of(2) {
            Complex64::new(self.coeff, 0.0)
        } else {
            Complex64::new(0.0, self.coeff)
        }
    }

    /// Addition inside one R(m); mixing twists is rejected.
    pub fn try_add(&self, other: &PolylogValue) -> Result<PolylogValue> {
        if self.twist != other.twist {
            return Err(Error::TwistMismatch(self.twist, other.twist));
        }
        Ok(PolylogValue {
            coeff: self.coeff + other.coeff,
            twist: self.twist,
        })
    }

    pub fn scale(&self, s: f64) -> PolylogValue {
        PolylogValue {
            coeff: self.coeff * s,
            twist: self.twist,
        }
    }
}

/// pi_m(w): the projection of w onto R(m) in C = R(m) + R(m+1).
pub fn project(w: Complex64, m: u32) -> PolylogValue {
    PolylogValue::from_value(w, m)
}

/// A point of P^1(C) including the two poles of the chart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub fn finite(re: f64, im: f64) -> Self {
        SpherePoint::Finite(Complex64::new(re, im))
    }
}

/// True complex value of P_n,Zag(z); singular at 0 and infinity.
pub fn p_zag_value(n: u32, z: Complex64) -> Result<Complex64> {
    assert!(n >= 1);
    if z.norm() == 0.0 {
        return Err(Error::Singular("P_n,Zag at 0".into()));
    }
    let ml = -z.norm().ln();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut pow = 1.0f64; // (-log|z|)^k / k!
    for k in 0..n {
        acc += pow * li(n - k, z)?;
        pow *= ml / (k as f64 + 1.0);
    }
    Ok(pi_proj(acc, n - 1))
}

/// P_n,Zag as an R(n-1) value.
pub fn p_zag(n: u32, z: Complex64) -> Result<PolylogValue> {
    Ok(PolylogValue::from_value(p_zag_value(n, z)?, n - 1))
}

/// True complex value of P_n^mod; continuous on the whole sphere for n >= 2,
/// with value 0 at 0 and infinity and zeta(n) projected at 1.
pub fn p_mod_value(n: u32, z: SpherePoint) -> Result<Complex64> {
    assert!(n >= 1);
    let z = match z {
        SpherePoint::Infinity => {
            if n == 1 {
                // P_1^mod = -log|1-z| does not extend to infinity
                return Err(Error::Singular("P_1^mod at infinity".into()));
            }
            return Ok(Complex64::new(0.0, 0.0));
        }
        SpherePoint::Finite(z) => z,
    };
    if z.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if (z - Complex64::new(1.0, 0.0)).norm() == 0.0 {
        if n == 1 {
            return Err(Error::LiPole);
        }
        return Ok(pi_proj(
            Complex64::new(constants().zeta(n as usize), 0.0),
            n - 1,
        ));
    }
    if n == 1 {
        // pi_0(Li_1) = -log|1-z| everywhere; no inversion rule at weight 1
        return Ok(Complex64::new(
            -(Complex64::new(1.0, 0.0) - z).norm().ln(),
            0.0,
        ));
    }
    if z.norm() > 1.0 {
        // inversion rule: P(z) = -(-1)^n P(1/z), valid for n >= 2
        let inner = p_mod_value(n, SpherePoint::Finite(z.inv()))?;
        let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
        return Ok(sign * inner);
    }
    let c = constants();
    let l = z.norm().ln();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut lk = 1.0f64; // log^k |z|
    for k in 0..n {
        let w = c.bernoulli_f64(k as usize) * pow_2k_over_fact(k) * lk;
        if w != 0.0 {
            acc += w * li(n - k, z)?;
        }
        lk *= l;
    }
    Ok(pi_proj(acc, n - 1))
}

fn pow_2k_over_fact(k: u32) -> f64 {
    let mut v = 1.0;
    for m in 1..=k {
        v *= 2.0 / m as f64;
    }
    v
}

fn pi_proj(w: Complex64, m: u32) -> Complex64 {
    if m.is_multiple_of(2) {
        Complex64::new(w.re, 0.0)
    } else {
        Complex64::new(0.0, w.im)
    }
}

/// P_n^mod as an R(n-1) value.
pub fn p_mod(n: u32, z: SpherePoint) -> Result<PolylogValue> {
    Ok(PolylogValue::from_value(p_mod_value(n, z)?, n - 1))
}

pub fn p_mod_c(n: u32, z: Complex64) -> Result<PolylogValue> {
    p_mod(n, SpherePoint::Finite(z))
}

/// True when the evaluation point sits inside the flagged accuracy basin
/// around z = 1.
pub fn near_one_accuracy_flag(z: Complex64) -> bool {
    (z - Complex64::new(1.0, 0.0)).norm() < 1e-8
}

/// The number-field regulator at a single embedding:
/// (n-1)! * sum_i c_i P_n^mod(y_i), sign convention fixed to +.
pub fn nf_regulator_at(n: u32, terms: &[(f64, Complex64)], include_factor: bool) -> Result<PolylogValue> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (c, y) in terms {
        acc += *c * p_mod_value(n, SpherePoint::Finite(*y))?;
    }
    if include_factor {
        let mut fact = 1.0;
        for m in 2..n {
            fact *= m as f64;
        }
        acc *= fact;
    }
    Ok(PolylogValue::from_value(acc, n - 1))
}
