//! Growth-rate polynomials of BS(1,n) and their smallest roots.

use std::fmt;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::automata::{expand_to_on, CountSequence};
use crate::spectral::spectral_radius;

pub const DEFAULT_EMPIRICAL_LENGTH: usize = 40;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GrowthError {
    #[error("n must be at least 2, got {0}")]
    InvalidBase(u32),
    #[error("the matrix determinant is only defined for even n, got {0}")]
    OddBase(u32),
    #[error("polynomial {0} has no sign change in (0, 1)")]
    NoSignChange(IntPolynomial),
    #[error("count sequence has no positive terms")]
    AllZero,
}

/// A polynomial with integer coefficients, lowest degree first, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPolynomial {
    coefficients: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coefficients: Vec<i64>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        IntPolynomial { coefficients }
    }

    pub fn zero() -> Self {
        IntPolynomial::new(Vec::new())
    }

    pub fn constant(c: i64) -> Self {
        IntPolynomial::new(vec![c])
    }

    /// `c·xᵉ`.
    pub fn monomial(c: i64, e: usize) -> Self {
        let mut coefficients = vec![0; e + 1];
        coefficients[e] = c;
        IntPolynomial::new(coefficients)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn coefficient(&self, e: usize) -> i64 {
        self.coefficients.get(e).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let len = self.coefficients.len().max(other.coefficients.len());
        IntPolynomial::new((0..len).map(|e| self.coefficient(e) + other.coefficient(e)).collect())
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> IntPolynomial {
        IntPolynomial::new(self.coefficients.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![0; self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(e, c)| c * e as i64)
                .collect(),
        )
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coefficients
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * z + c as f64)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, &c) in self.coefficients.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let m = c.unsigned_abs();
            match (e, m) {
                (0, _) => write!(f, "{m}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{m}x")?,
                (_, 1) => write!(f, "x^{e}")?,
                _ => write!(f, "{m}x^{e}")?,
            }
        }
        Ok(())
    }
}

fn check_base(n: u32) -> Result<i64, GrowthError> {
    if n < 2 {
        return Err(GrowthError::InvalidBase(n));
    }
    Ok(i64::from(n / 2))
}

/// `Σ_{i=lo}^{hi} xⁱ`.
fn power_run(lo: usize, hi: usize) -> IntPolynomial {
    (lo..=hi).fold(IntPolynomial::zero(), |p, e| p.add(&IntPolynomial::monomial(1, e)))
}

/// The denominator whose smallest root is the reciprocal growth rate.
///
/// Odd n: `1 − x − 2Σ_{i=1}^{α} x^{i+1}`.
/// Even n: `1 − 2x − x² + 2x^{α+1} − 2x^{α+2} + 2x^{2α+2}`.
pub fn theorem_polynomial(n: u32) -> Result<IntPolynomial, GrowthError> {
    let alpha = check_base(n)? as usize;
    if n % 2 == 1 {
        let run = power_run(2, alpha + 1).scale(2);
        return Ok(IntPolynomial::new(vec![1, -1]).sub(&run));
    }
    Ok(IntPolynomial::new(vec![1, -2, -1])
        .add(&IntPolynomial::monomial(2, alpha + 1))
        .add(&IntPolynomial::monomial(-2, alpha + 2))
        .add(&IntPolynomial::monomial(2, 2 * alpha + 2)))
}

/// The 3×3 transfer matrix `M(x)` between the states `s_{0,0}`, `s_{1,0}`, `s_{2,0}` of `O_n`, n even.
pub fn even_matrix(n: u32) -> Result<[[IntPolynomial; 3]; 3], GrowthError> {
    let alpha = check_base(n)? as usize;
    if n % 2 == 1 {
        return Err(GrowthError::OddBase(n));
    }
    let loop0 = IntPolynomial::monomial(1, 1).add(&power_run(2, alpha).scale(2));
    let up = IntPolynomial::monomial(1, alpha + 1);
    let back = power_run(1, alpha);
    let z = IntPolynomial::zero;
    Ok([
        [loop0, up.clone(), up],
        [back.clone(), z(), z()],
        [back, z(), z()],
    ])
}

/// `det(I − M(x))` expanded symbolically.
///
/// Satisfies `theorem_polynomial(n) = (1 − x)·det(I − M(x))`; the factor
/// `1 − x` is a unit in the ring of power series and only adds a root at 1.
pub fn even_matrix_det(n: u32) -> Result<IntPolynomial, GrowthError> {
    let m = even_matrix(n)?;
    let one = IntPolynomial::constant(1);
    let entry = |i: usize, j: usize| {
        let neg = m[i][j].scale(-1);
        if i == j {
            one.add(&neg)
        } else {
            neg
        }
    };
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
        entry(r0, c0).mul(&entry(r1, c1)).sub(&entry(r0, c1).mul(&entry(r1, c0)))
    };
    Ok(entry(0, 0)
        .mul(&minor(1, 2, 1, 2))
        .sub(&entry(0, 1).mul(&minor(1, 2, 0, 2)))
        .add(&entry(0, 2).mul(&minor(1, 2, 0, 1))))
}

/// The root of `p` in `(0, 1)` closest to 0, to absolute accuracy about 1e-13.
///
/// A grid scan isolates the first sign change, bisection narrows it and
/// three Newton steps polish. Afterwards the argument principle on a circle
/// just inside the root checks that no complex root is smaller in modulus;
/// a failure is logged.
pub fn smallest_root(p: &IntPolynomial) -> Result<f64, GrowthError> {
    const LO: f64 = 1e-9;
    const HI: f64 = 1.0 - 1e-9;
    const GRID: usize = 4096;
    let mut bracket = None;
    let mut prev = (LO, p.eval(LO));
    for step in 1..=GRID {
        let x = LO + (HI - LO) * step as f64 / GRID as f64;
        let y = p.eval(x);
        if y == 0.0 {
            bracket = Some((x, x));
            break;
        }
        if y.signum() != prev.1.signum() {
            bracket = Some((prev.0, x));
            break;
        }
        prev = (x, y);
    }
    let (mut lo, mut hi) = bracket.ok_or_else(|| GrowthError::NoSignChange(p.clone()))?;
    let lo_sign = p.eval(lo).signum();
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if p.eval(mid).signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let dp = p.derivative();
    let mut root = 0.5 * (lo + hi);
    for _ in 0..3 {
        let slope = dp.eval(root);
        if slope == 0.0 {
            break;
        }
        root -= p.eval(root) / slope;
    }
    let inside = roots_inside_circle(p, root - 1e-6, 720);
    if inside != 0 {
        log::warn!("{p} has {inside} root(s) of modulus below {root}");
    } else {
        log::debug!("{p}: no root of modulus below {root}");
    }
    Ok(root)
}

/// Number of roots of `p` strictly inside `|z| = radius`, by the winding number of `p` on the circle.
pub fn roots_inside_circle(p: &IntPolynomial, radius: f64, samples: usize) -> i64 {
    let point = |k: usize| {
        let theta = std::f64::consts::TAU * k as f64 / samples as f64;
        p.eval_complex(Complex64::from_polar(radius, theta))
    };
    let mut total = 0.0;
    let mut prev = point(0);
    for k in 1..=samples {
        let cur = point(k % samples);
        total += (cur / prev).arg();
        prev = cur;
    }
    (total / std::f64::consts::TAU).round() as i64
}

/// Exponential growth estimates from the tail of a count sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthEstimate {
    /// Length `N` of the last positive term.
    pub length: usize,
    /// `f(N)^(1/N)`.
    pub nth_root: f64,
    /// `f(N)/f(N−1)`, or `NaN` when `f(N−1) = 0`.
    pub ratio: f64,
}

/// Natural logarithm of a positive big integer.
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn estimate_growth_from_counts(f: &CountSequence) -> Result<GrowthEstimate, GrowthError> {
    let length = f
        .counts()
        .iter()
        .rposition(|c| !c.is_zero())
        .filter(|&n| n > 0)
        .ok_or(GrowthError::AllZero)?;
    let last = &f.counts()[length];
    let prev = &f.counts()[length - 1];
    let ratio = if prev.is_zero() {
        f64::NAN
    } else {
        (ln_big(last) - ln_big(prev)).exp()
    };
    Ok(GrowthEstimate {
        length,
        nth_root: (ln_big(last) / length as f64).exp(),
        ratio,
    })
}

/// Growth data for one `n`: exact polynomial, its root, and counts from `O_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub n: u32,
    pub alpha: i64,
    pub polynomial: IntPolynomial,
    pub root: f64,
    pub rate: f64,
    pub empirical_counts: CountSequence,
    pub empirical_rate: f64,
}

impl GrowthReport {
    pub fn empirical_length(&self) -> usize {
        self.empirical_counts.len().saturating_sub(1)
    }

    /// `{n, alpha, polynomial, root, rate, empirical: {N, fN, ratio}}` with `fN` as a decimal string.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "alpha": self.alpha,
            "polynomial": self.polynomial.coefficients(),
            "root": self.root,
            "rate": self.rate,
            "empirical": {
                "N": self.empirical_length(),
                "fN": self.empirical_counts.last().map(ToString::to_string).unwrap_or_default(),
                "ratio": self.empirical_rate,
            },
        })
    }
}

pub fn growth_rate(n: u32) -> Result<GrowthReport, GrowthError> {
    growth_rate_with(n, DEFAULT_EMPIRICAL_LENGTH)
}

pub fn growth_rate_with(n: u32, length: usize) -> Result<GrowthReport, GrowthError> {
    let alpha = check_base(n)?;
    let polynomial = theorem_polynomial(n)?;
    let root = smallest_root(&polynomial)?;
    let empirical_counts = expand_to_on(n).count_accepted(length);
    let empirical_rate = estimate_growth_from_counts(&empirical_counts).map_or(f64::NAN, |e| e.ratio);
    Ok(GrowthReport {
        n,
        alpha,
        polynomial,
        root,
        rate: 1.0 / root,
        empirical_counts,
        empirical_rate,
    })
}

/// Checks of the `n → ∞` limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitCheck {
    /// Root of `1 − 2x − x²` in `(0, 1)`.
    pub series_root: f64,
    /// Dominant eigenvalue of the three-symbol automaton with `a`, `a⁻¹` never adjacent.
    pub eigen_rate: f64,
    pub root_50: f64,
    pub root_51: f64,
}

pub fn limit_rate_check() -> LimitCheck {
    let limit = IntPolynomial::new(vec![1, -2, -1]);
    let series_root = smallest_root(&limit).expect("1 − 2x − x² changes sign on (0, 1)");
    let adjacency = [vec![1.0, 1.0, 1.0], vec![1.0, 1.0, 0.0], vec![1.0, 0.0, 1.0]];
    let root_of = |n| smallest_root(&theorem_polynomial(n).expect("n ≥ 2")).expect("sign change");
    LimitCheck {
        series_root,
        eigen_rate: spectral_radius(&adjacency),
        root_50: root_of(50),
        root_51: root_of(51),
    }
}

/// Smallest roots for each `n` in the range.
pub fn root_sequence(ns: impl IntoIterator<Item = u32>) -> Result<Vec<(u32, f64)>, GrowthError> {
    ns.into_iter()
        .map(|n| Ok((n, smallest_root(&theorem_polynomial(n)?)?)))
        .collect()
}
