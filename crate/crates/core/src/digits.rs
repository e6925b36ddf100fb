//! Digit vectors over base `n`, the lattice `Σ⁻¹(v)`, and the bounded box
//! in which minimal vectors are searched for.
//!
//! A digit vector `x = (x_0, …, x_k)` stands for the integer `Σ xᵢ nⁱ`.
//! Vectors are kept with trailing zeros trimmed so that equality is canonical.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DigitError {
    #[error("criterion requires odd n, got n = {0}")]
    OddBaseRequired(u32),
    #[error("criterion requires even n, got n = {0}")]
    EvenBaseRequired(u32),
    #[error("vector {0} is not in the box")]
    NotInBox(DigitVector),
    #[error("vector {x} has final index {k} but max(u, w) = {bound}")]
    NotStrictShape1 { x: DigitVector, k: usize, bound: u64 },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DigitVector {
    digits: Vec<i64>,
}

impl DigitVector {
    pub fn new(mut digits: Vec<i64>) -> Self {
        while digits.last() == Some(&0) {
            digits.pop();
        }
        DigitVector { digits }
    }

    pub fn zero() -> Self {
        DigitVector { digits: Vec::new() }
    }

    pub fn digits(&self) -> &[i64] {
        &self.digits
    }

    /// Digit at index `i`, zero past the end.
    pub fn digit(&self, i: usize) -> i64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    /// Index of the final nonzero digit, `None` for the zero vector.
    pub fn k(&self) -> Option<usize> {
        self.digits.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// `k + 1`, or 0 for the zero vector.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn l1_norm(&self) -> u64 {
        self.digits.iter().map(|d| d.unsigned_abs()).sum()
    }

    pub fn sigma(&self, n: u32) -> BigInt {
        let n = BigInt::from(n);
        self.digits
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &d| acc * &n + BigInt::from(d))
    }

    /// `x + m·w⁽ⁱ⁾`.
    pub fn add_basis(&self, i: usize, m: i64, n: u32) -> DigitVector {
        let mut digits = self.digits.clone();
        if digits.len() < i + 2 {
            digits.resize(i + 2, 0);
        }
        digits[i] -= m * i64::from(n);
        digits[i + 1] += m;
        DigitVector::new(digits)
    }

    pub fn add(&self, other: &DigitVector) -> DigitVector {
        let len = self.len().max(other.len());
        DigitVector::new((0..len).map(|i| self.digit(i) + other.digit(i)).collect())
    }

    pub fn sub(&self, other: &DigitVector) -> DigitVector {
        let len = self.len().max(other.len());
        DigitVector::new((0..len).map(|i| self.digit(i) - other.digit(i)).collect())
    }

    pub fn scale(&self, m: i64) -> DigitVector {
        DigitVector::new(self.digits.iter().map(|d| d * m).collect())
    }
}

impl From<Vec<i64>> for DigitVector {
    fn from(digits: Vec<i64>) -> Self {
        DigitVector::new(digits)
    }
}

impl fmt::Display for DigitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// The `(u, w, n)` data that fixes the digit bounds of a box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoxParams {
    pub u: u64,
    pub w: u64,
    pub n: u32,
}

impl BoxParams {
    pub fn new(u: u64, w: u64, n: u32) -> Self {
        assert!(n >= 2, "n must be at least 2");
        BoxParams { u, w, n }
    }

    pub fn alpha(&self) -> i64 {
        i64::from(self.n / 2)
    }

    pub fn max_uw(&self) -> u64 {
        self.u.max(self.w)
    }

    /// Largest admissible `|x_i|` when `i` is the final index.
    pub fn final_bound(&self, i: usize) -> i64 {
        if (i as u64) < self.max_uw() {
            self.alpha()
        } else if self.n == 2 {
            self.alpha() + 2
        } else {
            self.alpha() + 1
        }
    }
}

pub fn sigma(x: &DigitVector, n: u32) -> BigInt {
    x.sigma(n)
}

/// `w⁽ⁱ⁾`: `−n` at index `i`, `1` at index `i+1`.
pub fn basis_vector(i: usize, n: u32) -> DigitVector {
    DigitVector::zero().add_basis(i, 1, n)
}

pub fn l1_norm(x: &DigitVector) -> u64 {
    x.l1_norm()
}

pub fn in_box(x: &DigitVector, p: &BoxParams) -> bool {
    let Some(k) = x.k() else { return true };
    let alpha = p.alpha();
    x.digits()[..k].iter().all(|d| d.abs() <= alpha) && x.digit(k).abs() <= p.final_bound(k)
}

/// The representative of `d mod n` in `[-⌊n/2⌋, ⌊n/2⌋]`, taking `+n/2` on ties.
pub fn balanced_residue(d: i64, n: u32) -> i64 {
    let n = i64::from(n);
    let r = d.rem_euclid(n);
    if 2 * r > n {
        r - n
    } else {
        r
    }
}

/// Moves `x` into the box by least-index-first carry propagation.
///
/// Σ is preserved and the path length for `(p.u, p.w)` does not increase.
pub fn reduce_to_box(x: &DigitVector, p: &BoxParams) -> DigitVector {
    let n = i64::from(p.n);
    let alpha = p.alpha();
    let mut digits = x.digits().to_vec();
    loop {
        while digits.last() == Some(&0) {
            digits.pop();
        }
        let Some(k) = digits.len().checked_sub(1) else { break };
        let violation = (0..=k).find(|&i| {
            let bound = if i < k { alpha } else { p.final_bound(k) };
            digits[i].abs() > bound
        });
        let Some(i) = violation else { break };
        let d = balanced_residue(digits[i], p.n);
        let carry = (digits[i] - d) / n;
        digits[i] = d;
        if i + 1 == digits.len() {
            digits.push(0);
        }
        digits[i + 1] += carry;
    }
    DigitVector::new(digits)
}

/// Minimality test for odd `n`.
///
/// For `k < max(u, w)` the box has a single element, which is therefore minimal.
/// Otherwise `x` fails to be minimal exactly when `k > max(u, w)` and it ends in
/// `(δ⌊n/2⌋, −δ)`.
pub fn is_minimal_odd(x: &DigitVector, p: &BoxParams) -> Result<bool, DigitError> {
    if p.n.is_multiple_of(2) {
        return Err(DigitError::OddBaseRequired(p.n));
    }
    if !in_box(x, p) {
        return Err(DigitError::NotInBox(x.clone()));
    }
    let Some(k) = x.k() else { return Ok(true) };
    if (k as u64) <= p.max_uw() || k == 0 {
        return Ok(true);
    }
    let last = x.digit(k);
    let penultimate = x.digit(k - 1);
    let alpha = p.alpha();
    let bad = last.abs() == 1 && penultimate == -last * alpha;
    Ok(!bad)
}

/// Minimality test for even `n` and strict shape 1 (`k < max(u, w)`): `x` is
/// minimal unless it contains adjacent digits `(δn/2, δn/2)` or `(δn/2, y)` with
/// `y` of sign `−δ`.
pub fn is_minimal_strict_shape1(x: &DigitVector, p: &BoxParams) -> Result<bool, DigitError> {
    if p.n % 2 == 1 {
        return Err(DigitError::EvenBaseRequired(p.n));
    }
    if let Some(k) = x.k() {
        if (k as u64) >= p.max_uw() {
            return Err(DigitError::NotStrictShape1 {
                x: x.clone(),
                k,
                bound: p.max_uw(),
            });
        }
    }
    if !in_box(x, p) {
        return Err(DigitError::NotInBox(x.clone()));
    }
    let half = p.alpha();
    let forbidden = x.digits().windows(2).any(|pair| {
        let (a, b) = (pair[0], pair[1]);
        a.abs() == half && (b == a || b.signum() == -a.signum())
    });
    Ok(!forbidden)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(d: &[i64]) -> DigitVector {
        DigitVector::new(d.to_vec())
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&v(&[2, -1, 1]), 3), BigInt::from(8));
        assert_eq!(sigma(&DigitVector::zero(), 5), BigInt::zero());
        for n in 2..=5 {
            for i in 0..=6 {
                assert_eq!(sigma(&basis_vector(i, n), n), BigInt::zero());
            }
        }
    }

    #[test]
    fn basis_vector_shape() {
        assert_eq!(basis_vector(0, 3), v(&[-3, 1]));
        assert_eq!(basis_vector(2, 2), v(&[0, 0, -2, 1]));
        let x = v(&[4, -1, 2]);
        for m in -3..=3 {
            assert_eq!(sigma(&x.add_basis(1, m, 3), 3), sigma(&x, 3));
        }
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert_eq!(v(&[1, 0, 0]), v(&[1]));
        assert_eq!(v(&[0, 0]).k(), None);
        assert_eq!(l1_norm(&v(&[-1, 2])), 3);
        assert_eq!(l1_norm(&v(&[])), 0);
        assert_eq!(l1_norm(&v(&[0, 0, 2])), 2);
    }

    #[test]
    fn box_membership() {
        assert!(in_box(&v(&[-1, 2]), &BoxParams::new(0, 0, 3)));
        assert!(!in_box(&v(&[2]), &BoxParams::new(2, 2, 3)));
        assert!(in_box(&v(&[3]), &BoxParams::new(0, 0, 2)));
        assert!(!in_box(&v(&[4]), &BoxParams::new(0, 0, 2)));
        assert!(!in_box(&v(&[2, 1]), &BoxParams::new(0, 0, 3)));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_to_box(&v(&[5]), &BoxParams::new(0, 0, 3)), v(&[-1, 2]));
        assert_eq!(reduce_to_box(&v(&[]), &BoxParams::new(4, 1, 3)), v(&[]));
        // (0, 2) is already in the box and shorter than (0, 0, 1).
        assert_eq!(reduce_to_box(&v(&[4]), &BoxParams::new(0, 0, 2)), v(&[0, 2]));
        assert_eq!(reduce_to_box(&v(&[7]), &BoxParams::new(5, 5, 3)), v(&[1, -1, 1]));
    }

    #[test]
    fn odd_minimality() {
        let p = BoxParams::new(0, 0, 3);
        assert_eq!(is_minimal_odd(&v(&[-1, -1, 1]), &p), Ok(false));
        assert_eq!(is_minimal_odd(&v(&[-1, 2]), &p), Ok(true));
        assert_eq!(is_minimal_odd(&v(&[1, 1]), &BoxParams::new(0, 5, 3)), Ok(true));
        assert!(matches!(
            is_minimal_odd(&v(&[1]), &BoxParams::new(0, 0, 4)),
            Err(DigitError::OddBaseRequired(4))
        ));
    }

    #[test]
    fn adjacent_digit_criterion() {
        let p = BoxParams::new(0, 9, 4);
        assert_eq!(is_minimal_strict_shape1(&v(&[1, 2, 2, 1]), &p), Ok(false));
        assert_eq!(is_minimal_strict_shape1(&v(&[0, 2, -1]), &p), Ok(false));
        assert_eq!(is_minimal_strict_shape1(&v(&[-2, 1, 0, 1]), &p), Ok(false));
        assert_eq!(is_minimal_strict_shape1(&v(&[2, 1, 0, -1, 1]), &p), Ok(true));
        assert_eq!(is_minimal_strict_shape1(&v(&[2, 0, -2]), &p), Ok(true));
        assert!(is_minimal_strict_shape1(&v(&[1]), &BoxParams::new(0, 9, 3)).is_err());
        assert!(matches!(
            is_minimal_strict_shape1(&v(&[1, 1]), &BoxParams::new(0, 1, 4)),
            Err(DigitError::NotStrictShape1 { .. })
        ));
    }
}
