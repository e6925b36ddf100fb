//! Flattening arbitrary minimal vectors onto strict shape 1.
//!
//! `c` rewrites the tail of a minimal vector so that every digit is within
//! `⌊n/2⌋`, `β` measures the norm saved, and `Φ` adjusts `(u, w)` so that the
//! image path is of strict shape 1 and exactly three letters longer. The
//! number of minimal preimages of any vector under `c` is bounded, which
//! sandwiches sphere sizes between counts of strict-shape-1 geodesics.

use serde::{Deserialize, Serialize};

use crate::digits::{BoxParams, DigitVector};
use crate::geodesic::{is_minimal, Shape};

/// Image `(u′, w′, x′)` of Φ. The implied `v′` is `Σ(x′)`, equal to `Σ(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiResult {
    pub u: u64,
    pub w: u64,
    pub x: DigitVector,
}

/// `Σ_{i=j}^{k} w⁽ⁱ⁾`, or under condition (A) `Σ_{i=j}^{k-1} w⁽ⁱ⁾ + 2w⁽ᵏ⁾ + w⁽ᵏ⁺¹⁾`.
fn tail_offset(j: usize, k: usize, condition_a: bool, n: u32) -> DigitVector {
    let mut z = DigitVector::zero();
    if condition_a {
        for i in j..k {
            z = z.add_basis(i, 1, n);
        }
        z = z.add_basis(k, 2, n);
        z.add_basis(k + 1, 1, n)
    } else {
        for i in j..=k {
            z = z.add_basis(i, 1, n);
        }
        z
    }
}

/// Start of the maximal final run of digits with `|xᵢ| ≥ n/2`, if the final digit qualifies.
fn run_start(x: &DigitVector, n: u32) -> Option<usize> {
    let big = |d: i64| 2 * d.unsigned_abs() >= u64::from(n);
    let k = x.k()?;
    if !big(x.digit(k)) {
        return None;
    }
    let mut j = k;
    while j > 0 && big(x.digit(j - 1)) {
        j -= 1;
    }
    Some(j)
}

/// The digit-rewriting map `c`.
pub fn c_map(x: &DigitVector, p: &BoxParams) -> DigitVector {
    let n = p.n;
    let (Some(k), Some(j)) = (x.k(), run_start(x, n)) else {
        return x.clone();
    };
    let last = x.digit(k);
    let delta = last.signum();
    let condition_a = n == 2 && (last.abs() == 3 || (last.abs() == 2 && j < k));
    if condition_a || last.abs() == p.alpha() + 1 || j < k {
        x.add(&tail_offset(j, k, condition_a, n).scale(delta))
    } else {
        x.clone()
    }
}

/// `β(x) = 3 + ‖x‖₁ − ‖c(x)‖₁`.
pub fn beta(x: &DigitVector, p: &BoxParams) -> i64 {
    3 + x.l1_norm() as i64 - c_map(x, p).l1_norm() as i64
}

/// The shape map Φ.
pub fn phi(u: u64, w: u64, x: &DigitVector, n: u32) -> PhiResult {
    let p = BoxParams::new(u, w, n);
    let cx = c_map(x, &p);
    let b = u64::try_from(beta(x, &p)).expect("β is at least 3 on the box");
    let k = x.k().unwrap_or(0) as u64;
    let (u, w) = match Shape::of(x.k(), u, w) {
        Shape::Shape1 => (u, w + b),
        Shape::Shape2 => (w, u + b),
        Shape::Shape3 => (u, 2 * k - w + b),
        Shape::Shape4 => (w, 2 * k - u + b),
    };
    PhiResult { u, w, x: cx }
}

/// Some `(u, w)` with both coordinates at most `bound` for which `x` is minimal.
pub fn minimality_witness(x: &DigitVector, n: u32, bound: u64, hint: Option<(u64, u64)>) -> Option<(u64, u64)> {
    if let Some((u, w)) = hint {
        if is_minimal(x, u, w, n) {
            return Some((u, w));
        }
    }
    (0..=bound)
        .flat_map(|u| (0..=bound).map(move |w| (u, w)))
        .find(|&(u, w)| is_minimal(x, u, w, n))
}

/// Minimal vectors `x` with `c(x) = y`, found by inverting the tail rewrites of `c`.
///
/// A nontrivial preimage differs from `y` by `δ·Σ_{i=j}^{k} w⁽ⁱ⁾` with
/// `k = k_y − 1`, or (for `n = 2`) by the condition-(A) offset with
/// `k = k_y − 2`. Each candidate is kept if `c` really maps it to `y` and it
/// is minimal for some `(u, w)` with coordinates at most `search_bound`.
pub fn preimages(y: &DigitVector, p: &BoxParams, search_bound: u64) -> Vec<DigitVector> {
    let n = p.n;
    let big = |d: i64| 2 * d.unsigned_abs() >= u64::from(n);
    let mut candidates = vec![y.clone()];
    if let Some(ky) = y.k() {
        for delta in [1i64, -1] {
            // x runs over y − δ·Σ_{i=j}^{k} w⁽ⁱ⁾ for decreasing j while x_j..x_k stay at least n/2
            if ky >= 1 && y.digit(ky) == delta {
                let k = ky - 1;
                let mut x = y.sub(&tail_offset(k, k, false, n).scale(delta));
                for j in (0..=k).rev() {
                    if j < k {
                        if !big(x.digit(j + 1) - delta) {
                            break;
                        }
                        x = x.sub(&tail_offset(j, j, false, n).scale(delta));
                    }
                    if big(x.digit(j)) {
                        candidates.push(x.clone());
                    }
                }
            }
            if n == 2 && ky >= 2 {
                let k = ky - 2;
                for j in 0..=k {
                    candidates.push(y.sub(&tail_offset(j, k, true, n).scale(delta)));
                }
            }
        }
    }
    let mut found: Vec<DigitVector> = Vec::new();
    for x in candidates {
        if found.contains(&x) || c_map(&x, p) != *y {
            continue;
        }
        let hint = (x == *y).then_some((p.u, p.w));
        if minimality_witness(&x, n, search_bound, hint).is_some() {
            found.push(x);
        }
    }
    found
}

/// Number of minimal preimages of `y` under `c`.
pub fn preimage_count(y: &DigitVector, p: &BoxParams, search_bound: u64) -> usize {
    preimages(y, p, search_bound).len()
}

/// The bound on minimal preimages: 5 for `n = 2`, 3 for larger even `n`, 2 for odd `n`.
pub fn preimage_bound(n: u32) -> usize {
    match n {
        2 => 5,
        n if n % 2 == 0 => 3,
        _ => 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesic::path_length;

    fn v(d: &[i64]) -> DigitVector {
        DigitVector::new(d.to_vec())
    }

    fn bp(n: u32) -> BoxParams {
        BoxParams::new(0, 0, n)
    }

    #[test]
    fn c_examples() {
        assert_eq!(c_map(&v(&[3]), &bp(2)), v(&[-1, 0, 1]));
        assert_eq!(c_map(&v(&[2]), &bp(3)), v(&[-1, 1]));
        assert_eq!(c_map(&v(&[1]), &bp(4)), v(&[1]));
        assert_eq!(c_map(&v(&[0, 2]), &bp(4)), v(&[0, 2]));
    }

    #[test]
    fn c_matches_digit_tables_for_even_n() {
        // (…, δn/2, δn/2, δn/2) → (…, −δn/2, −δ(n/2−1), −δ(n/2−1), δ)
        assert_eq!(c_map(&v(&[1, 3, 3, 3]), &bp(6)), v(&[1, -3, -2, -2, 1]));
        assert_eq!(c_map(&v(&[1, -3, -3]), &bp(6)), v(&[1, 3, 2, -1]));
        // final δ(n/2+1) after a run: penultimate becomes −δ(n/2−2)
        assert_eq!(c_map(&v(&[3, 3, 4]), &bp(6)), v(&[-3, -2, -1, 1]));
        // lone δ(n/2+1) → (−δ(n/2−1), δ)
        assert_eq!(c_map(&v(&[0, 4]), &bp(6)), v(&[0, -2, 1]));
        assert_eq!(c_map(&v(&[0, -4]), &bp(6)), v(&[0, 2, -1]));
    }

    #[test]
    fn c_matches_digit_tables_for_n2() {
        assert_eq!(c_map(&v(&[0, 1, 1, 3]), &bp(2)), v(&[0, -1, 0, 0, 0, 1]));
        assert_eq!(c_map(&v(&[0, -1, -1, -2]), &bp(2)), v(&[0, 1, 0, 1, 0, -1]));
        assert_eq!(c_map(&v(&[-2]), &bp(2)), v(&[0, -1]));
        assert_eq!(c_map(&v(&[1, 1]), &bp(2)), v(&[-1, 0, 1]));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(&v(&[1]), &bp(4)), 3);
        assert_eq!(beta(&v(&[3]), &bp(2)), 4);
        assert_eq!(beta(&v(&[1, -2]), &bp(3)), 3);
        assert_eq!(beta(&v(&[0, 3]), &bp(5)), 3);
    }

    #[test]
    fn phi_examples() {
        let x = v(&[1, -1]);
        assert_eq!(phi(1, 4, &x, 3), PhiResult { u: 1, w: 7, x: x.clone() });

        let x = v(&[0, 0, 1]);
        let r = phi(0, 1, &x, 2);
        assert_eq!(r, PhiResult { u: 0, w: 6, x: x.clone() });
        assert_eq!(path_length(&x, 0, 1, 2), 4);
        assert_eq!(path_length(&r.x, r.u, r.w, 2), 7);

        assert_eq!(phi(3, 0, &v(&[0, 1]), 3), PhiResult { u: 0, w: 6, x: v(&[0, 1]) });
    }

    #[test]
    fn preimage_examples() {
        // no rewritable suffix: only y itself
        assert_eq!(preimage_count(&v(&[1, 0, 1]), &BoxParams::new(0, 4, 3), 6), 1);
        // (−1, 0, 1) for n = 2 is the image of (3) and of (1, 1)
        let y = v(&[-1, 0, 1]);
        let pre = preimages(&y, &BoxParams::new(0, 4, 2), 6);
        assert!(pre.contains(&v(&[3])));
        assert!(pre.contains(&y));
        assert!(pre.len() <= 5);
    }
}
