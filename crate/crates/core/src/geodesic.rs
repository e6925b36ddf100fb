//! Paths of the four shapes, their lengths, and exact search for minimal
//! vectors, which yields a geodesic for any normal form.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::digits::{balanced_residue, reduce_to_box, BoxParams, DigitVector};
use crate::group::{GroupElement, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Shape {
    Shape1,
    Shape2,
    Shape3,
    Shape4,
}

impl Shape {
    pub fn number(self) -> u8 {
        match self {
            Shape::Shape1 => 1,
            Shape::Shape2 => 2,
            Shape::Shape3 => 3,
            Shape::Shape4 => 4,
        }
    }

    /// Side conditions of η, checked in order so boundary cases get the lower shape.
    pub fn of(k: Option<usize>, u: u64, w: u64) -> Shape {
        let k = k.unwrap_or(0) as u64;
        if k <= w {
            Shape::Shape1
        } else if k <= u {
            Shape::Shape2
        } else if u <= w {
            Shape::Shape3
        } else {
            Shape::Shape4
        }
    }
}

/// A word produced by η together with the shape that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathWord {
    pub word: Word,
    pub shape: Shape,
    /// Shape 1 with `k < w`.
    pub strict1: bool,
}

/// The path η_{u,v,w}(x).
pub fn eta(x: &DigitVector, u: u64, w: u64, _n: u32) -> PathWord {
    let k = x.k();
    let shape = Shape::of(k, u, w);
    let kk = k.unwrap_or(0);
    let mut word = Word::empty();
    match shape {
        Shape::Shape1 | Shape::Shape3 => {
            word.push_power(true, -(u as i64));
            word.push_power(false, x.digit(0));
            for i in 1..=kk {
                word.push_power(true, 1);
                word.push_power(false, x.digit(i));
            }
            word.push_power(true, w as i64 - kk as i64);
        }
        Shape::Shape2 | Shape::Shape4 => {
            word.push_power(true, kk as i64 - u as i64);
            word.push_power(false, x.digit(kk));
            for i in (0..kk).rev() {
                word.push_power(true, -1);
                word.push_power(false, x.digit(i));
            }
            word.push_power(true, w as i64);
        }
    }
    PathWord {
        word,
        shape,
        strict1: shape == Shape::Shape1 && (kk as u64) < w,
    }
}

/// Length contributed by the `t`-letters when the final index is `k`.
fn t_cost(k: Option<usize>, u: u64, w: u64) -> u64 {
    match k {
        Some(k) if k as u64 > u.max(w) => 2 * k as u64 - u.abs_diff(w),
        _ => u + w,
    }
}

/// `|η_{u,v,w}(x)|`: `‖x‖₁ + u + w` when `k ≤ max(u, w)`, else `‖x‖₁ + 2k − |u − w|`.
pub fn path_length(x: &DigitVector, u: u64, w: u64, _n: u32) -> u64 {
    x.l1_norm() + t_cost(x.k(), u, w)
}

/// Compares digit vectors by their absolute values, lower indices more
/// significant, with the signed digits as a final tie-break.
pub fn cmp_abs_lex(a: &[i64], b: &[i64]) -> Ordering {
    let len = a.len().max(b.len());
    let get = |s: &[i64], i: usize| s.get(i).copied().unwrap_or(0);
    (0..len)
        .map(|i| get(a, i).abs().cmp(&get(b, i).abs()))
        .find(|o| o.is_ne())
        .or_else(|| (0..len).map(|i| get(a, i).cmp(&get(b, i))).find(|o| o.is_ne()))
        .unwrap_or(Ordering::Equal)
}

#[derive(Debug, Clone)]
struct Suffix {
    cost: u64,
    digits: Vec<i64>,
}

fn cmp_suffix(a: &Suffix, b: &Suffix) -> Ordering {
    a.cost
        .cmp(&b.cost)
        .then_with(|| cmp_abs_lex(&a.digits, &b.digits))
}

/// Memoized search over `(index, remaining value)`.
///
/// At index `i` with remaining value `r` the digit `d` must satisfy
/// `d ≡ r (mod n)`; either `d = r` is the final digit, or `|d| ≤ ⌊n/2⌋`
/// and the search continues at `(i + 1, (r − d)/n)`. Only box vectors are
/// generated, and the depth is capped where the `t`-cost alone exceeds a
/// known upper bound.
struct MinimalSearch<'a> {
    p: BoxParams,
    max_index: usize,
    memo: HashMap<(usize, BigInt), Option<Suffix>>,
    n_big: &'a BigInt,
}

impl MinimalSearch<'_> {
    fn best(&mut self, i: usize, r: &BigInt) -> Option<Suffix> {
        debug_assert!(!r.is_zero());
        if i > self.max_index {
            return None;
        }
        let key = (i, r.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let n = i64::from(self.p.n);
        let alpha = self.p.alpha();
        let residue = r.mod_floor(self.n_big);
        let residue = i64::try_from(residue).expect("residue below n");
        let mut candidates = vec![balanced_residue(residue, self.p.n)];
        if n % 2 == 0 && residue == n / 2 {
            candidates.push(-alpha);
        }
        // A final digit may exceed the balanced range.
        let mut result: Option<Suffix> = None;
        if let Ok(last) = i64::try_from(r) {
            if last.abs() <= self.p.final_bound(i) {
                let cost = last.unsigned_abs() + t_cost(Some(i), self.p.u, self.p.w);
                result = Some(Suffix {
                    cost,
                    digits: vec![last],
                });
            }
        }
        for d in candidates {
            let rest = r - BigInt::from(d);
            if rest.is_zero() {
                continue;
            }
            let next = rest / self.n_big;
            if let Some(tail) = self.best(i + 1, &next) {
                let mut digits = Vec::with_capacity(tail.digits.len() + 1);
                digits.push(d);
                digits.extend_from_slice(&tail.digits);
                let cand = Suffix {
                    cost: tail.cost + d.unsigned_abs(),
                    digits,
                };
                if result.as_ref().is_none_or(|cur| cmp_suffix(&cand, cur).is_lt()) {
                    result = Some(cand);
                }
            }
        }
        self.memo.insert(key, result.clone());
        result
    }
}

/// The minimal vector of `B_v^{u,w}` and its path length, for any triple
/// (normal or not).
///
/// Among vectors of minimal length the one whose absolute values are
/// lexicographically least (index 0 most significant) is returned.
pub fn minimal_vector_for(u: u64, v: &BigInt, w: u64, n: u32) -> (DigitVector, u64) {
    let p = BoxParams::new(u, w, n);
    if v.is_zero() {
        return (DigitVector::zero(), u + w);
    }
    // Any box vector gives an upper bound on the optimum; vectors whose
    // final index k > max(u,w) cost at least 1 + 2k − |u − w|.
    let seed = reduce_to_box(&DigitVector::new(seed_digits(v, n)), &p);
    let bound = path_length(&seed, u, w, n);
    let max_index = (u.max(w)).max((bound + u.abs_diff(w)) / 2) as usize;
    let n_big = BigInt::from(n);
    let mut search = MinimalSearch {
        p,
        max_index,
        memo: HashMap::new(),
        n_big: &n_big,
    };
    let best = search
        .best(0, v)
        .expect("the seed vector lies in the search space");
    (DigitVector::new(best.digits), best.cost)
}

/// Base-`n` digits of `v` (all of the sign of `v`), a valid but unreduced lattice point.
fn seed_digits(v: &BigInt, n: u32) -> Vec<i64> {
    let sign = if v.is_negative() { -1 } else { 1 };
    let mut rest = v.abs();
    let n_big = BigInt::from(n);
    let mut digits = Vec::new();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&n_big);
        digits.push(sign * i64::try_from(r).expect("digit below n"));
        rest = q;
    }
    digits
}

/// The minimal vector for a group element.
pub fn minimal_vector(g: &GroupElement, n: u32) -> DigitVector {
    minimal_vector_for(g.u, &g.v, g.w, n).0
}

/// A geodesic word for `g`: η applied to its minimal vector.
pub fn geodesic(g: &GroupElement, n: u32) -> PathWord {
    eta(&minimal_vector(g, n), g.u, g.w, n)
}

/// Whether `x` is minimal in `B_v^{u,w}` with `v = Σ(x)`: it lies in the box,
/// attains the minimal length and, for even `n`, has the lexicographically
/// least absolute values among the minimizers.
pub fn is_minimal(x: &DigitVector, u: u64, w: u64, n: u32) -> bool {
    let p = BoxParams::new(u, w, n);
    if !crate::digits::in_box(x, &p) {
        return false;
    }
    let (best, len) = minimal_vector_for(u, &x.sigma(n), w, n);
    if path_length(x, u, w, n) != len {
        return false;
    }
    if n % 2 == 1 {
        return true;
    }
    let abs = |d: &[i64]| d.iter().map(|v| v.abs()).collect::<Vec<_>>();
    abs(x.digits()) == abs(best.digits())
}
