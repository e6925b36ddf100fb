//! Brute-force oracles and the cross-module consistency checks built on them.
//!
//! Each check returns a [`CheckReport`]; none of them panics on a mismatch.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::automata::{build_dn, expand_to_on, DigitAutomaton};
use crate::bfs::{bfs_spheres, CayleyBall};
use crate::digits::{reduce_to_box, BoxParams, DigitVector};
use crate::geodesic::{cmp_abs_lex, geodesic, minimal_vector, path_length, Shape};
use crate::group::{evaluate_word, GroupElement, GroupError, GroupParams, Letter};
use crate::shape_map::{c_map, minimality_witness, phi, preimage_bound, preimage_count, PhiResult};

const MAX_LISTED_FAILURES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Number of individual cases examined.
    pub checked: u64,
    /// The first few failing cases.
    pub failures: Vec<String>,
    pub summary: String,
}

struct Tally {
    checked: u64,
    failed: u64,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checked: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    fn finish(self, name: impl Into<String>, summary: impl Into<String>) -> CheckReport {
        let summary = summary.into();
        CheckReport {
            name: name.into(),
            passed: self.failed == 0,
            checked: self.checked,
            failures: self.failures,
            summary: if self.failed == 0 {
                summary
            } else {
                format!("{summary}; {} failing case(s)", self.failed)
            },
        }
    }
}

/// All lattice points `x` with `Σ(x) = v`, non-final digits in `[-α, α]`,
/// final digit `|x_k| ≤ final_bound(k)`, `k ≤ max_k` and `‖x‖₁ ≤ max_norm`.
pub fn lattice_points(
    v: i128,
    n: u32,
    max_k: usize,
    max_norm: u64,
    final_bound: &dyn Fn(usize) -> i64,
) -> Vec<DigitVector> {
    fn walk(
        i: usize,
        r: i128,
        prefix: &mut Vec<i64>,
        norm: u64,
        ctx: &(u32, usize, u64, &dyn Fn(usize) -> i64),
        out: &mut Vec<DigitVector>,
    ) {
        let (n, max_k, max_norm, final_bound) = *ctx;
        if r == 0 {
            out.push(DigitVector::new(prefix.clone()));
            return;
        }
        if i > max_k {
            return;
        }
        let big_n = i128::from(n);
        let alpha = i64::from(n / 2);
        if r.unsigned_abs() <= final_bound(i).unsigned_abs() as u128 && norm + r.unsigned_abs() as u64 <= max_norm {
            prefix.push(r as i64);
            out.push(DigitVector::new(prefix.clone()));
            prefix.pop();
        }
        for d in -alpha..=alpha {
            let d128 = i128::from(d);
            if (r - d128).rem_euclid(big_n) != 0 || d128 == r {
                continue;
            }
            let cost = norm + d.unsigned_abs();
            if cost > max_norm {
                continue;
            }
            prefix.push(d);
            walk(i + 1, (r - d128) / big_n, prefix, cost, ctx, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    walk(0, v, &mut Vec::new(), 0, &(n, max_k, max_norm, final_bound), &mut out);
    out
}

/// Every vector of `B_v^{u,w}` that could be minimal, by exhaustive enumeration.
///
/// Any box vector bounds the optimum from above; a vector whose final index
/// exceeds `max(u,w)` costs at least `1 + 2k − |u − w|`, which bounds `k`.
pub fn box_candidates(u: u64, v: i128, w: u64, n: u32) -> Vec<DigitVector> {
    let p = BoxParams::new(u, w, n);
    let seed = reduce_to_box(&DigitVector::new(base_digits(v, n)), &p);
    let bound = path_length(&seed, u, w, n);
    let max_k = u.max(w).max((bound + u.abs_diff(w)) / 2) as usize;
    let final_bound = |i: usize| p.final_bound(i);
    lattice_points(v, n, max_k, bound, &final_bound)
        .into_iter()
        .filter(|x| path_length(x, u, w, n) <= bound)
        .collect()
}

fn base_digits(v: i128, n: u32) -> Vec<i64> {
    let sign = v.signum() as i64;
    let mut rest = v.unsigned_abs();
    let mut digits = Vec::new();
    while rest > 0 {
        digits.push(sign * (rest % u128::from(n)) as i64);
        rest /= u128::from(n);
    }
    digits
}

/// The minimal vector of `B_v^{u,w}` by brute force: least path length, then
/// least absolute digits in lexicographic order, then least signed digits.
pub fn oracle_minimal(u: u64, v: i128, w: u64, n: u32) -> (DigitVector, u64) {
    box_candidates(u, v, w, n)
        .into_iter()
        .map(|x| {
            let len = path_length(&x, u, w, n);
            (x, len)
        })
        .min_by(|a, b| a.1.cmp(&b.1).then_with(|| cmp_abs_lex(a.0.digits(), b.0.digits())))
        .expect("the reduced seed is always a candidate")
}

/// Whether `x` is minimal for `(u, w)` according to [`oracle_minimal`].
pub fn oracle_is_minimal(x: &DigitVector, u: u64, w: u64, n: u32) -> bool {
    let p = BoxParams::new(u, w, n);
    if !crate::digits::in_box(x, &p) {
        return false;
    }
    let Some(v) = x.sigma(n).to_i128() else { return false };
    let (best, len) = oracle_minimal(u, v, w, n);
    if path_length(x, u, w, n) != len {
        return false;
    }
    n % 2 == 1 || abs_digits(x) == abs_digits(&best)
}

fn abs_digits(x: &DigitVector) -> Vec<i64> {
    x.digits().iter().map(|d| d.abs()).collect()
}

/// Minimal preimages of `y` under `c`, found by enumerating every lattice
/// point with the same Σ and final index at most `k_y`.
pub fn oracle_preimages(y: &DigitVector, n: u32, search_bound: u64) -> Vec<DigitVector> {
    let Some(v) = y.sigma(n).to_i128() else { return Vec::new() };
    let Some(ky) = y.k() else { return vec![y.clone()] };
    let alpha = i64::from(n / 2);
    let wide = |_: usize| if n == 2 { alpha + 2 } else { alpha + 1 };
    let p = BoxParams::new(0, 0, n);
    lattice_points(v, n, ky, u64::MAX, &wide)
        .into_iter()
        .filter(|x| c_map(x, &p) == *y)
        .filter(|x| minimality_witness(x, n, search_bound, None).is_some())
        .collect()
}

/// Parses a word of the form `t^-u a^{x₀} t a^{x₁} t … a^{x_{w-1}} t` with
/// `w ≥ 1`, where each `a`-block uses a single sign. Returns `u` and the blocks.
pub fn strict_shape1_blocks(word: &[Letter]) -> Option<(u64, Vec<i64>)> {
    let mut i = 0;
    while i < word.len() && word[i] == Letter::TInv {
        i += 1;
    }
    let u = i as u64;
    let mut blocks = Vec::new();
    let mut current: i64 = 0;
    for &letter in &word[i..] {
        match letter {
            Letter::A if current >= 0 => current += 1,
            Letter::AInv if current <= 0 => current -= 1,
            Letter::T => {
                blocks.push(current);
                current = 0;
            }
            _ => return None,
        }
    }
    if current != 0 || blocks.is_empty() {
        return None;
    }
    Some((u, blocks))
}

/// Geodesic length of every element within the ball agrees with the minimal vector's path length,
/// and the produced word spells the element.
pub fn check_geodesics(ball: &CayleyBall) -> CheckReport {
    let params = ball.params();
    let n = params.n();
    let mut tally = Tally::new();
    for (g, d) in ball.elements() {
        let pw = geodesic(g, n);
        let x = minimal_vector(g, n);
        let len = path_length(&x, g.u, g.w, n);
        let ok = len == u64::from(d) && pw.word.len() == d as usize && evaluate_word(&pw.word, params) == *g;
        tally.record(ok, || format!("{g}: BFS distance {d}, minimal path length {len}, word {}", pw.word));
    }
    tally.finish(
        format!("geodesic vs BFS (n={n}, R={})", ball.radius()),
        format!("{} elements", ball.len()),
    )
}

/// Compares the language of `O_n` with the brute-force set of strict-shape-1
/// geodesic words of each length up to `max_len`, over all `4^N` words.
///
/// A template word is in the brute-force set when its length equals the BFS
/// distance of its value and its blocks are the minimal vector of that value.
pub fn check_on_language(ball: &CayleyBall, max_len: usize) -> CheckReport {
    let params = ball.params();
    let n = params.n();
    let automaton = expand_to_on(n);
    let mut minimal: HashMap<GroupElement, DigitVector> = HashMap::new();
    let mut tally = Tally::new();
    let mut accepted_total = 0u64;
    for len in 0..=max_len.min(ball.radius()) {
        let mut word = vec![Letter::A; len];
        let mut counter = vec![0usize; len];
        loop {
            for (slot, &c) in word.iter_mut().zip(&counter) {
                *slot = Letter::ALL[c];
            }
            let accepted = automaton.accepts(&word).expect("letters are in the alphabet");
            let expected = strict_shape1_blocks(&word).is_some_and(|(u, blocks)| {
                let g = evaluate_word(&word.clone().into(), params);
                let geodesic_length = ball.distance(&g) == Some(len as u32);
                geodesic_length && {
                    let x = minimal.entry(g.clone()).or_insert_with(|| minimal_vector(&g, n));
                    (g.u, g.w) == (u, blocks.len() as u64) && *x == DigitVector::new(blocks)
                }
            });
            accepted_total += u64::from(accepted);
            tally.record(accepted == expected, || {
                format!(
                    "{}: automaton {}, brute force {}",
                    crate::group::Word::new(word.clone()),
                    accepted,
                    expected
                )
            });
            let mut pos = 0;
            while pos < len && counter[pos] == 3 {
                counter[pos] = 0;
                pos += 1;
            }
            if pos == len {
                break;
            }
            counter[pos] += 1;
        }
    }
    tally.finish(
        format!("O_n language (n={n}, N≤{max_len})"),
        format!("{accepted_total} accepted words"),
    )
}

/// `|O_n(N)| ≤ |S_n(N)| ≤ 20·|O_n(N+3)|` for every `N` up to the ball radius.
pub fn check_sandwich(ball: &CayleyBall) -> CheckReport {
    let n = ball.params().n();
    let radius = ball.radius();
    let counts = expand_to_on(n).count_accepted(radius + 3);
    let spheres = ball.sphere_sizes();
    let mut tally = Tally::new();
    for (len, &s) in spheres.iter().enumerate() {
        let s = BigInt::from(s);
        let lower = BigInt::from(counts.counts()[len].clone());
        let upper = BigInt::from(counts.counts()[len + 3].clone()) * 20;
        tally.record(lower <= s && s <= upper, || {
            format!("N={len}: O(N)={lower}, S(N)={s}, 20·O(N+3)={upper}")
        });
    }
    tally.finish(
        format!("sandwich (n={n}, N≤{radius})"),
        format!("S = {spheres:?}"),
    )
}

/// Digit strings accepted by `D_n` of each length `1..=max_len`.
pub fn dn_strings(automaton: &DigitAutomaton, max_len: usize) -> Vec<Vec<i64>> {
    let digits: Vec<i64> = automaton.alphabet().iter().copied().collect();
    let mut out = Vec::new();
    let mut frontier: Vec<(Vec<i64>, usize)> = vec![(Vec::new(), automaton.start())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (prefix, state) in &frontier {
            for d in &digits {
                if let Some(t) = automaton.next(*state, d) {
                    let mut s = prefix.clone();
                    s.push(*d);
                    if automaton.is_accepting(t) {
                        out.push(s.clone());
                    }
                    next.push((s, t));
                }
            }
        }
        frontier = next;
    }
    out
}

/// Largest number of minimal preimages under `c` over all strict-shape-1
/// minimal vectors with at most `max_len` digits, against the lemma bound.
pub fn check_clamp_degree(n: u32, max_len: usize) -> CheckReport {
    let automaton = build_dn(n);
    let bound = preimage_bound(n);
    let search_bound = max_len as u64 + 3;
    let mut tally = Tally::new();
    let mut max_seen = 0;
    for y in dn_strings(&automaton, max_len) {
        let y = DigitVector::new(y);
        let k = y.k().expect("accepted strings end in a nonzero digit") as u64;
        let count = preimage_count(&y, &BoxParams::new(0, k + 1, n), search_bound);
        max_seen = max_seen.max(count);
        tally.record(count <= bound, || format!("{y}: {count} preimages, bound {bound}"));
    }
    tally.finish(
        format!("clamp degree (n={n}, length≤{max_len})"),
        format!("max preimages {max_seen}, bound {bound}"),
    )
}

/// A normal form whose image under Φ breaks one of the three Φ properties.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeMapFailure {
    pub element: GroupElement,
    pub x: DigitVector,
    pub image: PhiResult,
    pub length_ok: bool,
    pub strict: bool,
    pub minimal: bool,
    /// For `n = 2`: `x` ends in `(δ, 2δ)` preceded by a zero or nothing, where `c`
    /// yields `(…, −δ, −δ, 0, δ)` with two adjacent nonzero digits.
    pub single_run_before_two: bool,
}

/// Whether `x` ends in `(δ, 2δ)` with no nonzero digit directly before the `δ` (`n = 2` only).
pub fn single_run_before_two(x: &DigitVector, n: u32) -> bool {
    let Some(k) = x.k() else { return false };
    if n != 2 || k == 0 {
        return false;
    }
    let last = x.digit(k);
    last.abs() == 2 && x.digit(k - 1) == last.signum() && (k == 1 || x.digit(k - 2) == 0)
}

/// All normal forms with `|v| ≤ max_v` and `u, w ≤ max_uw` whose Φ image fails
/// the +3 length identity, strict shape 1, or minimality (checked by exhaustive
/// box search). Returns the failures and the number of elements examined.
pub fn shape_map_failures(n: u32, max_v: i64, max_uw: u64) -> (Vec<ShapeMapFailure>, u64) {
    let params = GroupParams::new(n).expect("n ≥ 2");
    let mut failures = Vec::new();
    let mut checked = 0;
    for u in 0..=max_uw {
        for w in 0..=max_uw {
            for v in -max_v..=max_v {
                let Ok(g) = GroupElement::new(u, v, w, params) else { continue };
                checked += 1;
                let x = minimal_vector(&g, n);
                let before = path_length(&x, u, w, n);
                let image = phi(u, w, &x, n);
                let length_ok = path_length(&image.x, image.u, image.w, n) == before + 3;
                let strict = image.x.k().is_none_or(|k| (k as u64) < image.w)
                    && Shape::of(image.x.k(), image.u, image.w) == Shape::Shape1;
                let minimal = oracle_is_minimal(&image.x, image.u, image.w, n);
                if !(length_ok && strict && minimal) {
                    failures.push(ShapeMapFailure {
                        single_run_before_two: single_run_before_two(&x, n),
                        element: g,
                        x,
                        image,
                        length_ok,
                        strict,
                        minimal,
                    });
                }
            }
        }
    }
    (failures, checked)
}

/// Φ adds exactly 3 to the path length, lands in strict shape 1 and yields a
/// minimal vector, for every normal form with `|v| ≤ max_v` and `u, w ≤ max_uw`.
pub fn check_shape_map(n: u32, max_v: i64, max_uw: u64) -> CheckReport {
    let (failures, checked) = shape_map_failures(n, max_v, max_uw);
    let pattern = failures.iter().filter(|f| f.single_run_before_two).count();
    let mut summary = format!("{checked} elements, {} failing", failures.len());
    if pattern > 0 {
        summary += &format!(", {pattern} of them ending in a lone (δ, 2δ) with n = 2");
    }
    CheckReport {
        name: format!("shape map (n={n}, |v|≤{max_v}, u,w≤{max_uw})"),
        passed: failures.is_empty(),
        checked,
        failures: failures
            .iter()
            .take(MAX_LISTED_FAILURES)
            .map(|f| {
                format!(
                    "{}: x={} → ({}, {}, {}), length {}, strict {}, minimal {}",
                    f.element, f.x, f.image.u, f.image.w, f.image.x, f.length_ok, f.strict, f.minimal
                )
            })
            .collect(),
        summary,
    }
}

/// Bounds for [`run_suite`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub radius: usize,
    pub node_budget: usize,
    /// Longest words for the `O_n` language comparison (capped by the radius).
    pub language_len: usize,
    pub clamp_len: usize,
    /// Also run [`check_shape_map`], which is not part of the default suite.
    pub shape_map: bool,
    pub shape_max_v: i64,
    pub shape_max_uw: u64,
}

impl SuiteConfig {
    pub fn new(radius: usize, node_budget: usize) -> Self {
        SuiteConfig {
            radius,
            node_budget,
            language_len: radius.min(8),
            clamp_len: 6,
            shape_map: false,
            shape_max_v: 100,
            shape_max_uw: 4,
        }
    }
}

/// Outcome of [`run_suite`]. `error` is set when the BFS budget ran out; the
/// ball-based checks are then skipped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub n: u32,
    pub reports: Vec<CheckReport>,
    pub error: Option<String>,
    pub partial_spheres: Vec<u64>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.reports.iter().all(|r| r.passed)
    }
}

/// Runs every oracle check for one `n`.
pub fn run_suite(n: u32, config: &SuiteConfig) -> Result<SuiteReport, GroupError> {
    let params = GroupParams::new(n)?;
    let mut reports = Vec::new();
    let mut error = None;
    let mut partial_spheres = Vec::new();
    match bfs_spheres(params, config.radius, config.node_budget) {
        Ok(ball) => {
            partial_spheres = ball.sphere_sizes();
            reports.push(check_geodesics(&ball));
            reports.push(check_on_language(&ball, config.language_len));
            reports.push(check_sandwich(&ball));
        }
        Err(e @ GroupError::BudgetExceeded { .. }) => {
            if let GroupError::BudgetExceeded { sphere_sizes, .. } = &e {
                partial_spheres = sphere_sizes.clone();
            }
            error = Some(e.to_string());
        }
        Err(e) => return Err(e),
    }
    reports.push(check_clamp_degree(n, config.clamp_len));
    if config.shape_map {
        reports.push(check_shape_map(n, config.shape_max_v, config.shape_max_uw));
    }
    Ok(SuiteReport {
        n,
        reports,
        error,
        partial_spheres,
    })
}
