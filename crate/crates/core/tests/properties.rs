use bsgeo::automata::{build_dn, build_dn_prime, expand_to_on};
use bsgeo::digits::{in_box, reduce_to_box, BoxParams, DigitVector};
use bsgeo::geodesic::{eta, is_minimal, minimal_vector, minimal_vector_for, path_length};
use bsgeo::group::{evaluate_word, inverse, multiply, GroupElement, GroupParams, Letter, Word};
use bsgeo::growth::{root_sequence, smallest_root, theorem_polynomial};
use bsgeo::shape_map::{beta, c_map};
use num_bigint::BigInt;
use proptest::prelude::*;

fn letter() -> impl Strategy<Value = Letter> {
    prop::sample::select(Letter::ALL.to_vec())
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..max).prop_map(Word::new)
}

fn element(n: u32) -> impl Strategy<Value = GroupElement> {
    let params = GroupParams::new(n).unwrap();
    (0u64..6, -2000i64..2000, 0u64..6).prop_map(move |(u, v, w)| GroupElement::normalized(u, BigInt::from(v), w, params))
}

proptest! {
    #[test]
    fn evaluation_is_a_homomorphism(n in 2u32..7, a in word(16), b in word(16)) {
        let p = GroupParams::new(n).unwrap();
        let joined = evaluate_word(&a.concat(&b), p);
        prop_assert_eq!(joined, multiply(&evaluate_word(&a, p), &evaluate_word(&b, p), p));
    }

    #[test]
    fn inverses_cancel(n in 2u32..7, w in word(20)) {
        let p = GroupParams::new(n).unwrap();
        let g = evaluate_word(&w, p);
        prop_assert!(multiply(&g, &inverse(&g, p), p).is_identity());
        prop_assert_eq!(evaluate_word(&w.inverse(), p), inverse(&g, p));
        prop_assert!(g.is_normal(p));
    }

    #[test]
    fn spelling_round_trips(n in 2u32..7, w in word(20)) {
        let p = GroupParams::new(n).unwrap();
        let g = evaluate_word(&w, p);
        prop_assert_eq!(evaluate_word(&g.spell().unwrap(), p), g);
        let shown: Word = w.to_string().parse().unwrap();
        prop_assert_eq!(&shown, &w);
        let compact: Word = w.to_compact().parse().unwrap();
        prop_assert_eq!(compact, w);
    }

    #[test]
    fn reduction_keeps_sigma_and_never_lengthens(
        n in 2u32..7,
        digits in prop::collection::vec(-40i64..40, 0..7),
        u in 0u64..6,
        w in 0u64..6,
    ) {
        let x = DigitVector::new(digits);
        let p = BoxParams::new(u, w, n);
        let y = reduce_to_box(&x, &p);
        prop_assert_eq!(y.sigma(n), x.sigma(n));
        prop_assert!(in_box(&y, &p));
        prop_assert!(path_length(&y, u, w, n) <= path_length(&x, u, w, n));
    }

    #[test]
    fn eta_spells_the_element_with_the_stated_length(
        n in 2u32..7,
        digits in prop::collection::vec(-1i64..=1, 0..7),
        u in 0u64..6,
        w in 0u64..6,
    ) {
        let x = DigitVector::new(digits);
        let p = GroupParams::new(n).unwrap();
        let pw = eta(&x, u, w, n);
        prop_assert_eq!(pw.word.len() as u64, path_length(&x, u, w, n));
        let expected = GroupElement::normalized(u, x.sigma(n), w, p);
        prop_assert_eq!(evaluate_word(&pw.word, p), expected);
    }

    #[test]
    fn minimal_vectors_are_minimal_lattice_points(g in element(2)) {
        for n in [2u32, 3, 4, 5, 6] {
            let g = GroupElement::normalized(g.u, g.v.clone(), g.w, GroupParams::new(n).unwrap());
            let x = minimal_vector(&g, n);
            let p = BoxParams::new(g.u, g.w, n);
            prop_assert!(in_box(&x, &p));
            prop_assert_eq!(x.sigma(n), g.v.clone());
            prop_assert!(is_minimal(&x, g.u, g.w, n));
            let seed = reduce_to_box(&DigitVector::new(vec![i64::try_from(&g.v).unwrap()]), &p);
            prop_assert!(path_length(&x, g.u, g.w, n) <= path_length(&seed, g.u, g.w, n));
        }
    }

    #[test]
    fn c_preserves_sigma_and_the_prefix(n in 2u32..7, g in element(2)) {
        let g = GroupElement::normalized(g.u, g.v, g.w, GroupParams::new(n).unwrap());
        let x = minimal_vector(&g, n);
        let p = BoxParams::new(g.u, g.w, n);
        let cx = c_map(&x, &p);
        prop_assert_eq!(cx.sigma(n), x.sigma(n));
        prop_assert!(cx.l1_norm() <= x.l1_norm());
        prop_assert!(beta(&x, &p) >= 3);
        if cx != x {
            let (k, kc) = (x.k().unwrap(), cx.k().unwrap());
            prop_assert!(kc == k + 1 || kc == k + 2);
            let alpha = p.alpha();
            let j = (0..=k).rev().take_while(|&i| 2 * x.digit(i).abs() >= i64::from(n)).last().unwrap();
            prop_assert_eq!(&cx.digits()[..j], &x.digits()[..j]);
            prop_assert!(cx.digits().iter().all(|d| d.abs() <= alpha));
        }
    }

    #[test]
    fn minimal_search_matches_symmetric_boxes(n in 2u32..7, v in -3000i64..3000, u in 0u64..8, w in 0u64..8) {
        let (_, a) = minimal_vector_for(u, &BigInt::from(v), w, n);
        let (_, b) = minimal_vector_for(w, &BigInt::from(v), u, n);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn dn_is_contained_in_dn_prime(n in 2u32..9, s in prop::collection::vec(-4i64..=4, 0..10)) {
        let alpha = i64::from(n / 2);
        let s: Vec<i64> = s.into_iter().map(|d| d.clamp(-alpha, alpha)).collect();
        if build_dn(n).accepts(&s).unwrap() {
            prop_assert!(build_dn_prime(n).accepts(&s).unwrap());
        }
    }
}

#[test]
fn dn_contained_in_dn_prime_exhaustively() {
    for n in 2..=8u32 {
        let dn = build_dn(n);
        let dp = build_dn_prime(n);
        let digits: Vec<i64> = dn.alphabet().iter().copied().collect();
        let mut layer: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..=6 {
            for s in &layer {
                if dn.accepts(s).unwrap() {
                    assert!(dp.accepts(s).unwrap(), "n={n} {s:?}");
                }
            }
            layer = layer
                .iter()
                .flat_map(|s| digits.iter().map(move |&d| [s.as_slice(), &[d]].concat()))
                .collect();
        }
    }
}

#[test]
fn on_counts_are_monotone() {
    for n in 2..=8 {
        let counts = expand_to_on(n).count_accepted(60);
        for pair in counts.counts()[1..].windows(2) {
            assert!(pair[0] <= pair[1], "n={n}");
        }
    }
}

#[test]
fn roots_decrease_toward_the_limit_within_each_parity() {
    let limit = 2f64.sqrt() - 1.0;
    let roots = root_sequence(3..=51).unwrap();
    for parity in [0, 1] {
        let seq: Vec<f64> = roots.iter().filter(|(n, _)| n % 2 == parity).map(|&(_, r)| r).collect();
        for pair in seq.windows(2) {
            assert!(pair[1] < pair[0] + 1e-12, "{pair:?}");
            assert!(pair[1] > limit);
        }
    }
    let r2 = smallest_root(&theorem_polynomial(2).unwrap()).unwrap();
    assert!(r2 > roots[1].1);
}
