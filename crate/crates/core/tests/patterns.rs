mod common;

use common::*;
use nonnest::nonnesting::satisfies_queue_discipline;
use nonnest::{contains_pattern, is_nonnesting, Matching, NonnestingPermutation, Word};
use proptest::prelude::*;

fn small_word(max_len: usize, max_val: u32) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=max_val, 0..=max_len).prop_map(|v| Word::new(v).unwrap())
}

fn pattern(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1u32..=4, 1..=max_len).prop_map(|v| Word::new(v).unwrap().standardize())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn containment_is_prefix_monotone(w in small_word(12, 6), p in pattern(4)) {
        let mut seen = false;
        for k in 0..=w.len() {
            let now = contains_pattern(&w.prefix(k), &p);
            prop_assert!(!seen || now, "lost {} at prefix {}", p, k);
            seen = now;
        }
    }

    #[test]
    fn containment_matches_naive(w in small_word(10, 5), p in pattern(4)) {
        prop_assert_eq!(contains_pattern(&w, &p), contains_naive(w.letters(), p.letters()));
    }

    #[test]
    fn containment_commutes_with_symmetries(w in small_word(10, 6), p in pattern(4)) {
        let base = contains_pattern(&w, &p);
        prop_assert_eq!(base, contains_pattern(&w.reverse(), &p.reverse()));
        prop_assert_eq!(base, contains_pattern(&w.complement(), &p.complement()));
        prop_assert_eq!(base, contains_pattern(&w.reverse_complement(), &p.reverse_complement()));
    }

    #[test]
    fn standardize_is_idempotent_and_preserves_containment(w in small_word(10, 9), p in prop::collection::vec(1u32..=9, 1..=4)) {
        let p = Word::new(p).unwrap();
        let s = w.standardize();
        prop_assert_eq!(s.standardize(), s.clone());
        prop_assert_eq!(contains_pattern(&w, &p), contains_pattern(&s, &p.standardize()));
    }
}

#[test]
fn three_nonnesting_tests_agree() {
    for n in 0..=5 {
        for letters in doubled_arrangements(n) {
            let w = Word::new(letters.clone()).unwrap();
            let by_patterns = is_nonnesting(&w).unwrap();
            assert_eq!(by_patterns, satisfies_queue_discipline(&w).unwrap(), "{w}");
            assert_eq!(by_patterns, Matching::of_word(&w).unwrap().is_nonnesting(), "{w}");
            assert_eq!(by_patterns, nonnesting_by_arcs(&letters), "{w}");
        }
    }
}

#[test]
fn examples_from_the_definitions() {
    assert!(is_nonnesting(&word("1521352434")).unwrap());
    assert!(!is_nonnesting(&word("13241342")).unwrap());
    assert!(is_nonnesting(&word("121")).is_err());
    assert_eq!(word("1122").descent_count(), 0);
    assert_eq!(word("2211").descent_count(), 1);
    assert_eq!(word("1521352434").descent_count(), 4);
    let pi = NonnestingPermutation::new(word("1521352434")).unwrap();
    assert_eq!(pi.underlying_permutation(), word("15234"));
}

const S3: [&str; 6] = ["123", "132", "213", "231", "312", "321"];

fn with_letter_doubled(ijk: &str, pos: usize) -> Word {
    let mut v = word(ijk).into_letters();
    v.insert(pos, v[pos]);
    Word::new(v).unwrap()
}

#[test]
fn middle_repeat_reduces_to_underlying_permutation() {
    for n in 1..=6 {
        for pi in nonnest::generate_nonnesting(n) {
            let hat = pi.underlying_permutation();
            for s in S3 {
                let ijjk = with_letter_doubled(s, 1);
                assert_eq!(contains_pattern(pi.word(), &ijjk), contains_pattern(&hat, &word(s)), "{pi} {ijjk}");
            }
        }
    }
}

#[test]
fn outer_repeats_force_middle_repeat_avoidance() {
    for n in 1..=6 {
        for pi in nonnest::generate_nonnesting(n) {
            for s in S3 {
                let iijk = with_letter_doubled(s, 0);
                let ijjk = with_letter_doubled(s, 1);
                let ijkk = with_letter_doubled(s, 2);
                let avoids_middle = !contains_pattern(pi.word(), &ijjk);
                if !contains_pattern(pi.word(), &iijk) || !contains_pattern(pi.word(), &ijkk) {
                    assert!(avoids_middle, "{pi} {s}");
                }
            }
        }
    }
}
