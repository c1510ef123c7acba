mod common;

use std::collections::BTreeSet;

use common::set;
use nonnest::bijections::*;
use nonnest::numbers::{binomial, catalan};
use nonnest::{count_avoiders, generate_avoiders, NonnestingPermutation};
use num_bigint::BigUint;
use proptest::prelude::*;

fn nn(s: &str) -> NonnestingPermutation {
    NonnestingPermutation::new(s.parse().unwrap()).unwrap()
}

#[test]
fn every_map_certifies_through_six() {
    for r in certify_all(6) {
        assert!(r.passed(), "{}", serde_json::to_string(&r).unwrap());
    }
}

#[test]
fn report_json_shape() {
    let v = serde_json::to_value(certify_thm_2231(3)).unwrap();
    for key in ["n", "domainSize", "roundTripFailures", "imageMismatch"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn dyck_images_are_dyck() {
    for n in 1..=6 {
        let mut seen = BTreeSet::new();
        for pi in nonnest::generate_nonnesting(n) {
            let w = nn_to_dyck(&pi);
            let mut h = 0i64;
            for s in w.steps() {
                h += if *s == Step::U { 1 } else { -1 };
                assert!(h >= 0);
            }
            assert_eq!(h, 0);
            seen.insert(w);
        }
        assert_eq!(BigUint::from(seen.len()), catalan(n as u64));
    }
}

#[test]
fn thm_2231_images_have_a_double_rise() {
    for n in 1..=6 {
        let mut count = 0u64;
        for pi in generate_avoiders(n, &thm_2231_patterns()) {
            let w = thm_2231_bijection(&pi).unwrap();
            assert!(!w.is_sawtooth());
            assert!(w.steps().windows(2).any(|p| p == [Step::U, Step::U]), "{pi} -> {w}");
            count += 1;
        }
        assert_eq!(BigUint::from(count), catalan(n as u64 + 1) - 1u32);
    }
}

#[test]
fn grand_dyck_image_size() {
    for n in 1..=6 {
        let codes: BTreeSet<GrandDyckCode> = generate_avoiders(n, &grand_dyck_patterns())
            .map(|pi| grand_dyck_encoding(&pi).unwrap())
            .collect();
        let expected = binomial(2 * n as i64, n as i64) - (BigUint::from(1u32) << (n - 1));
        assert_eq!(BigUint::from(codes.len()), expected, "n = {n}");
        assert_eq!(count_avoiders(n, &set("1322,2231")), expected);
        let balanced = codes.iter().filter(|c| matches!(c, GrandDyckCode::Balanced { .. })).count();
        assert_eq!(balanced, 1 << (n - 1));
    }
}

#[test]
fn worked_examples() {
    let pi = nn("12 11 12 10 9 8 7 11 1 2 10 3 4 9 8 5 7 1 2 3 4 5 6 6");
    let w = thm_2231_bijection(&pi).unwrap();
    assert_eq!(w.to_string(), "UUDUUUUDUUDUDDUDUDDDUDDDUD");
    assert_eq!(thm_2231_inverse(&w).unwrap(), pi);

    let pi = nn("17 16 17 16 15 15 12 11 10 12 9 8 11 7 10 5 4 1 2 3 6 9 8 7 5 4 1 2 3 6 13 14 13 14");
    let code = grand_dyck_encoding(&pi).unwrap();
    assert_eq!(code, GrandDyckCode::EndsDown { word: "UUDDUDDDUUUUUDUUDUUDDDDD".parse().unwrap(), b2: vec![2, 3, 6] });
}

#[test]
fn out_of_domain_inputs_are_rejected() {
    assert!(thm_2231_bijection(&nn("113232")).is_err());
    assert!(grand_dyck_encoding(&nn("132132")).is_err());
    assert!(thm_2231_inverse(&DyckWord::sawtooth(4)).is_err());
}

/// A Dyck word of semilength `m` steered by `bits`.
fn steered_dyck(m: usize, bits: &[bool]) -> DyckWord {
    let (mut ups, mut h) = (0, 0);
    let mut steps = Vec::with_capacity(2 * m);
    for &b in bits.iter().take(2 * m) {
        let up = if ups == m { false } else if h == 0 { true } else { b };
        if up {
            ups += 1;
            h += 1;
            steps.push(Step::U);
        } else {
            h -= 1;
            steps.push(Step::D);
        }
    }
    DyckWord::new(steps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_then_forward_is_identity(m in 2usize..=14, bits in prop::collection::vec(any::<bool>(), 28)) {
        let w = steered_dyck(m, &bits);
        prop_assume!(!w.is_sawtooth());
        let pi = thm_2231_inverse(&w).unwrap();
        prop_assert_eq!(pi.n(), m - 1);
        prop_assert_eq!(thm_2231_bijection(&pi).unwrap(), w);
    }

    #[test]
    fn sorted_duplication_round_trips(p in Just((1..=7u32).collect::<Vec<_>>()).prop_shuffle()) {
        let p = nonnest::Word::new(p).unwrap();
        let pi = duplicate(&p).unwrap();
        prop_assert_eq!(undup(&pi).unwrap(), p);
    }
}
