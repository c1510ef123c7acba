mod common;

use common::set;
use nonnest::catalog::{
    builtin_catalog, find_entry, group_sizes, sequence, verify, verify_set_with, CatalogEntry, Status, ValueSource,
};
use nonnest::numbers::catalan;
use nonnest::{count_avoiders, descent_polynomial, symmetry_orbit};
use num_bigint::{BigInt, BigUint};

fn entry(patterns: &str) -> CatalogEntry {
    find_entry(&builtin_catalog(), patterns).unwrap_or_else(|| panic!("no entry {patterns}")).clone()
}

fn value(patterns: &str, n: usize) -> BigInt {
    entry(patterns).evaluate(n).unwrap().value
}

#[test]
fn groups_have_expected_sizes() {
    let sizes = group_sizes(&builtin_catalog());
    assert_eq!(sizes["len3"], 17);
    assert_eq!(sizes["len4-pairs"], 20);
    assert_eq!(sizes["len4-triples"], 32);
    assert_eq!(sizes["conjectures"], 5);
}

#[test]
fn stated_values() {
    assert_eq!(value("132,213", 4), 25.into());
    assert_eq!(value("123,231", 2), 4.into());
    assert_eq!(value("123,321", 6), 0.into());
    assert_eq!(value("1322,2231", 3), 16.into());
}

#[test]
fn small_sizes_fall_back_to_counting() {
    let e = entry("123,321");
    assert_eq!(e.valid_from, 5);
    for n in 1..5 {
        let ev = e.evaluate(n).unwrap();
        assert_eq!(ev.source, ValueSource::OracleFilled);
        assert_eq!(ev.value, count_avoiders(n, &e.key()).into());
    }
    assert_eq!(e.evaluate(5).unwrap().source, ValueSource::Formula);
}

#[test]
fn middle_repeat_family_equals_n_times_catalan() {
    let e = entry("1223,1332,2331");
    for n in 1..=12 {
        let expected = catalan(n as u64) * BigUint::from(n);
        assert_eq!(e.evaluate(n).unwrap().value, expected.into(), "n = {n}");
    }
}

#[test]
fn every_proven_entry_and_its_symmetry_images_verify() {
    for e in builtin_catalog().iter().filter(|e| e.status == Status::Proven) {
        for image in symmetry_orbit(&e.key()) {
            let r = verify_set_with(e, &image, 6, count_avoiders);
            assert!(r.all_match(), "{} via {}: {:?} {:?}", e.anchor, image, r.rows, r.errors);
        }
    }
}

#[test]
fn descent_polynomials_sum_to_counts() {
    for e in builtin_catalog() {
        let key = e.key();
        for n in 1..=6 {
            let poly = descent_polynomial(n, &key);
            assert_eq!(poly.eval_at_one(), count_avoiders(n, &key).into(), "{} at n = {n}", e.anchor);
        }
    }
}

#[test]
fn catalan_column_for_112() {
    let r = verify(&entry("112"), 7);
    let observed: Vec<BigInt> = r.rows.iter().map(|x| x.observed.clone()).collect();
    let expected: Vec<BigInt> = [1, 2, 5, 14, 42, 132, 429].into_iter().map(BigInt::from).collect();
    assert!(r.passed());
    assert_eq!(observed, expected);
}

#[test]
fn five_patterns_leave_one() {
    let r = verify(&entry("123,132,213,231,312"), 6);
    assert!(r.passed());
    assert!(r.rows.iter().filter(|x| x.n >= 3).all(|x| x.observed == 1.into()));
}

#[test]
fn sequences() {
    let as_u64 = |v: Vec<BigUint>| v.into_iter().map(|x| u64::try_from(x).unwrap()).collect::<Vec<_>>();
    assert_eq!(as_u64(sequence(&set(""), 4)), vec![1, 4, 30, 336]);
    assert_eq!(as_u64(sequence(&set("1221,2112"), 4)), vec![1, 4, 30, 336]);
    assert_eq!(as_u64(sequence(&set("123"), 6)), vec![1, 4, 17, 82, 406, 2070]);
}

#[test]
fn conjectures_agree_through_six() {
    for e in builtin_catalog().iter().filter(|e| e.status == Status::Conjectured) {
        let r = verify(e, 6);
        assert!(r.all_match(), "{}: {:?}", e.anchor, r.rows);
    }
}
