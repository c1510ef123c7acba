mod common;

use common::set;
use nonnest::series::{egf_coefficients, EgfSpec};
use nonnest::{count_avoiders, Series};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const ORDER: usize = 20;

fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..=50, 1i64..=12).prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

fn series(constant: impl Strategy<Value = BigRational>) -> impl Strategy<Value = Series> {
    (constant, prop::collection::vec(rational(), ORDER)).prop_map(|(c0, rest)| {
        let mut v = vec![c0];
        v.extend(rest);
        Series::new(v, ORDER)
    })
}

fn nonzero() -> impl Strategy<Value = BigRational> {
    rational().prop_filter("nonzero", |r| *r != BigRational::from_integer(0.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn division_undoes_multiplication(a in series(rational()), b in series(nonzero())) {
        let q = a.div(&b).unwrap();
        prop_assert_eq!(&q * &b, a);
    }

    #[test]
    fn square_root_squares_back(a in series(Just(BigRational::from_integer(1.into())))) {
        let s = a.sqrt().unwrap();
        prop_assert_eq!(&s * &s, a);
    }
}

fn ints(s: &Series) -> Vec<i64> {
    s.integer_coefficients().unwrap().iter().map(|c| i64::try_from(c).unwrap()).collect()
}

#[test]
fn rational_ogf_satisfies_its_recurrence() {
    let c = ints(&Series::from_i64(&[1, -1], ORDER).div(&Series::from_i64(&[1, -2, -2, 2], ORDER)).unwrap());
    assert_eq!(&c[..3], &[1, 1, 4]);
    for n in 3..=ORDER {
        assert_eq!(c[n], 2 * c[n - 1] + 2 * c[n - 2] - 2 * c[n - 3], "n = {n}");
    }
    for n in 1..=7 {
        assert_eq!(BigInt::from(c[n]), count_avoiders(n, &set("123,132,213")).into(), "n = {n}");
    }
}

#[test]
fn algebraic_ogf_solves_its_quadratic() {
    let order = ORDER + 1;
    let root = Series::from_i64(&[1, -8, 4], order).sqrt().unwrap();
    let numerator = &Series::from_i64(&[1, 2], order) - &root;
    let b = numerator.shift_down(1).unwrap().scale(&BigRational::new(1.into(), 6.into()));
    assert_eq!(b.order(), ORDER);
    let x = Series::x(ORDER);
    let lhs = &(&(&x * &(&b * &b)).scale(&BigRational::from_integer(3.into())) - &(&Series::from_i64(&[1, 2], ORDER) * &b))
        + &Series::one(ORDER);
    assert_eq!(lhs, Series::constant(0, ORDER));
    let coeffs = ints(&b);
    assert_eq!(&coeffs[..6], &[1, 1, 4, 19, 100, 562]);
    for n in 1..=6 {
        assert_eq!(BigInt::from(coeffs[n]), count_avoiders(n, &set("1231,1321,2113")).into(), "n = {n}");
    }
}

#[test]
fn exponential_gf_matches_counts() {
    let a = egf_coefficients(&EgfSpec::Riccati { quadratic: 3, linear: -2 }, 8).unwrap();
    assert_eq!(a[1], 1.into());
    assert_eq!(a[2], 4.into());
    for n in 1..=6 {
        assert_eq!(a[n], count_avoiders(n, &set("1231,1321")).into(), "n = {n}");
    }
}

#[test]
fn division_by_zero_constant_fails() {
    assert!(Series::one(4).div(&Series::x(4)).is_err());
    assert!(Series::from_i64(&[2, 1], 4).sqrt().is_err());
    assert!(Series::from_i64(&[1, 1], 4).shift_down(1).is_err());
}
