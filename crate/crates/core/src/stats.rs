//! Descent statistics: Narayana polynomials and the factorization of descent
//! polynomials for patterns of the form `i j j k`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use serde::Serialize;

use crate::enumerate::{descent_polynomial, sn_descent_polynomial};
use crate::error::{Error, Result};
use crate::numbers::binomial;
use crate::pattern::PatternSet;
use crate::poly::IntPolynomial;
use crate::word::Word;

/// `N_n(t) = sum_{d=0}^{n-1} (1/n) binom(n,d) binom(n,d+1) t^d`.
pub fn narayana(n: usize) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(Error::Precondition("Narayana polynomial needs n >= 1".into()));
    }
    let nn = n as i64;
    let coeffs = (0..nn)
        .map(|d| {
            let num = binomial(nn, d) * binomial(nn, d + 1);
            let (q, r) = num.div_rem(&BigUint::from(n));
            assert!(r == BigUint::default(), "Narayana coefficient ({n},{d}) is not integral");
            BigInt::from(q)
        })
        .collect();
    Ok(IntPolynomial::new(coeffs))
}

/// `{ s1 s2 s2 s3 : s in sigma }` for patterns of length 3 with distinct letters.
pub fn doubled_middle(sigma: &PatternSet) -> Result<PatternSet> {
    let doubled = sigma
        .iter()
        .map(|s| {
            let l = s.letters();
            if l.len() != 3 || !s.is_permutation() {
                return Err(Error::Precondition(format!("{s} is not a permutation of length 3")));
            }
            Ok(Word::from_vec_unchecked(vec![l[0], l[1], l[1], l[2]]))
        })
        .collect::<Result<Vec<_>>>()?;
    PatternSet::new(doubled)
}

#[derive(Clone, Debug, Serialize)]
pub struct Factorization {
    pub n: usize,
    pub sigma: String,
    pub lambda: String,
    /// Descent polynomial over the nonnesting avoiders of the doubled patterns.
    pub left: IntPolynomial,
    /// `N_n(t)` times the descent polynomial over permutations avoiding sigma.
    pub right: IntPolynomial,
    pub holds: bool,
}

/// Compares both sides of the descent factorization for `sigma`, a set of
/// length-3 permutation patterns.
pub fn check_factorization(n: usize, sigma: &PatternSet) -> Result<Factorization> {
    let lambda = doubled_middle(sigma)?;
    let left = descent_polynomial(n, &lambda);
    let right = &narayana(n)? * &sn_descent_polynomial(n, sigma);
    Ok(Factorization {
        n,
        sigma: sigma.to_compact(),
        lambda: lambda.to_compact(),
        holds: left == right,
        left,
        right,
    })
}

/// All `2^6` subsets of the permutations of length 3.
pub fn s3_subsets() -> Vec<PatternSet> {
    let perms = ["123", "132", "213", "231", "312", "321"];
    (0u32..64)
        .map(|mask| {
            let words = perms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, p)| p.parse::<Word>().expect("static"));
            PatternSet::new(words).expect("static")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::catalan;
    use crate::pattern::ps;

    #[test]
    fn narayana_values() {
        assert_eq!(narayana(1).unwrap(), IntPolynomial::one());
        assert_eq!(narayana(3).unwrap(), IntPolynomial::from_i64(&[1, 3, 1]));
        assert!(narayana(0).is_err());
        for n in 1..=10 {
            assert_eq!(narayana(n).unwrap().eval_at_one(), BigInt::from(catalan(n as u64)));
        }
    }

    #[test]
    fn doubling() {
        assert_eq!(doubled_middle(&ps("132,213")).unwrap(), ps("1332,2113"));
        assert!(doubled_middle(&ps("1223")).is_err());
        assert!(doubled_middle(&ps("112")).is_err());
    }

    #[test]
    fn sn_descents_small() {
        assert_eq!(sn_descent_polynomial(3, &PatternSet::empty()), IntPolynomial::from_i64(&[1, 4, 1]));
        assert_eq!(sn_descent_polynomial(3, &ps("123")).eval_at_one(), BigInt::from(5));
        assert_eq!(sn_descent_polynomial(1, &ps("123,321")), IntPolynomial::one());
    }

    #[test]
    fn factorization_for_132() {
        for n in 1..=5 {
            let f = check_factorization(n, &ps("132")).unwrap();
            assert!(f.holds, "n={n}");
            let nar = narayana(n).unwrap();
            assert_eq!(f.left, &nar * &nar);
        }
    }

    #[test]
    fn subsets_of_s3() {
        let all = s3_subsets();
        assert_eq!(all.len(), 64);
        assert!(all[0].is_empty());
        assert_eq!(all[63].len(), 6);
    }
}
