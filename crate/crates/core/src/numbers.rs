//! Exact integer sequences used by the formulas.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// `binom(n, k)`, zero when `k < 0`, `n < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Catalan number `binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n as i64, n as i64) / (n + 1)
}

/// Fibonacci numbers with `F_0 = F_1 = 1`.
pub fn fibonacci(n: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    for _ in 0..n {
        let c = &a + &b;
        a = b;
        b = c;
    }
    a
}

/// Size of the full space of nonnesting permutations of size `n`: `(2n)! / (n+1)!`.
pub fn nonnesting_total(n: u64) -> BigUint {
    factorial(2 * n) / factorial(n + 1)
}

pub fn pow(base: i64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        let cat: Vec<BigUint> = (0..8).map(catalan).collect();
        assert_eq!(cat, [1u32, 1, 2, 5, 14, 42, 132, 429].map(BigUint::from));
        let fib: Vec<BigUint> = (0..7).map(fibonacci).collect();
        assert_eq!(fib, [1u32, 1, 2, 3, 5, 8, 13].map(BigUint::from));
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(-1, 0), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(nonnesting_total(8), BigUint::from(57657600u64));
    }
}
