//! Truncated formal power series with exact rational coefficients.
//!
//! A series of order `N` stores `c_0..=c_N`. Binary operations truncate to
//! the smaller order of their operands.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_ORDER: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coefficients: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Series {
    /// Pads or truncates `coefficients` to exactly `order + 1` terms.
    pub fn new(mut coefficients: Vec<BigRational>, order: usize) -> Self {
        coefficients.resize(order + 1, BigRational::zero());
        Series { coefficients }
    }

    pub fn from_i64(coefficients: &[i64], order: usize) -> Self {
        Series::new(coefficients.iter().map(|&c| rat(c)).collect(), order)
    }

    pub fn constant(c: i64, order: usize) -> Self {
        Series::from_i64(&[c], order)
    }

    pub fn one(order: usize) -> Self {
        Series::constant(1, order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Series::from_i64(&[0, 1], order)
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn coefficient(&self, n: usize) -> &BigRational {
        &self.coefficients[n]
    }

    pub fn truncate(&self, order: usize) -> Series {
        Series::new(self.coefficients[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    /// Coefficients as integers; fails if any is not integral.
    pub fn integer_coefficients(&self) -> Result<Vec<BigInt>> {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::Series(format!("coefficient {i} is {c}, not an integer")))
                }
            })
            .collect()
    }

    pub fn scale(&self, k: &BigRational) -> Series {
        Series { coefficients: self.coefficients.iter().map(|c| c * k).collect() }
    }

    /// Quotient `q` with `q * b = a` up to the common order.
    pub fn div(&self, b: &Series) -> Result<Series> {
        let b0 = &b.coefficients[0];
        if b0.is_zero() {
            return Err(Error::Series("divisor has zero constant term".into()));
        }
        let order = self.order().min(b.order());
        let mut q: Vec<BigRational> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coefficients[n].clone();
            for k in 0..n {
                acc -= &q[k] * &b.coefficients[n - k];
            }
            q.push(acc / b0);
        }
        Ok(Series::new(q, order))
    }

    /// Square root with constant term 1, for a series with constant term 1.
    ///
    /// From `s*s = a`: `2 s_0 s_n = a_n - sum_{k=1}^{n-1} s_k s_{n-k}`.
    pub fn sqrt(&self) -> Result<Series> {
        if !self.coefficients[0].is_one() {
            return Err(Error::Series(format!(
                "sqrt needs constant term 1, got {}",
                self.coefficients[0]
            )));
        }
        let order = self.order();
        let mut s: Vec<BigRational> = Vec::with_capacity(order + 1);
        s.push(BigRational::one());
        let two = rat(2);
        for n in 1..=order {
            let mut acc = self.coefficients[n].clone();
            for k in 1..n {
                acc -= &s[k] * &s[n - k];
            }
            s.push(acc / &two);
        }
        Ok(Series::new(s, order))
    }

    /// Divides by `x^k`; the first `k` coefficients must vanish. Loses `k` orders.
    pub fn shift_down(&self, k: usize) -> Result<Series> {
        if k > self.order() {
            return Err(Error::Series(format!("cannot divide order {} series by x^{k}", self.order())));
        }
        if let Some(i) = self.coefficients[..k].iter().position(|c| !c.is_zero()) {
            return Err(Error::Series(format!("coefficient {i} is nonzero; not divisible by x^{k}")));
        }
        Ok(Series::new(self.coefficients[k..].to_vec(), self.order() - k))
    }

    pub fn pow(&self, e: u32) -> Series {
        (0..e).fold(Series::one(self.order()), |acc, _| &acc * self)
    }

    /// Coefficients as exact decimal strings (`p` or `p/q`), for JSON dumps.
    pub fn to_strings(&self) -> Vec<String> {
        self.coefficients.iter().map(ToString::to_string).collect()
    }
}

impl Add for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series::new((0..=order).map(|i| &self.coefficients[i] + &rhs.coefficients[i]).collect(), order)
    }
}

impl Sub for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series::new((0..=order).map(|i| &self.coefficients[i] - &rhs.coefficients[i]).collect(), order)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series { coefficients: self.coefficients.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coefficients.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Series::new(out, order)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}x")?,
                _ => write!(f, "{mag}x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// Exponential generating functions handled through integer recurrences.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum EgfSpec {
    /// The solution of `A' = quadratic * A^2 + linear * A` with `A(0) = 1`.
    /// `quadratic = 3, linear = -2` gives `2 / (3 - e^{2x})`.
    Riccati { quadratic: i64, linear: i64 },
}

/// `a_n = n! [x^n] A(x)` for `n = 0..=order`.
pub fn egf_coefficients(spec: &EgfSpec, order: usize) -> Result<Vec<BigInt>> {
    match *spec {
        EgfSpec::Riccati { quadratic, linear } => {
            let mut a: Vec<BigInt> = vec![BigInt::one()];
            let mut row: Vec<BigUint> = vec![BigUint::one()];
            for n in 0..order {
                // row holds binom(n, k)
                let conv: BigInt = (0..=n).map(|k| BigInt::from(row[k].clone()) * &a[k] * &a[n - k]).sum();
                a.push(conv * quadratic + &a[n] * linear);
                let mut next = vec![BigUint::one(); n + 2];
                for k in 1..=n {
                    next[k] = &row[k - 1] + &row[k];
                }
                row = next;
            }
            Ok(a)
        }
    }
}
