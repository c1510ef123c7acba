//! Registry of enumeration formulas for pattern sets, with exact evaluators
//! and a verification driver against brute-force counts.
//!
//! The built-in registry is `catalog.json`, shipped with the crate. Any file
//! with the same schema can be loaded with [`parse_catalog`].

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::count_avoiders;
use crate::error::{Error, Result};
use crate::numbers::{binomial, catalan, factorial, fibonacci};
use crate::pattern::PatternSet;
use crate::series::{egf_coefficients, EgfSpec, Series};

const BUILTIN: &str = include_str!("../catalog.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Proven,
    Conjectured,
}

/// One factor of a product term, evaluated at `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Factor {
    /// `n^k`
    NPow(u32),
    /// `C_{n+s}`
    Catalan(i64),
    /// `F_{n+s}` with `F_0 = F_1 = 1`
    Fibonacci(i64),
    /// `(n+s)!`
    Factorial(i64),
    /// `base^{n+shift}`; negative exponents give rationals.
    Power { base: i64, shift: i64 },
    /// `binom(top[0] n + top[1], bottom[0] n + bottom[1])`
    Binomial { top: [i64; 2], bottom: [i64; 2] },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coef: i64,
    #[serde(default)]
    pub factors: Vec<Factor>,
}

fn one() -> i64 {
    1
}

fn is_one(d: &i64) -> bool {
    *d == 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FormulaDescriptor {
    /// `(sum_i coefficients[i] n^i) / divisor`
    Polynomial {
        coefficients: Vec<i64>,
        #[serde(default = "one", skip_serializing_if = "is_one")]
        divisor: i64,
    },
    Exponential {
        terms: Vec<Term>,
        #[serde(default = "one", skip_serializing_if = "is_one")]
        divisor: i64,
    },
    CatalanCombination {
        terms: Vec<Term>,
        #[serde(default = "one", skip_serializing_if = "is_one")]
        divisor: i64,
    },
    FibonacciCombination {
        terms: Vec<Term>,
        #[serde(default = "one", skip_serializing_if = "is_one")]
        divisor: i64,
    },
    Factorial {
        terms: Vec<Term>,
        #[serde(default = "one", skip_serializing_if = "is_one")]
        divisor: i64,
    },
    /// `[x^n] numerator / denominator`
    OgfRational { numerator: Vec<i64>, denominator: Vec<i64> },
    /// `[x^n] (p - sqrt(q)) / (x^shift r)`
    OgfAlgebraic { p: Vec<i64>, q: Vec<i64>, r: Vec<i64>, shift: usize },
    /// `n! [x^n]` of the exponential generating function.
    Egf { egf: EgfSpec },
    /// `(1/n) sum_{k=0}^{n-1} binom(a n, k) binom(b n - k + c, n - 1)`
    BinomialSum { a: i64, b: i64, c: i64 },
    ZeroFrom,
    ConstantFrom { value: i64 },
}

impl FormulaDescriptor {
    pub fn kind(&self) -> &'static str {
        match self {
            FormulaDescriptor::Polynomial { .. } => "polynomial",
            FormulaDescriptor::Exponential { .. } => "exponential",
            FormulaDescriptor::CatalanCombination { .. } => "catalan-combination",
            FormulaDescriptor::FibonacciCombination { .. } => "fibonacci-combination",
            FormulaDescriptor::Factorial { .. } => "factorial",
            FormulaDescriptor::OgfRational { .. } => "ogf-rational",
            FormulaDescriptor::OgfAlgebraic { .. } => "ogf-algebraic",
            FormulaDescriptor::Egf { .. } => "egf",
            FormulaDescriptor::BinomialSum { .. } => "binomial-sum",
            FormulaDescriptor::ZeroFrom => "zero-from",
            FormulaDescriptor::ConstantFrom { .. } => "constant-from",
        }
    }

    /// Exact value at `n`; fails if the formula is undefined or not an integer there.
    pub fn eval(&self, n: usize) -> Result<BigInt> {
        use FormulaDescriptor::*;
        match self {
            Polynomial { coefficients, divisor } => {
                let nb = BigInt::from(n);
                let mut acc = BigInt::zero();
                for c in coefficients.iter().rev() {
                    acc = acc * &nb + c;
                }
                integral(BigRational::new(acc, BigInt::from(*divisor)), n)
            }
            Exponential { terms, divisor }
            | CatalanCombination { terms, divisor }
            | FibonacciCombination { terms, divisor }
            | Factorial { terms, divisor } => {
                let mut acc = BigRational::zero();
                for t in terms {
                    let mut prod = BigRational::from_integer(t.coef.into());
                    for f in &t.factors {
                        prod *= eval_factor(f, n)?;
                    }
                    acc += prod;
                }
                integral(acc / BigRational::from_integer((*divisor).into()), n)
            }
            OgfRational { numerator, denominator } => {
                let q = Series::from_i64(numerator, n).div(&Series::from_i64(denominator, n))?;
                integral(q.coefficient(n).clone(), n)
            }
            OgfAlgebraic { p, q, r, shift } => {
                let order = n + shift;
                let root = Series::from_i64(q, order).sqrt()?;
                let num = (&Series::from_i64(p, order) - &root).shift_down(*shift)?;
                let s = num.div(&Series::from_i64(r, n))?;
                integral(s.coefficient(n).clone(), n)
            }
            Egf { egf } => Ok(egf_coefficients(egf, n)?.pop().expect("order n has n+1 terms")),
            BinomialSum { a, b, c } => {
                if n == 0 {
                    return Err(Error::Formula("binomial sum is undefined at n = 0".into()));
                }
                let ni = n as i64;
                let sum: BigUint = (0..ni).map(|k| binomial(a * ni, k) * binomial(b * ni - k + c, ni - 1)).sum();
                integral(BigRational::new(sum.into(), BigInt::from(n)), n)
            }
            ZeroFrom => Ok(BigInt::zero()),
            ConstantFrom { value } => Ok(BigInt::from(*value)),
        }
    }
}

fn integral(v: BigRational, n: usize) -> Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::Formula(format!("value {v} at n = {n} is not an integer")))
    }
}

fn shifted(n: usize, s: i64) -> Result<u64> {
    u64::try_from(n as i64 + s).map_err(|_| Error::Formula(format!("index n{s:+} is negative at n = {n}")))
}

fn eval_factor(f: &Factor, n: usize) -> Result<BigRational> {
    let int = |v: BigUint| BigRational::from_integer(v.into());
    Ok(match *f {
        Factor::NPow(k) => BigRational::from_integer(num_traits::pow(BigInt::from(n), k as usize)),
        Factor::Catalan(s) => int(catalan(shifted(n, s)?)),
        Factor::Fibonacci(s) => int(fibonacci(shifted(n, s)?)),
        Factor::Factorial(s) => int(factorial(shifted(n, s)?)),
        Factor::Power { base, shift } => {
            let e = n as i64 + shift;
            let b = BigRational::from_integer(base.into());
            if e >= 0 {
                num_traits::pow(b, e as usize)
            } else if base == 0 {
                return Err(Error::Formula("zero to a negative power".into()));
            } else {
                num_traits::pow(b.recip(), (-e) as usize)
            }
        }
        Factor::Binomial { top, bottom } => {
            let ni = n as i64;
            int(binomial(top[0] * ni + top[1], bottom[0] * ni + bottom[1]))
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CatalogEntry {
    /// The pattern set exactly as stated, not reduced by symmetry.
    pub patterns: Vec<String>,
    pub group: String,
    pub formula: FormulaDescriptor,
    pub description: String,
    /// The formula is claimed for `n >= valid_from`.
    #[serde(default = "default_valid_from")]
    pub valid_from: usize,
    /// Values below `valid_from` known without enumeration, keyed by `n`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub small_values: BTreeMap<usize, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oeis: Option<String>,
    pub anchor: String,
    pub status: Status,
}

fn default_valid_from() -> usize {
    1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValueSource {
    Formula,
    SmallValue,
    OracleFilled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    #[serde(serialize_with = "crate::cache::decimal")]
    pub value: BigInt,
    pub source: ValueSource,
}

impl CatalogEntry {
    pub fn key(&self) -> PatternSet {
        let words = self.patterns.iter().map(|p| p.parse()).collect::<Result<Vec<_>>>().expect("validated at load");
        PatternSet::new(words).expect("validated at load").with_label(self.anchor.clone())
    }

    pub fn key_string(&self) -> String {
        self.patterns.join(",")
    }

    /// Predicted count at `n >= 1`: the formula from `valid_from` on, a stated
    /// small value, or otherwise a brute-force count marked as such.
    pub fn evaluate(&self, n: usize) -> Result<Evaluation> {
        if n == 0 {
            return Err(Error::Precondition("catalog values start at n = 1".into()));
        }
        if n >= self.valid_from {
            return Ok(Evaluation { value: self.formula.eval(n)?, source: ValueSource::Formula });
        }
        if let Some(v) = self.small_values.get(&n) {
            let value = v.parse().map_err(|_| Error::Catalog(format!("{}: bad small value {v:?}", self.anchor)))?;
            return Ok(Evaluation { value, source: ValueSource::SmallValue });
        }
        Ok(Evaluation { value: count_avoiders(n, &self.key()).into(), source: ValueSource::OracleFilled })
    }

    /// Matches an `--entries` filter: substring of the anchor, OEIS id or pattern list.
    pub fn matches_filter(&self, filter: &str) -> bool {
        filter.is_empty()
            || self.anchor.contains(filter)
            || self.oeis.as_deref().is_some_and(|o| o.contains(filter))
            || self.key_string() == filter
    }
}

pub fn parse_catalog(json: &str) -> Result<Vec<CatalogEntry>> {
    let entries: Vec<CatalogEntry> =
        serde_json::from_str(json).map_err(|e| Error::Catalog(format!("catalog JSON: {e}")))?;
    for e in &entries {
        for p in &e.patterns {
            let w: crate::word::Word = p.parse()?;
            if w.is_empty() {
                return Err(Error::Catalog(format!("{}: empty pattern", e.anchor)));
            }
        }
    }
    Ok(entries)
}

pub fn builtin_catalog() -> Vec<CatalogEntry> {
    parse_catalog(BUILTIN).expect("bundled catalog is valid")
}

pub fn find_entry<'a>(entries: &'a [CatalogEntry], patterns: &str) -> Option<&'a CatalogEntry> {
    entries.iter().find(|e| e.key_string() == patterns)
}

/// `(c_1, ..., c_{n_max})` by brute force.
pub fn sequence(set: &PatternSet, n_max: usize) -> Vec<BigUint> {
    (1..=n_max).map(|n| count_avoiders(n, set)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationRow {
    pub n: usize,
    #[serde(serialize_with = "crate::cache::decimal")]
    pub predicted: BigInt,
    #[serde(serialize_with = "crate::cache::decimal")]
    pub observed: BigInt,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub anchor: String,
    pub patterns: String,
    pub description: String,
    pub status: Status,
    pub valid_from: usize,
    pub rows: Vec<VerificationRow>,
    /// Formula failures (undefined or non-integral values).
    pub errors: Vec<String>,
    /// Sizes left out because a time budget ran out.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<usize>,
}

impl VerificationReport {
    pub fn all_match(&self) -> bool {
        self.errors.is_empty() && self.rows.iter().all(|r| r.matches)
    }

    /// Conjectured entries never fail a verification run.
    pub fn passed(&self) -> bool {
        self.status == Status::Conjectured || self.all_match()
    }
}

/// Compares the formula with `count(n, key)` for `n` in `max(1, valid_from)..=n_max`.
pub fn verify_with<F>(entry: &CatalogEntry, n_max: usize, count: F) -> VerificationReport
where
    F: Fn(usize, &PatternSet) -> BigUint,
{
    verify_set_with(entry, &entry.key(), n_max, count)
}

/// As [`verify_with`], against a different pattern set (e.g. a symmetry image of the key).
pub fn verify_set_with<F>(entry: &CatalogEntry, set: &PatternSet, n_max: usize, count: F) -> VerificationReport
where
    F: Fn(usize, &PatternSet) -> BigUint,
{
    verify_range_with(entry, set, 1, n_max, count)
}

/// As [`verify_set_with`] for `n` in `lo..=hi` (still starting no lower than `valid_from`).
pub fn verify_range_with<F>(entry: &CatalogEntry, set: &PatternSet, lo: usize, hi: usize, count: F) -> VerificationReport
where
    F: Fn(usize, &PatternSet) -> BigUint,
{
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for n in lo.max(entry.valid_from).max(1)..=hi {
        match entry.formula.eval(n) {
            Ok(predicted) => {
                let observed = BigInt::from(count(n, set));
                rows.push(VerificationRow { n, matches: predicted == observed, predicted, observed });
            }
            Err(e) => errors.push(format!("n = {n}: {e}")),
        }
    }
    VerificationReport {
        anchor: entry.anchor.clone(),
        patterns: set.to_compact(),
        description: entry.description.clone(),
        status: entry.status,
        valid_from: entry.valid_from,
        rows,
        errors,
        skipped: Vec::new(),
    }
}

pub fn verify(entry: &CatalogEntry, n_max: usize) -> VerificationReport {
    verify_with(entry, n_max, count_avoiders)
}

/// Verifies independent entries in parallel; reports come back in input order.
pub fn verify_all(entries: &[CatalogEntry], n_max: usize) -> Vec<VerificationReport> {
    entries.par_iter().map(|e| verify(e, n_max)).collect()
}

/// Fixed-width table, one row per entry and one column per `n`.
pub fn reports_table(reports: &[VerificationReport]) -> String {
    let n_max = reports.iter().flat_map(|r| r.rows.iter().map(|x| x.n)).max().unwrap_or(0);
    let mut out = String::new();
    let _ = write!(out, "{:<34} {:<12} {:<9}", "patterns", "status", "result");
    for n in 1..=n_max {
        let _ = write!(out, " {:>10}", format!("n={n}"));
    }
    out.push('\n');
    for r in reports {
        let result = match (r.status, r.all_match()) {
            (_, true) => "ok",
            (Status::Proven, false) => "FAIL",
            (Status::Conjectured, false) => "differs",
        };
        let status = match r.status {
            Status::Proven => "proven",
            Status::Conjectured => "conjectured",
        };
        let _ = write!(out, "{:<34} {:<12} {:<9}", r.patterns, status, result);
        for n in 1..=n_max {
            let cell = match r.rows.iter().find(|x| x.n == n) {
                Some(x) if x.matches => x.observed.to_string(),
                Some(x) => format!("{}!={}", x.observed, x.predicted),
                None => "-".to_string(),
            };
            let _ = write!(out, " {cell:>10}");
        }
        out.push('\n');
        if !r.skipped.is_empty() {
            let _ = writeln!(out, "    skipped (time budget): n = {:?}", r.skipped);
        }
        for e in &r.errors {
            let _ = writeln!(out, "    error: {e}");
        }
    }
    out
}

/// Number of entries per group, for summaries.
pub fn group_sizes(entries: &[CatalogEntry]) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for e in entries {
        *m.entry(e.group.clone()).or_insert(0) += 1;
    }
    m
}

/// `binom(2n, n-1) = n C_n`.
pub fn catalan_identity_holds(n: usize) -> bool {
    binomial(2 * n as i64, n as i64 - 1) == catalan(n as u64) * BigUint::from(n)
}
