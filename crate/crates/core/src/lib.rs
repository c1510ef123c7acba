//! Exact enumeration of nonnesting permutations of the multiset
//! {1,1,2,2,...,n,n} that avoid sets of patterns.
//!
//! The crate provides pattern containment on words, an exhaustive pruned
//! enumerator, exact power series, a registry of enumeration formulas with a
//! verification driver, executable bijections to Dyck and grand Dyck words,
//! and descent-statistic tools.

pub mod bijections;
pub mod cache;
pub mod catalog;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod nonnesting;
pub mod numbers;
pub mod pattern;
pub mod poly;
pub mod series;
pub mod stats;
pub mod word;

pub use enumerate::{
    count_avoiders, count_sn_avoiders, descent_polynomial, generate_avoiders, generate_nonnesting,
    generate_sn_avoiders, sn_descent_polynomial,
};
pub use error::{Error, Result};
pub use nonnesting::{is_nonnesting, underlying_permutation, Matching, NonnestingPermutation};
pub use pattern::{avoids_all, contains_pattern, symmetry_orbit, PatternSet};
pub use poly::IntPolynomial;
pub use series::Series;
pub use word::Word;

/// Bumped whenever a change could alter any computed count; invalidates caches.
pub const ENGINE_VERSION: u32 = 1;
