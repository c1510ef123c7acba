//! Finite words over the positive integers.
//!
//! A [`Word`] carries patterns, multiset permutations and ordinary
//! permutations alike. Letters are 1-based; the empty word is allowed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::ZeroLetter);
        }
        Ok(Word(letters))
    }

    /// Builds a word without checking positivity. Callers guarantee every letter is at least 1.
    pub(crate) fn from_vec_unchecked(letters: Vec<u32>) -> Self {
        debug_assert!(letters.iter().all(|&x| x > 0));
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u32> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_letter(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Number of distinct letters.
    pub fn distinct_count(&self) -> usize {
        let mut v = self.0.clone();
        v.sort_unstable();
        v.dedup();
        v.len()
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Maps each letter `x` to `m + 1 - x` where `m` is the largest letter.
    /// The empty word is its own complement.
    pub fn complement(&self) -> Word {
        let m = self.max_letter();
        Word(self.0.iter().map(|&x| m + 1 - x).collect())
    }

    pub fn reverse_complement(&self) -> Word {
        self.reverse().complement()
    }

    /// Relabels the distinct letters by rank, keeping multiplicities.
    pub fn standardize(&self) -> Word {
        let mut values = self.0.clone();
        values.sort_unstable();
        values.dedup();
        Word(
            self.0
                .iter()
                .map(|x| values.binary_search(x).unwrap() as u32 + 1)
                .collect(),
        )
    }

    pub fn is_standard(&self) -> bool {
        *self == self.standardize()
    }

    pub fn descent_count(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] > w[1]).count()
    }

    /// True if the word uses each of `1..=k` exactly once for some `k`.
    pub fn is_permutation(&self) -> bool {
        let n = self.0.len();
        let mut seen = vec![false; n + 1];
        for &x in &self.0 {
            let x = x as usize;
            if x > n || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        true
    }

    /// Subsequence of letters whose value lies in `keep`, in order.
    pub fn restrict<F: Fn(u32) -> bool>(&self, keep: F) -> Word {
        Word(self.0.iter().copied().filter(|&x| keep(x)).collect())
    }

    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k.min(self.0.len())].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Space-separated form, always unambiguous.
    pub fn to_spaced(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        parts.join(" ")
    }

    /// Digit form when every letter is at most 9, otherwise the spaced form.
    pub fn to_compact(&self) -> String {
        if self.0.iter().all(|&x| x <= 9) {
            self.0.iter().map(|x| char::from(b'0' + *x as u8)).collect()
        } else {
            self.to_spaced()
        }
    }
}

impl TryFrom<Vec<u32>> for Word {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Word::new(v)
    }
}

impl From<Word> for Vec<u32> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl AsRef<[u32]> for Word {
    fn as_ref(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_compact())
    }
}

/// Accepts `"1 5 2 1 3"` (whitespace separated) or `"15213"` (one digit per letter).
/// The empty string and `"ε"` parse to the empty word.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "ε" {
            return Ok(Word::empty());
        }
        let letters: Vec<u32> = if s.split_whitespace().count() > 1 {
            s.split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| Error::WordSyntax(s.to_string())))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| Error::WordSyntax(s.to_string())))
                .collect::<Result<_>>()?
        };
        Word::new(letters)
    }
}

/// Shorthand for tests and tables: parses a compact or spaced word, panicking on bad input.
pub fn w(s: &str) -> Word {
    s.parse().unwrap_or_else(|e| panic!("bad word literal {s:?}: {e}"))
}
