//! Nonnesting permutations of the multiset {1,1,2,2,...,n,n} and their
//! arc diagrams.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{avoids_all, PatternSet};
use crate::word::Word;

/// Checks that every distinct letter of `w` appears exactly twice.
fn check_doubled(w: &Word) -> Result<()> {
    let mut counts = vec![0usize; w.max_letter() as usize + 1];
    for &x in w.letters() {
        counts[x as usize] += 1;
    }
    match counts.iter().enumerate().find(|&(_, &c)| c != 0 && c != 2) {
        Some((value, &count)) => Err(Error::NotDoubled { value: value as u32, count }),
        None => Ok(()),
    }
}

/// Pattern-based test: the word avoids both 1221 and 2112.
///
/// Rejects words in which some value does not appear exactly twice.
pub fn is_nonnesting(w: &Word) -> Result<bool> {
    check_doubled(w)?;
    Ok(avoids_all(w, &nesting_patterns()))
}

pub fn nesting_patterns() -> PatternSet {
    PatternSet::new([Word::from_vec_unchecked(vec![1, 2, 2, 1]), Word::from_vec_unchecked(vec![2, 1, 1, 2])])
        .expect("static patterns")
}

/// Queue test: each second occurrence must close the oldest open value.
pub fn satisfies_queue_discipline(w: &Word) -> Result<bool> {
    check_doubled(w)?;
    let mut open = VecDeque::new();
    let mut seen = vec![false; w.max_letter() as usize + 1];
    for &x in w.letters() {
        if seen[x as usize] {
            if open.pop_front() != Some(x) {
                return Ok(false);
            }
        } else {
            seen[x as usize] = true;
            open.push_back(x);
        }
    }
    Ok(true)
}

/// Arc diagram of a word in which every value appears twice.
/// Positions are 1-based; arcs are ordered by opening position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matching {
    arcs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn from_arcs(mut arcs: Vec<(usize, usize)>) -> Result<Self> {
        arcs.sort_unstable();
        let size = 2 * arcs.len();
        let mut used = vec![false; size + 1];
        for &(a, b) in &arcs {
            if a == 0 || b > size || a >= b || used[a] || used[b] {
                return Err(Error::Precondition(format!("arcs {arcs:?} do not partition [1..{size}]")));
            }
            used[a] = true;
            used[b] = true;
        }
        Ok(Matching { arcs })
    }

    /// Arc diagram of `w`; every value must appear exactly twice.
    pub fn of_word(w: &Word) -> Result<Self> {
        check_doubled(w)?;
        let mut first = vec![0usize; w.max_letter() as usize + 1];
        let mut arcs = Vec::with_capacity(w.len() / 2);
        for (i, &x) in w.letters().iter().enumerate() {
            let slot = &mut first[x as usize];
            if *slot == 0 {
                *slot = i + 1;
            } else {
                arcs.push((*slot, i + 1));
            }
        }
        arcs.sort_unstable();
        Ok(Matching { arcs })
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn size(&self) -> usize {
        self.arcs.len()
    }

    /// Closing positions increase along with opening positions.
    pub fn is_nonnesting(&self) -> bool {
        self.arcs.windows(2).all(|p| p[0].1 < p[1].1)
    }

    /// Opening (true) / closing (false) flag for each position.
    pub fn openers(&self) -> Vec<bool> {
        let mut v = vec![false; 2 * self.arcs.len()];
        for &(a, _) in &self.arcs {
            v[a - 1] = true;
        }
        v
    }

    /// The nonnesting matching whose opening positions are given by `openers`.
    pub fn nonnesting_from_openers(openers: &[bool]) -> Result<Self> {
        let mut queue = VecDeque::new();
        let mut arcs = Vec::new();
        for (i, &open) in openers.iter().enumerate() {
            if open {
                queue.push_back(i + 1);
            } else {
                let a = queue
                    .pop_front()
                    .ok_or_else(|| Error::Precondition("closer without an open arc".into()))?;
                arcs.push((a, i + 1));
            }
        }
        if !queue.is_empty() {
            return Err(Error::Precondition("unclosed arcs".into()));
        }
        Ok(Matching { arcs })
    }

    /// Writes `labels[k]` on the `k`-th arc (by opening position).
    pub fn label(&self, labels: &[u32]) -> Word {
        assert_eq!(labels.len(), self.arcs.len());
        let mut v = vec![0u32; 2 * self.arcs.len()];
        for (&(a, b), &l) in self.arcs.iter().zip(labels) {
            v[a - 1] = l;
            v[b - 1] = l;
        }
        Word::from_vec_unchecked(v)
    }
}

/// A word over {1..n} using every value exactly twice, with no nested arcs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Word", into = "Word")]
pub struct NonnestingPermutation {
    word: Word,
}

impl NonnestingPermutation {
    pub fn new(word: Word) -> Result<Self> {
        check_doubled(&word)?;
        let n = word.len() / 2;
        if word.max_letter() as usize != n {
            return Err(Error::NotNonnesting(format!("{word} does not use exactly the values 1..{n}")));
        }
        if !satisfies_queue_discipline(&word)? {
            return Err(Error::NotNonnesting(word.to_string()));
        }
        Ok(NonnestingPermutation { word })
    }

    pub(crate) fn from_word_unchecked(word: Word) -> Self {
        NonnestingPermutation { word }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn into_word(self) -> Word {
        self.word
    }

    pub fn n(&self) -> usize {
        self.word.len() / 2
    }

    pub fn matching(&self) -> Matching {
        Matching::of_word(&self.word).expect("valid by construction")
    }

    /// Arc labels read by opening position; equal to the subsequence of
    /// first copies, and to the subsequence of second copies.
    pub fn underlying_permutation(&self) -> Word {
        let mut seen = vec![false; self.n() + 1];
        let mut out = Vec::with_capacity(self.n());
        for &x in self.word.letters() {
            if !seen[x as usize] {
                seen[x as usize] = true;
                out.push(x);
            }
        }
        Word::from_vec_unchecked(out)
    }

    pub fn descent_count(&self) -> usize {
        self.word.descent_count()
    }
}

pub fn underlying_permutation(pi: &NonnestingPermutation) -> Word {
    pi.underlying_permutation()
}

impl TryFrom<Word> for NonnestingPermutation {
    type Error = Error;
    fn try_from(w: Word) -> Result<Self> {
        NonnestingPermutation::new(w)
    }
}

impl From<NonnestingPermutation> for Word {
    fn from(p: NonnestingPermutation) -> Word {
        p.word
    }
}

impl fmt::Display for NonnestingPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

/// Factorization `α 1 β 1 γ` at the two copies of the smallest value, with the
/// value classes A, B₁, B₂, C of the remaining values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub alpha: Word,
    pub beta: Word,
    pub gamma: Word,
    /// Values with both copies in α.
    pub a: Vec<u32>,
    /// Values with one copy in α and one in β.
    pub b1: Vec<u32>,
    /// Values with one copy in β and one in γ.
    pub b2: Vec<u32>,
    /// Values with both copies in γ.
    pub c: Vec<u32>,
}

impl Decomposition {
    pub fn of(pi: &NonnestingPermutation) -> Self {
        let letters = pi.word().letters();
        let ones: Vec<usize> = letters
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x == 1)
            .map(|(i, _)| i)
            .collect();
        let (i1, i2) = (ones[0], ones[1]);
        let alpha = Word::from_vec_unchecked(letters[..i1].to_vec());
        let beta = Word::from_vec_unchecked(letters[i1 + 1..i2].to_vec());
        let gamma = Word::from_vec_unchecked(letters[i2 + 1..].to_vec());
        let n = pi.n() as u32;
        let has = |part: &Word, v: u32| part.letters().contains(&v);
        let (mut a, mut b1, mut b2, mut c) = (vec![], vec![], vec![], vec![]);
        for v in 2..=n {
            match (has(&alpha, v), has(&beta, v), has(&gamma, v)) {
                (true, false, _) => a.push(v),
                (true, true, _) => b1.push(v),
                (false, true, true) => b2.push(v),
                (false, _, _) => c.push(v),
            }
        }
        Decomposition { alpha, beta, gamma, a, b1, b2, c }
    }
}
