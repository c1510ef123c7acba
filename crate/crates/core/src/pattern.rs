//! Pattern containment on words, pattern sets and their symmetry classes.
//!
//! An occurrence of `p` in `w` is a subsequence of `w` that agrees with `p`
//! in every strict comparison and every equality between letters.

use std::collections::BTreeSet;

use rustc_hash::FxHashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Word;

/// Returns true if `w` contains an occurrence of `p`.
///
/// Backtracks over positions of `w`, carrying the partial assignment of
/// pattern letters to word values. `p` need not be standardized.
pub fn contains_pattern(w: &Word, p: &Word) -> bool {
    if p.is_empty() {
        return true;
    }
    let p = p.standardize();
    let d = p.max_letter() as usize;
    let mut vals = vec![0u32; d + 1];
    search_occurrence(w.letters(), p.letters(), 0, 0, &mut vals)
}

fn search_occurrence(w: &[u32], p: &[u32], j: usize, from: usize, vals: &mut [u32]) -> bool {
    if j == p.len() {
        return true;
    }
    let remaining = p.len() - j;
    if w.len() < from + remaining {
        return false;
    }
    let letter = p[j] as usize;
    let last_start = w.len() - remaining;
    if vals[letter] != 0 {
        let target = vals[letter];
        for i in from..=last_start {
            if w[i] == target && search_occurrence(w, p, j + 1, i + 1, vals) {
                return true;
            }
        }
        return false;
    }
    let (lo, hi) = bounds(vals, letter);
    for i in from..=last_start {
        let x = w[i];
        if x > lo && x < hi {
            vals[letter] = x;
            let found = search_occurrence(w, p, j + 1, i + 1, vals);
            vals[letter] = 0;
            if found {
                return true;
            }
        }
    }
    false
}

/// Open interval of values an unassigned pattern letter may take, given the
/// values already assigned to the other letters.
#[inline]
fn bounds<T: Copy + Into<u32>>(vals: &[T], letter: usize) -> (u32, u32) {
    let lo = vals[1..letter]
        .iter()
        .rev()
        .map(|&v| v.into())
        .find(|&v| v != 0)
        .unwrap_or(0);
    let hi = vals[letter + 1..]
        .iter()
        .map(|&v| v.into())
        .find(|&v| v != 0)
        .unwrap_or(u32::MAX);
    (lo, hi)
}

/// True if `w` contains none of the patterns in `set`.
pub fn avoids_all(w: &Word, set: &PatternSet) -> bool {
    set.iter().all(|p| !contains_pattern(w, p))
}

/// A duplicate-free set of standardized, nonempty patterns.
///
/// Equality, ordering and hashing ignore the display label.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct PatternSet {
    patterns: BTreeSet<Word>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl PatternSet {
    pub fn new<I: IntoIterator<Item = Word>>(patterns: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in patterns {
            if p.is_empty() {
                return Err(Error::EmptyPattern);
            }
            set.insert(p.standardize());
        }
        Ok(PatternSet { patterns: set, label: None })
    }

    pub fn empty() -> Self {
        PatternSet::default()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> {
        self.patterns.iter()
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn contains(&self, p: &Word) -> bool {
        self.patterns.contains(&p.standardize())
    }

    pub fn is_subset(&self, other: &PatternSet) -> bool {
        self.patterns.is_subset(&other.patterns)
    }

    pub fn union(&self, other: &PatternSet) -> PatternSet {
        PatternSet {
            patterns: self.patterns.union(&other.patterns).cloned().collect(),
            label: None,
        }
    }

    fn map<F: Fn(&Word) -> Word>(&self, f: F) -> PatternSet {
        PatternSet {
            patterns: self.patterns.iter().map(|p| f(p).standardize()).collect(),
            label: None,
        }
    }

    pub fn reverse(&self) -> PatternSet {
        self.map(Word::reverse)
    }

    pub fn complement(&self) -> PatternSet {
        self.map(Word::complement)
    }

    pub fn reverse_complement(&self) -> PatternSet {
        self.map(Word::reverse_complement)
    }

    /// The distinct images of this set under identity, reversal,
    /// complement and reverse-complement.
    pub fn symmetry_orbit(&self) -> BTreeSet<PatternSet> {
        [self.map(Clone::clone), self.reverse(), self.complement(), self.reverse_complement()]
            .into_iter()
            .collect()
    }

    /// Comma-separated compact form, e.g. `123,231`.
    pub fn to_compact(&self) -> String {
        let parts: Vec<String> = self.patterns.iter().map(Word::to_compact).collect();
        parts.join(",")
    }
}

pub fn symmetry_orbit(set: &PatternSet) -> BTreeSet<PatternSet> {
    set.symmetry_orbit()
}

impl PartialEq for PatternSet {
    fn eq(&self, other: &Self) -> bool {
        self.patterns == other.patterns
    }
}

impl Eq for PatternSet {}

impl std::hash::Hash for PatternSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.patterns.hash(state);
    }
}

impl PartialOrd for PatternSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PatternSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.patterns.cmp(&other.patterns)
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_compact())
    }
}

/// Comma-separated words; the empty string is the empty set.
impl FromStr for PatternSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(PatternSet::empty());
        }
        let words = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                if t.is_empty() {
                    Err(Error::EmptyPattern)
                } else {
                    t.parse::<Word>()
                }
            })
            .collect::<Result<Vec<_>>>()?;
        PatternSet::new(words)
    }
}

/// Shorthand for tests and tables.
pub fn ps(s: &str) -> PatternSet {
    s.parse().unwrap_or_else(|e| panic!("bad pattern set {s:?}: {e}"))
}

const MAX_TRACKED_LETTERS: usize = 15;

type Partial = [u8; 16];

/// Incremental containment state for one pattern against a growing word.
///
/// Keeps every distinct partial occurrence: byte 0 holds how many pattern
/// letters are matched, byte `L` the value bound to pattern letter `L` (0 if
/// unbound). Partials whose next letter is already bound wait in a bucket
/// keyed by the value they need; the rest wait in `free`. A bound letter
/// that never recurs is forgotten once another bound letter lies between it
/// and every letter still to be bound, since it can no longer constrain
/// anything. Once a full occurrence appears the pattern stays matched.
/// `pop` undoes the last `push`.
#[derive(Clone, Debug)]
pub struct PatternTracker {
    pattern: Vec<u8>,
    letters: usize,
    /// Per matched length `j`: bitmask of letters to forget on reaching `j`.
    forget: Vec<u16>,
    partials: Vec<Partial>,
    /// Bucket each partial was filed in: 0 for `free`, otherwise the needed value.
    home: Vec<u8>,
    free: Vec<u32>,
    exact: Vec<Vec<u32>>,
    seen: FxHashSet<u128>,
    frames: Vec<usize>,
    completed_at: Option<usize>,
}

impl PatternTracker {
    /// Returns `None` if the pattern has more distinct letters than the tracker supports.
    pub fn new(pattern: &Word) -> Option<Self> {
        let p = pattern.standardize();
        if p.is_empty() || p.max_letter() as usize > MAX_TRACKED_LETTERS {
            return None;
        }
        let pattern: Vec<u8> = p.letters().iter().map(|&x| x as u8).collect();
        let letters = p.max_letter() as usize;
        let forget = (0..=pattern.len())
            .map(|j| {
                let bound: Vec<bool> = (0..=letters).map(|l| pattern[..j].contains(&(l as u8))).collect();
                let live: Vec<bool> = (0..=letters).map(|l| pattern[j..].contains(&(l as u8))).collect();
                let mut mask = 0u16;
                for m in 1..=letters {
                    if !bound[m] || live[m] {
                        continue;
                    }
                    let shielded = (1..=letters).filter(|&l| !bound[l]).all(|l| {
                        let (a, b) = if m < l { (m, l) } else { (l, m) };
                        (a + 1..b).any(|q| bound[q])
                    });
                    if shielded {
                        mask |= 1 << m;
                    }
                }
                mask
            })
            .collect();
        Some(PatternTracker {
            pattern,
            letters,
            forget,
            partials: Vec::new(),
            home: Vec::new(),
            free: Vec::new(),
            exact: vec![Vec::new(); 256],
            seen: FxHashSet::default(),
            frames: Vec::new(),
            completed_at: None,
        })
    }

    pub fn is_matched(&self) -> bool {
        self.completed_at.is_some()
    }

    /// Extends `cur` by `x`. Returns `Err(())` on a completed occurrence.
    #[inline]
    fn extend(&mut self, cur: Partial, x: u8) -> Result<(), ()> {
        let j = cur[0] as usize;
        let letter = self.pattern[j] as usize;
        if j + 1 == self.pattern.len() {
            return Err(());
        }
        let mut next = cur;
        next[0] = (j + 1) as u8;
        next[letter] = x;
        let mask = self.forget[j + 1];
        if mask != 0 {
            for (m, slot) in next.iter_mut().enumerate().take(self.letters + 1).skip(1) {
                if mask & (1 << m) != 0 {
                    *slot = 0;
                }
            }
        }
        if self.seen.insert(u128::from_le_bytes(next)) {
            let idx = self.partials.len() as u32;
            let need = next[self.pattern[j + 1] as usize];
            self.partials.push(next);
            self.home.push(need);
            if need == 0 {
                self.free.push(idx);
            } else {
                self.exact[need as usize].push(idx);
            }
        }
        Ok(())
    }

    /// Appends a letter (at most 255) and reports whether the pattern is now contained.
    pub fn push(&mut self, x: u8) -> bool {
        let depth = self.frames.len();
        self.frames.push(self.partials.len());
        if self.completed_at.is_some() {
            return true;
        }
        let waiting_exact = self.exact[x as usize].len();
        let waiting_free = self.free.len();
        let mut done = self.extend([0u8; 16], x).is_err();
        for i in 0..waiting_exact {
            if done {
                break;
            }
            let cur = self.partials[self.exact[x as usize][i] as usize];
            done = self.extend(cur, x).is_err();
        }
        for i in 0..waiting_free {
            if done {
                break;
            }
            let cur = self.partials[self.free[i] as usize];
            let letter = self.pattern[cur[0] as usize] as usize;
            let (lo, hi) = bounds(&cur[..=self.letters], letter);
            if (x as u32) > lo && (x as u32) < hi {
                done = self.extend(cur, x).is_err();
            }
        }
        if done {
            self.completed_at = Some(depth);
        }
        done
    }

    pub fn pop(&mut self) {
        let depth = self.frames.len() - 1;
        let keep = self.frames.pop().expect("pop without push");
        if self.completed_at == Some(depth) {
            self.completed_at = None;
        }
        while self.partials.len() > keep {
            let p = self.partials.pop().unwrap();
            match self.home.pop().unwrap() {
                0 => self.free.pop(),
                v => self.exact[v as usize].pop(),
            };
            self.seen.remove(&u128::from_le_bytes(p));
        }
    }
}
