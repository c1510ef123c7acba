//! Exhaustive generation and counting of pattern-avoiding nonnesting
//! permutations, and of pattern-avoiding ordinary permutations.
//!
//! Nonnesting words are grown left to right under the queue discipline: at
//! each step either the oldest open value is closed, or an unused value is
//! opened. Candidates are tried in increasing value order so the output is
//! lexicographic. Every pattern carries a [`PatternTracker`]; a prefix that
//! completes an occurrence is abandoned, since containment is preserved by
//! every extension.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::nonnesting::NonnestingPermutation;
use crate::pattern::{contains_pattern, PatternSet, PatternTracker};
use crate::poly::IntPolynomial;
use crate::word::Word;

/// Which words the search grows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Each of 1..n twice, with no nested arcs.
    Nonnesting,
    /// Each of 1..n once.
    Permutation,
}

/// Depth at which counting splits the search tree across workers.
const SPLIT_DEPTH: usize = 2;

/// DFS state: the prefix under construction, the open-value queue, and
/// the per-pattern containment trackers. All of it is undone on backtrack.
#[derive(Clone, Debug)]
pub struct SearchState {
    shape: Shape,
    n: usize,
    target: usize,
    prefix: Vec<u32>,
    used: Vec<bool>,
    /// Values in order of first appearance; `head` indexes the oldest still open.
    opened: Vec<u32>,
    head: usize,
    /// True for each prefix position that closed a value.
    closes: Vec<bool>,
    trackers: Vec<PatternTracker>,
    /// Patterns too wide for a tracker; checked on complete words only.
    leaf_checks: Vec<Word>,
    /// Next candidate value for each depth from `base` up.
    next: Vec<u32>,
    base: usize,
    emitted: bool,
    done: bool,
}

impl SearchState {
    pub fn new(shape: Shape, n: usize, set: &PatternSet) -> Self {
        let mut trackers = Vec::new();
        let mut leaf_checks = Vec::new();
        for p in set.iter() {
            match PatternTracker::new(p).filter(|_| n < 256) {
                Some(t) => trackers.push(t),
                None => leaf_checks.push(p.clone()),
            }
        }
        let target = match shape {
            Shape::Nonnesting => 2 * n,
            Shape::Permutation => n,
        };
        SearchState {
            shape,
            n,
            target,
            prefix: Vec::with_capacity(target),
            used: vec![false; n + 1],
            opened: Vec::with_capacity(n),
            head: 0,
            closes: Vec::with_capacity(target),
            trackers,
            leaf_checks,
            next: vec![1],
            base: 0,
            emitted: false,
            done: false,
        }
    }

    /// A search confined to extensions of `prefix`; `None` if the prefix is
    /// not a valid start or already contains a pattern.
    pub fn rooted_at(shape: Shape, n: usize, set: &PatternSet, prefix: &[u32]) -> Option<Self> {
        let mut s = SearchState::new(shape, n, set);
        for &v in prefix {
            if v == 0 || v as usize > n || !s.is_candidate(v) || !s.apply(v) {
                return None;
            }
        }
        s.base = prefix.len();
        s.next = vec![1];
        Some(s)
    }

    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    fn is_candidate(&self, v: u32) -> bool {
        match self.shape {
            Shape::Permutation => !self.used[v as usize],
            Shape::Nonnesting => {
                !self.used[v as usize] || (self.head < self.opened.len() && self.opened[self.head] == v)
            }
        }
    }

    /// Appends `v`; returns false (with the append undone) if a pattern completes.
    fn apply(&mut self, v: u32) -> bool {
        let close = self.used[v as usize];
        if close {
            self.head += 1;
        } else {
            self.used[v as usize] = true;
            if self.shape == Shape::Nonnesting {
                self.opened.push(v);
            }
        }
        self.closes.push(close);
        self.prefix.push(v);
        let mut hit = false;
        for t in &mut self.trackers {
            hit |= t.push(v as u8);
        }
        if hit {
            self.undo();
            return false;
        }
        true
    }

    fn undo(&mut self) {
        let v = self.prefix.pop().expect("undo on empty prefix");
        for t in &mut self.trackers {
            t.pop();
        }
        if self.closes.pop().unwrap() {
            self.head -= 1;
        } else {
            self.used[v as usize] = false;
            if self.shape == Shape::Nonnesting {
                self.opened.pop();
            }
        }
    }

    fn leaf_ok(&self) -> bool {
        if self.leaf_checks.is_empty() {
            return true;
        }
        let w = Word::from_vec_unchecked(self.prefix.clone());
        self.leaf_checks.iter().all(|p| !contains_pattern(&w, p))
    }

    /// Advances to the next complete avoiding word, in lexicographic order.
    pub fn next_leaf(&mut self) -> Option<&[u32]> {
        loop {
            if self.done {
                return None;
            }
            let depth = self.prefix.len();
            if depth == self.target {
                if !self.emitted {
                    self.emitted = true;
                    if self.leaf_ok() {
                        return Some(&self.prefix);
                    }
                    continue;
                }
                self.emitted = false;
                if depth == self.base {
                    self.done = true;
                    continue;
                }
                self.undo();
                self.next.pop();
                continue;
            }
            let frame = depth - self.base;
            let mut v = self.next[frame];
            while v as usize <= self.n && !self.is_candidate(v) {
                v += 1;
            }
            if v as usize > self.n {
                if depth == self.base {
                    self.done = true;
                    continue;
                }
                self.undo();
                self.next.pop();
                continue;
            }
            self.next[frame] = v + 1;
            if self.apply(v) {
                self.next.push(1);
            }
        }
    }

    fn count_leaves(&mut self) -> u64 {
        let mut c = 0u64;
        while self.next_leaf().is_some() {
            c += 1;
        }
        c
    }

    fn descent_histogram(&mut self, hist: &mut Vec<u64>) {
        while let Some(w) = self.next_leaf() {
            let d = w.windows(2).filter(|p| p[0] > p[1]).count();
            if hist.len() <= d {
                hist.resize(d + 1, 0);
            }
            hist[d] += 1;
        }
    }
}

/// Lexicographic stream of the nonnesting permutations of size `n` avoiding `set`.
pub struct Avoiders {
    state: SearchState,
}

impl Iterator for Avoiders {
    type Item = NonnestingPermutation;

    fn next(&mut self) -> Option<Self::Item> {
        self.state
            .next_leaf()
            .map(|w| NonnestingPermutation::from_word_unchecked(Word::from_vec_unchecked(w.to_vec())))
    }
}

/// Lexicographic stream of the permutations of 1..n avoiding a set of patterns.
pub struct PermutationAvoiders {
    state: SearchState,
}

impl Iterator for PermutationAvoiders {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        self.state.next_leaf().map(|w| Word::from_vec_unchecked(w.to_vec()))
    }
}

pub fn generate_nonnesting(n: usize) -> Avoiders {
    generate_avoiders(n, &PatternSet::empty())
}

pub fn generate_avoiders(n: usize, set: &PatternSet) -> Avoiders {
    Avoiders { state: SearchState::new(Shape::Nonnesting, n, set) }
}

pub fn generate_sn_avoiders(n: usize, set: &PatternSet) -> PermutationAvoiders {
    PermutationAvoiders { state: SearchState::new(Shape::Permutation, n, set) }
}

/// All valid prefixes of length `depth` (or shorter complete words when the
/// target is shorter), used as independent roots for parallel workers.
fn split_roots(shape: Shape, n: usize, set: &PatternSet, depth: usize) -> Vec<Vec<u32>> {
    let mut roots = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for r in &roots {
            let before = next.len();
            for v in 1..=n as u32 {
                let mut cand = r.clone();
                cand.push(v);
                if SearchState::rooted_at(shape, n, set, &cand).is_some() {
                    next.push(cand);
                }
            }
            if next.len() == before && SearchState::rooted_at(shape, n, set, r).is_some() {
                // r is already complete
                let complete = match shape {
                    Shape::Nonnesting => r.len() == 2 * n,
                    Shape::Permutation => r.len() == n,
                };
                if complete {
                    next.push(r.clone());
                }
            }
        }
        roots = next;
    }
    roots
}

fn fan_out<T, F>(shape: Shape, n: usize, set: &PatternSet, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(SearchState) -> T + Sync + Send,
{
    let roots = split_roots(shape, n, set, SPLIT_DEPTH);
    roots
        .par_iter()
        .filter_map(|r| SearchState::rooted_at(shape, n, set, r))
        .map(work)
        .collect()
}

/// Number of nonnesting permutations of size `n` avoiding every pattern in `set`.
///
/// Subtrees below depth 2 are counted on the current rayon pool.
pub fn count_avoiders(n: usize, set: &PatternSet) -> BigUint {
    fan_out(Shape::Nonnesting, n, set, |mut s| s.count_leaves())
        .into_iter()
        .map(BigUint::from)
        .sum()
}

/// Single-threaded count, for callers that manage their own parallelism.
pub fn count_avoiders_sequential(n: usize, set: &PatternSet) -> BigUint {
    BigUint::from(SearchState::new(Shape::Nonnesting, n, set).count_leaves())
}

/// Number of permutations of 1..n avoiding every pattern in `set`.
pub fn count_sn_avoiders(n: usize, set: &PatternSet) -> BigUint {
    fan_out(Shape::Permutation, n, set, |mut s| s.count_leaves())
        .into_iter()
        .map(BigUint::from)
        .sum()
}

fn merge_histograms(parts: Vec<Vec<u64>>) -> IntPolynomial {
    let len = parts.iter().map(Vec::len).max().unwrap_or(0);
    let mut total = vec![BigUint::default(); len];
    for h in parts {
        for (d, c) in h.into_iter().enumerate() {
            total[d] += c;
        }
    }
    IntPolynomial::from_unsigned(total)
}

/// Descent generating polynomial of the avoiders: coefficient of `t^d` counts
/// the words with `d` descents.
pub fn descent_polynomial(n: usize, set: &PatternSet) -> IntPolynomial {
    merge_histograms(fan_out(Shape::Nonnesting, n, set, |mut s| {
        let mut h = Vec::new();
        s.descent_histogram(&mut h);
        h
    }))
}

/// Descent generating polynomial over the permutations of 1..n avoiding `set`.
pub fn sn_descent_polynomial(n: usize, set: &PatternSet) -> IntPolynomial {
    merge_histograms(fan_out(Shape::Permutation, n, set, |mut s| {
        let mut h = Vec::new();
        s.descent_histogram(&mut h);
        h
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::ps;
    use crate::word::w;

    fn words(it: impl Iterator<Item = NonnestingPermutation>) -> Vec<String> {
        it.map(|p| p.to_string()).collect()
    }

    #[test]
    fn small_generation() {
        assert_eq!(words(generate_nonnesting(1)), vec!["11"]);
        assert_eq!(words(generate_nonnesting(2)), vec!["1122", "1212", "2121", "2211"]);
        assert_eq!(generate_nonnesting(3).count(), 30);
        assert_eq!(words(generate_nonnesting(0)), vec![""]);
    }

    #[test]
    fn avoiders_examples() {
        assert_eq!(
            words(generate_avoiders(3, &ps("121"))),
            vec!["112233", "113322", "221133", "223311", "331122", "332211"]
        );
        assert_eq!(words(generate_avoiders(1, &PatternSet::empty())), vec!["11"]);
        assert_eq!(words(generate_avoiders(2, &ps("1212"))), vec!["1122", "2121", "2211"]);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_avoiders(3, &ps("112")), BigUint::from(5u32));
        assert_eq!(count_avoiders(4, &ps("121")), BigUint::from(24u32));
        assert_eq!(count_avoiders(5, &ps("123,321")), BigUint::from(0u32));
        assert_eq!(count_avoiders(2, &ps("123,1234,2413")), BigUint::from(4u32));
        assert_eq!(count_avoiders(1, &ps("1")), BigUint::from(0u32));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        for set in ["", "123", "1132,2213", "121"] {
            for n in 0..=5 {
                assert_eq!(count_avoiders(n, &ps(set)), count_avoiders_sequential(n, &ps(set)), "{set} {n}");
            }
        }
    }

    #[test]
    fn sn_counts() {
        assert_eq!(count_sn_avoiders(4, &ps("123")), BigUint::from(14u32));
        assert_eq!(count_sn_avoiders(5, &ps("132,213")), BigUint::from(16u32));
        assert_eq!(count_sn_avoiders(5, &PatternSet::empty()), BigUint::from(120u32));
        let all: Vec<Word> = generate_sn_avoiders(3, &PatternSet::empty()).collect();
        assert_eq!(all, ["123", "132", "213", "231", "312", "321"].map(w).to_vec());
    }

    #[test]
    fn rooted_search_rejects_invalid_prefixes() {
        let e = PatternSet::empty();
        assert!(SearchState::rooted_at(Shape::Nonnesting, 3, &e, &[1, 2, 2]).is_none());
        assert!(SearchState::rooted_at(Shape::Nonnesting, 3, &e, &[1, 2, 1]).is_some());
        assert!(SearchState::rooted_at(Shape::Nonnesting, 3, &ps("12"), &[1, 2]).is_none());
    }

    #[test]
    fn descent_polynomials() {
        assert_eq!(descent_polynomial(1, &PatternSet::empty()).coefficients_u64(), vec![1]);
        assert_eq!(descent_polynomial(2, &PatternSet::empty()).coefficients_u64(), vec![1, 2, 1]);
        assert_eq!(sn_descent_polynomial(3, &PatternSet::empty()).coefficients_u64(), vec![1, 4, 1]);
    }
}
