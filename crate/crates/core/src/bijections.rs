//! Constructive maps between pattern-avoiding nonnesting permutations and
//! Dyck-type words, plus exhaustive certification of their properties.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::enumerate::{generate_avoiders, generate_nonnesting};
use crate::error::{Error, Result};
use crate::nonnesting::{Decomposition, Matching, NonnestingPermutation};
use crate::numbers::{binomial, catalan};
use crate::pattern::{avoids_all, PatternSet};
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    U,
    D,
}

impl Step {
    fn flip(self) -> Step {
        match self {
            Step::U => Step::D,
            Step::D => Step::U,
        }
    }
}

fn parse_steps(s: &str) -> Result<Vec<Step>> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            'U' | 'u' => Ok(Step::U),
            'D' | 'd' => Ok(Step::D),
            _ => Err(Error::WordSyntax(format!("{s:?} is not a U/D word"))),
        })
        .collect()
}

fn write_steps(steps: &[Step], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for s in steps {
        f.write_str(if *s == Step::U { "U" } else { "D" })?;
    }
    Ok(())
}

fn is_balanced(steps: &[Step]) -> bool {
    2 * steps.iter().filter(|&&s| s == Step::U).count() == steps.len()
}

/// Balanced U/D word in which no prefix has more D than U.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckWord {
    steps: Vec<Step>,
}

impl DyckWord {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height = 0i64;
        for s in &steps {
            height += if *s == Step::U { 1 } else { -1 };
            if height < 0 {
                return Err(Error::Precondition("Dyck word dips below zero".into()));
            }
        }
        if height != 0 {
            return Err(Error::Precondition("Dyck word is not balanced".into()));
        }
        Ok(DyckWord { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    /// `(UD)^m`.
    pub fn sawtooth(m: usize) -> DyckWord {
        DyckWord { steps: [Step::U, Step::D].repeat(m) }
    }

    pub fn is_sawtooth(&self) -> bool {
        self.steps.chunks(2).all(|c| c == [Step::U, Step::D])
    }

    /// The nonnesting matching whose openers are the U steps.
    pub fn matching(&self) -> Matching {
        let openers: Vec<bool> = self.steps.iter().map(|&s| s == Step::U).collect();
        Matching::nonnesting_from_openers(&openers).expect("Dyck words are balanced")
    }
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_steps(&self.steps, f)
    }
}

impl FromStr for DyckWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DyckWord::new(parse_steps(s)?)
    }
}

/// Balanced U/D word with no prefix condition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrandDyckWord {
    steps: Vec<Step>,
}

impl GrandDyckWord {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        if !is_balanced(&steps) {
            return Err(Error::Precondition("grand Dyck word is not balanced".into()));
        }
        Ok(GrandDyckWord { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn ends_with(&self, tail: &[Step]) -> bool {
        self.steps.ends_with(tail)
    }

    /// Swaps U and D.
    pub fn flip(&self) -> GrandDyckWord {
        GrandDyckWord { steps: self.steps.iter().map(|s| s.flip()).collect() }
    }
}

impl fmt::Display for GrandDyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_steps(&self.steps, f)
    }
}

impl FromStr for GrandDyckWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GrandDyckWord::new(parse_steps(s)?)
    }
}

/// All Dyck words of semilength `m`, in lexicographic order with U < D.
pub fn dyck_words(m: usize) -> Vec<DyckWord> {
    fn go(m: usize, ups: usize, downs: usize, cur: &mut Vec<Step>, out: &mut Vec<DyckWord>) {
        if ups == m && downs == m {
            out.push(DyckWord { steps: cur.clone() });
            return;
        }
        if ups < m {
            cur.push(Step::U);
            go(m, ups + 1, downs, cur, out);
            cur.pop();
        }
        if downs < ups {
            cur.push(Step::D);
            go(m, ups, downs + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, 0, 0, &mut Vec::new(), &mut out);
    out
}

/// All grand Dyck words of semilength `m`.
pub fn grand_dyck_words(m: usize) -> Vec<GrandDyckWord> {
    (0u64..1 << (2 * m))
        .filter(|bits| bits.count_ones() as usize == m)
        .map(|bits| GrandDyckWord {
            steps: (0..2 * m).map(|i| if bits >> i & 1 == 1 { Step::U } else { Step::D }).collect(),
        })
        .collect()
}

/// U at the first copy of each value, D at the second.
fn steps_of_copies(letters: &[u32]) -> Vec<Step> {
    let mut seen = BTreeSet::new();
    letters.iter().map(|x| if seen.insert(*x) { Step::U } else { Step::D }).collect()
}

/// The unique 112-avoider with matching `m`: arcs labelled `n, n-1, ..., 1`
/// by increasing left endpoint.
pub fn label_112(m: &Matching) -> Result<NonnestingPermutation> {
    if !m.is_nonnesting() {
        return Err(Error::NotNonnesting(format!("matching {:?} has nested arcs", m.arcs())));
    }
    let n = m.size() as u32;
    let labels: Vec<u32> = (1..=n).rev().collect();
    Ok(NonnestingPermutation::from_word_unchecked(m.label(&labels)))
}

/// `p1 p1 p2 p2 ... pn pn`.
pub fn duplicate(p: &Word) -> Result<NonnestingPermutation> {
    if !p.is_permutation() {
        return Err(Error::NotPermutation(p.to_string()));
    }
    let doubled = p.letters().iter().flat_map(|&x| [x, x]).collect();
    Ok(NonnestingPermutation::from_word_unchecked(Word::from_vec_unchecked(doubled)))
}

/// Inverse of [`duplicate`]; both copies of every value must be adjacent.
pub fn undup(pi: &NonnestingPermutation) -> Result<Word> {
    let l = pi.word().letters();
    if l.chunks(2).any(|c| c[0] != c[1]) {
        return Err(Error::Precondition(format!("{pi} has non-adjacent repeated letters")));
    }
    Ok(Word::from_vec_unchecked(l.iter().step_by(2).copied().collect()))
}

/// The standard matching-to-Dyck map: U for a first copy, D for a second.
pub fn nn_to_dyck(pi: &NonnestingPermutation) -> DyckWord {
    DyckWord { steps: steps_of_copies(pi.word().letters()) }
}

pub fn thm_2231_patterns() -> PatternSet {
    "1132,2213,2231".parse().expect("static")
}

pub fn grand_dyck_patterns() -> PatternSet {
    "1322,2231".parse().expect("static")
}

fn require_avoids(pi: &NonnestingPermutation, set: &PatternSet) -> Result<()> {
    if avoids_all(pi.word(), set) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{pi} does not avoid {set}")))
    }
}

/// Maps `π ∈ C_n(1132,2213,2231)` to a Dyck word of semilength `n + 1`
/// other than `(UD)^{n+1}`.
///
/// With `π = α 1 β 1 γ`: the copies in `α` give U/D as usual, then U for the
/// first 1 and an extra UD, then UD for each entry of β with its other copy
/// in γ and D for each entry with its other copy in α, D for the second 1,
/// and one UD per value with both copies in γ.
pub fn thm_2231_bijection(pi: &NonnestingPermutation) -> Result<DyckWord> {
    require_avoids(pi, &thm_2231_patterns())?;
    let d = Decomposition::of(pi);
    let mut steps = steps_of_copies(d.alpha.letters());
    steps.extend([Step::U, Step::U, Step::D]);
    for x in d.beta.letters() {
        if d.b2.contains(x) {
            steps.extend([Step::U, Step::D]);
        } else {
            steps.push(Step::D);
        }
    }
    steps.push(Step::D);
    for _ in &d.c {
        steps.extend([Step::U, Step::D]);
    }
    Ok(DyckWord { steps })
}

/// Recovers `π` from `thm_2231_bijection(π)`.
pub fn thm_2231_inverse(w: &DyckWord) -> Result<NonnestingPermutation> {
    let s = w.steps();
    let p = s
        .windows(2)
        .rposition(|c| c == [Step::U, Step::U])
        .ok_or_else(|| Error::Precondition(format!("{w} has no UU (sawtooth)")))?;
    // After the last UU every U is followed by D: the tail splits into UD and D tokens.
    let mut tokens = Vec::new();
    let mut i = p + 1;
    while i < s.len() {
        let up = s[i] == Step::U;
        tokens.push(up);
        i += if up { 2 } else { 1 };
    }
    // tokens[0] is the inserted UD; the last lone D is the second copy of 1.
    let last_d = tokens.iter().rposition(|&up| !up).expect("balanced word ends with D");
    let middle = &tokens[1..last_d];
    let n_gamma = tokens.len() - last_d - 1;
    let n_beta2 = middle.iter().filter(|&&up| up).count();
    let n_beta1 = middle.len() - n_beta2;

    let mut w0 = s[..=p].to_vec();
    w0.extend(std::iter::repeat_n(Step::D, n_beta1 + 1));
    let sigma = label_112(&DyckWord::new(w0)?.matching())?;

    // σ = st(α 1 β₁ 1); values above 1 shift past B₂ ∪ C = {2..j}.
    let j = (1 + n_beta2 + n_gamma) as u32;
    let lift = |v: u32| if v == 1 { 1 } else { v + j - 1 };
    let sig: Vec<u32> = sigma.word().letters().iter().map(|&v| lift(v)).collect();
    let first_one = sig.iter().position(|&v| v == 1).expect("σ contains 1");

    let mut out: Vec<u32> = sig[..=first_one].to_vec();
    let mut beta1 = sig[first_one + 1..sig.len() - 1].iter();
    let mut next_b2 = 2u32;
    for &up in middle {
        if up {
            out.push(next_b2);
            next_b2 += 1;
        } else {
            out.push(*beta1.next().expect("token count matches β₁"));
        }
    }
    out.push(1);
    out.extend(2..next_b2);
    for c in next_b2..=j {
        out.extend([c, c]);
    }
    NonnestingPermutation::new(Word::from_vec_unchecked(out))
}

/// The encoding of `π ∈ C_n(1322,2231)` by grand Dyck words.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum GrandDyckCode {
    /// No values with both copies on the same side of β; determined by B₁.
    Balanced { b1: Vec<u32> },
    /// Smallest of A ∪ C lies in A: word ends DD, plus the set B₂.
    EndsDown {
        #[serde(serialize_with = "as_string")]
        word: GrandDyckWord,
        b2: Vec<u32>,
    },
    /// Smallest of A ∪ C lies in C: the reversal's code with U and D swapped, plus B₁.
    EndsUp {
        #[serde(serialize_with = "as_string")]
        word: GrandDyckWord,
        b1: Vec<u32>,
    },
}

fn as_string<S: serde::Serializer, T: fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl fmt::Display for GrandDyckCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrandDyckCode::Balanced { b1 } => write!(f, "balanced B1={b1:?}"),
            GrandDyckCode::EndsDown { word, b2 } => write!(f, "{word} B2={b2:?}"),
            GrandDyckCode::EndsUp { word, b1 } => write!(f, "{word} B1={b1:?}"),
        }
    }
}

pub fn grand_dyck_encoding(pi: &NonnestingPermutation) -> Result<GrandDyckCode> {
    require_avoids(pi, &grand_dyck_patterns())?;
    let d = Decomposition::of(pi);
    if d.a.is_empty() && d.c.is_empty() {
        return Ok(GrandDyckCode::Balanced { b1: d.b1 });
    }
    let min_a = d.a.first().copied().unwrap_or(u32::MAX);
    let min_c = d.c.first().copied().unwrap_or(u32::MAX);
    if min_a < min_c {
        let (word, b2) = encode_ends_down(pi, &d)?;
        Ok(GrandDyckCode::EndsDown { word, b2 })
    } else {
        // Reversal swaps the roles of A and C, and of B₁ and B₂.
        let rev = NonnestingPermutation::from_word_unchecked(pi.word().reverse());
        let (word, b1) = encode_ends_down(&rev, &Decomposition::of(&rev))?;
        Ok(GrandDyckCode::EndsUp { word: word.flip(), b1 })
    }
}

fn encode_ends_down(pi: &NonnestingPermutation, d: &Decomposition) -> Result<(GrandDyckWord, Vec<u32>)> {
    let letters = pi.word().letters();
    // Maximal runs of consecutive values alternating between A and C, smallest first.
    let mut marked: Vec<(u32, bool)> =
        d.a.iter().map(|&v| (v, true)).chain(d.c.iter().map(|&v| (v, false))).collect();
    marked.sort_unstable();
    let mut blocks: Vec<(bool, Vec<u32>)> = Vec::new();
    for (v, in_a) in marked {
        match blocks.last_mut() {
            Some((side, vals)) if *side == in_a => vals.push(v),
            _ => blocks.push((in_a, vec![v])),
        }
    }
    debug_assert!(blocks[0].0);

    let restricted = |keep: &BTreeSet<u32>| -> Vec<u32> {
        letters.iter().copied().filter(|v| keep.contains(v)).collect()
    };
    let mut steps = Vec::with_capacity(letters.len());
    for (in_a, vals) in blocks.iter().skip(1).rev() {
        let mut piece = steps_of_copies(&restricted(&vals.iter().copied().collect()));
        if !in_a {
            piece.reverse();
        }
        steps.extend(piece);
    }

    let a = blocks[0].1[0];
    let second_a = letters.iter().rposition(|&v| v == a).expect("a occurs");
    let mut last: BTreeSet<u32> = blocks[0].1.iter().copied().collect();
    last.insert(1);
    for &b in &d.b1 {
        if letters.iter().position(|&v| v == b).expect("b occurs") < second_a {
            last.insert(b);
        }
    }
    let mut tail = steps_of_copies(&restricted(&last));
    let q = tail.iter().rposition(|&s| s == Step::U).expect("contains the first 1");
    if q == 0 || tail[q - 1] != Step::D {
        return Err(Error::Precondition(format!("{pi}: last U of the A₁ block is not preceded by D")));
    }
    tail.swap(q - 1, q);
    steps.extend(tail);
    Ok((GrandDyckWord::new(steps)?, d.b2.clone()))
}

/// Checks the structural claims about `π = α 1 β 1 γ`: β has no repeated
/// entries, α and γ share no values, and B₁ (resp. B₂) appear in the same
/// order in α and β (resp. β and γ).
pub fn decomposition_holds(pi: &NonnestingPermutation) -> bool {
    let d = Decomposition::of(pi);
    let beta: Vec<u32> = d.beta.letters().to_vec();
    let distinct: BTreeSet<u32> = beta.iter().copied().collect();
    if distinct.len() != beta.len() {
        return false;
    }
    let alpha: BTreeSet<u32> = d.alpha.letters().iter().copied().collect();
    if d.gamma.letters().iter().any(|v| alpha.contains(v)) {
        return false;
    }
    let order_in = |w: &Word, set: &[u32]| -> Vec<u32> {
        let mut seen = BTreeSet::new();
        w.letters().iter().copied().filter(|v| set.contains(v) && seen.insert(*v)).collect()
    };
    order_in(&d.alpha, &d.b1) == order_in(&d.beta, &d.b1) && order_in(&d.beta, &d.b2) == order_in(&d.gamma, &d.b2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RoundTripReport {
    pub map: String,
    pub n: usize,
    pub domain_size: u64,
    pub round_trip_failures: u64,
    pub image_mismatch: Vec<String>,
}

impl RoundTripReport {
    pub fn passed(&self) -> bool {
        self.round_trip_failures == 0 && self.image_mismatch.is_empty()
    }
}

/// Every nonnesting matching of `[2n]` labels to a distinct 112-avoider, and
/// these are all of `C_n(112)`.
pub fn certify_label_112(n: usize) -> RoundTripReport {
    let target: BTreeSet<Word> =
        generate_avoiders(n, &"112".parse().expect("static")).map(|p| p.into_word()).collect();
    let mut image = BTreeSet::new();
    let mut failures = 0;
    let domain = dyck_words(n);
    for w in &domain {
        let pi = label_112(&w.matching()).expect("Dyck matchings are nonnesting");
        if nn_to_dyck(&pi) != *w {
            failures += 1;
        }
        image.insert(pi.into_word());
    }
    RoundTripReport {
        map: "label_112".into(),
        n,
        domain_size: domain.len() as u64,
        round_trip_failures: failures,
        image_mismatch: image.symmetric_difference(&target).map(|w| w.to_string()).collect(),
    }
}

/// `duplicate` and `undup` are inverse bijections between `S_n` and `C_n(121)`.
pub fn certify_duplicate(n: usize) -> RoundTripReport {
    let target: BTreeSet<Word> =
        generate_avoiders(n, &"121".parse().expect("static")).map(|p| p.into_word()).collect();
    let mut image = BTreeSet::new();
    let mut failures = 0;
    let perms: Vec<Word> = crate::enumerate::generate_sn_avoiders(n, &PatternSet::empty()).collect();
    for p in &perms {
        let pi = duplicate(p).expect("permutation");
        if undup(&pi).ok().as_ref() != Some(p) {
            failures += 1;
        }
        image.insert(pi.into_word());
    }
    RoundTripReport {
        map: "duplicate".into(),
        n,
        domain_size: perms.len() as u64,
        round_trip_failures: failures,
        image_mismatch: image.symmetric_difference(&target).map(|w| w.to_string()).collect(),
    }
}

/// Matchings and Dyck words correspond one to one under `nn_to_dyck`.
pub fn certify_nn_to_dyck(n: usize) -> RoundTripReport {
    let mut matchings = BTreeSet::new();
    let mut image = BTreeSet::new();
    let mut failures = 0;
    for pi in generate_nonnesting(n) {
        let w = nn_to_dyck(&pi);
        if w.matching() != pi.matching() {
            failures += 1;
        }
        matchings.insert(pi.matching());
        image.insert(w);
    }
    let mut mismatch = Vec::new();
    if image.len() != matchings.len() {
        mismatch.push(format!("{} matchings but {} Dyck words", matchings.len(), image.len()));
    }
    if image.len() as u64 != catalan(n as u64).to_u64_digits().first().copied().unwrap_or(0) {
        mismatch.push(format!("image has {} words, expected the Catalan number", image.len()));
    }
    RoundTripReport {
        map: "nn_to_dyck".into(),
        n,
        domain_size: matchings.len() as u64,
        round_trip_failures: failures,
        image_mismatch: mismatch,
    }
}

/// Round trip over all of `C_n(1132,2213,2231)` and comparison of the image
/// with the non-sawtooth Dyck words of semilength `n + 1`.
pub fn certify_thm_2231(n: usize) -> RoundTripReport {
    let mut image = BTreeSet::new();
    let mut failures = 0;
    let mut size = 0;
    for pi in generate_avoiders(n, &thm_2231_patterns()) {
        size += 1;
        match thm_2231_bijection(&pi) {
            Ok(w) => {
                if thm_2231_inverse(&w).ok().as_ref() != Some(&pi) {
                    failures += 1;
                }
                image.insert(w);
            }
            Err(_) => failures += 1,
        }
    }
    let target: BTreeSet<DyckWord> = dyck_words(n + 1).into_iter().filter(|w| !w.is_sawtooth()).collect();
    RoundTripReport {
        map: "thm_2231".into(),
        n,
        domain_size: size,
        round_trip_failures: failures,
        image_mismatch: image.symmetric_difference(&target).map(|w| w.to_string()).collect(),
    }
}

/// Size of the code space: grand Dyck words of semilength `n - k` ending DD
/// (or UU) paired with subsets of `{2..k+1}`, plus `2^{n-1}` balanced codes.
fn grand_dyck_code_space(n: usize) -> u64 {
    let ends_dd = |m: usize| -> u64 {
        let m = m as i64;
        let total = binomial(2 * m, m);
        let mixed = binomial(2 * m - 2, m - 1) * 2u32;
        u64::try_from((total - mixed) / 2u32).expect("small")
    };
    let paired: u64 = (0..n.saturating_sub(1)).map(|k| ends_dd(n - k) << k).sum();
    2 * paired + (1u64 << (n - 1))
}

fn in_code_space(n: usize, code: &GrandDyckCode) -> bool {
    let (word, set, tail) = match code {
        GrandDyckCode::Balanced { b1 } => return b1.iter().all(|&v| (2..=n as u32).contains(&v)),
        GrandDyckCode::EndsDown { word, b2 } => (word, b2, [Step::D, Step::D]),
        GrandDyckCode::EndsUp { word, b1 } => (word, b1, [Step::U, Step::U]),
    };
    let m = word.semilength();
    if m < 2 || m > n || !word.ends_with(&tail) {
        return false;
    }
    let k = (n - m) as u32;
    set.iter().all(|&v| (2..=k + 1).contains(&v))
}

/// Injectivity over `C_n(1322,2231)`, every code in the code space, and the
/// code space exactly filled.
pub fn certify_grand_dyck(n: usize) -> RoundTripReport {
    let mut image = BTreeSet::new();
    let mut failures = 0;
    let mut mismatch = Vec::new();
    let mut size = 0;
    for pi in generate_avoiders(n, &grand_dyck_patterns()) {
        size += 1;
        match grand_dyck_encoding(&pi) {
            Ok(code) => {
                if !in_code_space(n, &code) {
                    mismatch.push(format!("{pi} -> {code} is outside the code space"));
                }
                if !image.insert(code) {
                    failures += 1;
                }
            }
            Err(e) => mismatch.push(format!("{pi}: {e}")),
        }
    }
    if n >= 1 {
        let space = grand_dyck_code_space(n);
        if image.len() as u64 != space {
            mismatch.push(format!("{} distinct codes, code space has {space}", image.len()));
        }
        let balanced = image.iter().filter(|c| matches!(c, GrandDyckCode::Balanced { .. })).count();
        if balanced as u64 != 1 << (n - 1) {
            mismatch.push(format!("{balanced} balanced codes, expected {}", 1u64 << (n - 1)));
        }
    }
    RoundTripReport {
        map: "grand_dyck".into(),
        n,
        domain_size: size,
        round_trip_failures: failures,
        image_mismatch: mismatch,
    }
}

/// Certification reports for every map at sizes `1..=n_max`.
pub fn certify_all(n_max: usize) -> Vec<RoundTripReport> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        out.push(certify_label_112(n));
        out.push(certify_duplicate(n));
        out.push(certify_nn_to_dyck(n));
        out.push(certify_thm_2231(n));
        out.push(certify_grand_dyck(n));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn nn(s: &str) -> NonnestingPermutation {
        NonnestingPermutation::new(w(s)).unwrap()
    }

    fn dyck(s: &str) -> DyckWord {
        s.parse().unwrap()
    }

    #[test]
    fn dyck_validation() {
        assert!("UDDU".parse::<DyckWord>().is_err());
        assert!("UUD".parse::<DyckWord>().is_err());
        assert!("DU".parse::<GrandDyckWord>().is_ok());
        assert_eq!(dyck_words(3).len(), 5);
        assert_eq!(grand_dyck_words(3).len(), 20);
        assert!(DyckWord::sawtooth(3).is_sawtooth());
    }

    #[test]
    fn labelling() {
        let m = Matching::from_arcs(vec![(1, 2), (3, 4)]).unwrap();
        assert_eq!(label_112(&m).unwrap().word(), &w("2211"));
        let m = Matching::from_arcs(vec![(1, 3), (2, 4)]).unwrap();
        assert_eq!(label_112(&m).unwrap().word(), &w("2121"));
        let nested = Matching::from_arcs(vec![(1, 4), (2, 3)]).unwrap();
        assert!(label_112(&nested).is_err());
    }

    #[test]
    fn duplication() {
        assert_eq!(duplicate(&w("231")).unwrap().word(), &w("223311"));
        assert_eq!(undup(&nn("112233")).unwrap(), w("123"));
        assert!(undup(&nn("1212")).is_err());
        assert!(duplicate(&w("113")).is_err());
    }

    #[test]
    fn dyck_of_matchings() {
        assert_eq!(nn_to_dyck(&nn("1122")).to_string(), "UDUD");
        assert_eq!(nn_to_dyck(&nn("1212")).to_string(), "UUDD");
        let sigma = nn("7 6 7 5 4 3 2 6 1 5 4 3 2 1");
        assert_eq!(nn_to_dyck(&sigma).to_string(), "UUDUUUUDUDDDDD");
    }

    #[test]
    fn thm_2231_worked_example() {
        let pi = nn("12 11 12 10 9 8 7 11 1 2 10 3 4 9 8 5 7 1 2 3 4 5 6 6");
        let w = thm_2231_bijection(&pi).unwrap();
        assert_eq!(w.to_string(), "UUDUUUUDUUDUDDUDUDDDUDDDUD");
        assert_eq!(thm_2231_inverse(&w).unwrap(), pi);
    }

    #[test]
    fn thm_2231_small() {
        assert_eq!(thm_2231_bijection(&nn("11")).unwrap(), dyck("UUDD"));
        assert_eq!(thm_2231_inverse(&dyck("UUDD")).unwrap(), nn("11"));
        assert!(thm_2231_inverse(&DyckWord::sawtooth(3)).is_err());
        assert!(thm_2231_bijection(&nn("1122")).is_ok());
        assert!(thm_2231_bijection(&nn("113232")).is_err());
    }

    #[test]
    fn grand_dyck_worked_example() {
        let pi = nn("17 16 17 16 15 15 12 11 10 12 9 8 11 7 10 5 4 1 2 3 6 9 8 7 5 4 1 2 3 6 13 14 13 14");
        let d = Decomposition::of(&pi);
        assert_eq!(d.b2, vec![2, 3, 6]);
        assert_eq!(d.b1, vec![4, 5, 7, 8, 9]);
        match grand_dyck_encoding(&pi).unwrap() {
            GrandDyckCode::EndsDown { word, b2 } => {
                assert_eq!(word.to_string(), "UUDDUDDDUUUUUDUUDUUDDDDD");
                assert_eq!(b2, vec![2, 3, 6]);
            }
            other => panic!("unexpected code {other}"),
        }
    }

    #[test]
    fn grand_dyck_cases() {
        assert_eq!(grand_dyck_encoding(&nn("1212")).unwrap(), GrandDyckCode::Balanced { b1: vec![] });
        assert_eq!(grand_dyck_encoding(&nn("2121")).unwrap(), GrandDyckCode::Balanced { b1: vec![2] });
        assert_eq!(grand_dyck_encoding(&nn("11")).unwrap(), GrandDyckCode::Balanced { b1: vec![] });
        let up = grand_dyck_encoding(&nn("112233")).unwrap();
        assert!(matches!(up, GrandDyckCode::EndsUp { .. }), "{up}");
        let down = grand_dyck_encoding(&nn("332211")).unwrap();
        assert!(matches!(down, GrandDyckCode::EndsDown { .. }), "{down}");
        assert!(grand_dyck_encoding(&nn("132132")).is_err());
    }

    #[test]
    fn code_space_matches_formula() {
        for n in 1..=10u64 {
            let expected = binomial(2 * n as i64, n as i64) - (1u64 << (n - 1));
            assert_eq!(grand_dyck_code_space(n as usize), u64::try_from(expected).unwrap(), "n={n}");
        }
    }

    #[test]
    fn certifications_small() {
        for r in certify_all(4) {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn decomposition_properties() {
        for n in 1..=4 {
            assert!(generate_nonnesting(n).all(|p| decomposition_holds(&p)));
        }
    }
}
