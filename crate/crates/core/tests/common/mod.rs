//! Slow, obviously-correct reference implementations for cross-checks.
#![allow(dead_code)]

use nonnest::{PatternSet, Word};

/// All distinct arrangements of {1,1,...,n,n} in lexicographic order.
pub fn doubled_arrangements(n: usize) -> Vec<Vec<u32>> {
    fn go(left: &mut [u8], cur: &mut Vec<u32>, len: usize, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in 0..left.len() {
            if left[v] > 0 {
                left[v] -= 1;
                cur.push(v as u32 + 1);
                go(left, cur, len, out);
                cur.pop();
                left[v] += 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![2; n], &mut Vec::new(), 2 * n, &mut out);
    out
}

/// Nonnesting test straight from the definition: no two arcs nest.
pub fn nonnesting_by_arcs(w: &[u32]) -> bool {
    let n = w.len() / 2;
    let mut arcs = vec![(usize::MAX, 0); n + 1];
    for (i, &x) in w.iter().enumerate() {
        let a = &mut arcs[x as usize];
        if a.0 == usize::MAX {
            a.0 = i;
        } else {
            a.1 = i;
        }
    }
    let arcs = &arcs[1..];
    !arcs.iter().any(|&(a, b)| arcs.iter().any(|&(c, d)| a < c && d < b))
}

/// Containment by trying every index subset.
pub fn contains_naive(w: &[u32], p: &[u32]) -> bool {
    let k = p.len();
    if k == 0 {
        return true;
    }
    if k > w.len() {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let ok = (0..k).all(|a| {
            (0..k).all(|b| w[idx[a]].cmp(&w[idx[b]]) == p[a].cmp(&p[b]))
        });
        if ok {
            return true;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] < w.len() - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn avoids_naive(w: &[u32], set: &PatternSet) -> bool {
    set.iter().all(|p| !contains_naive(w, p.letters()))
}

/// All nonnesting permutations of size n, by filtering every arrangement.
pub fn nonnesting_naive(n: usize) -> Vec<Vec<u32>> {
    doubled_arrangements(n).into_iter().filter(|w| nonnesting_by_arcs(w)).collect()
}

pub fn avoiders_naive(n: usize, set: &PatternSet) -> Vec<Vec<u32>> {
    nonnesting_naive(n).into_iter().filter(|w| avoids_naive(w, set)).collect()
}

pub fn count_naive(n: usize, set: &PatternSet) -> u64 {
    avoiders_naive(n, set).len() as u64
}

pub fn word(s: &str) -> Word {
    s.parse().unwrap()
}

pub fn set(s: &str) -> PatternSet {
    s.parse().unwrap()
}

/// Sorted letter vectors of the pruned generator.
pub fn avoiders_fast(n: usize, set: &PatternSet) -> Vec<Vec<u32>> {
    let mut v: Vec<Vec<u32>> = nonnest::generate_avoiders(n, set).map(|p| p.word().letters().to_vec()).collect();
    v.sort();
    v
}
