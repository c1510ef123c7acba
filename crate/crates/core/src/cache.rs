//! Append-only JSON-lines cache of brute-force counts.
//!
//! Each line is `{"patterns": [...], "n": k, "count": "...", "engineVersion": v}`.
//! Lines from another engine version are ignored. New counts are buffered and
//! written by a single [`CountCache::flush`] at the end of a run.

use std::collections::HashMap;
use std::fmt::Display;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::enumerate::count_avoiders;
use crate::error::{Error, Result};
use crate::pattern::PatternSet;
use crate::ENGINE_VERSION;

pub const CACHE_ENV: &str = "NONNEST_CACHE";
pub const DEFAULT_CACHE_FILE: &str = ".nonnest-cache.jsonl";

/// Serializes any `Display` value as a JSON string (used for big integers).
pub fn decimal<S: serde::Serializer, T: Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CacheRecord {
    pub patterns: Vec<String>,
    pub n: usize,
    pub count: String,
    pub engine_version: u32,
}

type Key = (String, usize);

fn key_of(set: &PatternSet, n: usize) -> Key {
    (set.to_compact(), n)
}

#[derive(Default)]
struct Inner {
    known: HashMap<Key, BigUint>,
    pending: Vec<CacheRecord>,
    hits: Vec<Key>,
}

pub struct CountCache {
    path: Option<PathBuf>,
    inner: Mutex<Inner>,
}

impl CountCache {
    /// `$NONNEST_CACHE` if set, else `.nonnest-cache.jsonl` in the working directory.
    pub fn default_path() -> PathBuf {
        std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_FILE))
    }

    pub fn in_memory() -> Self {
        CountCache { path: None, inner: Mutex::new(Inner::default()) }
    }

    /// Loads `path` if it exists. Malformed lines and lines from other
    /// engine versions are skipped.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut inner = Inner::default();
        if path.exists() {
            let file = File::open(&path).map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
            for line in BufReader::new(file).lines() {
                let line = line.map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
                let Ok(rec) = serde_json::from_str::<CacheRecord>(&line) else { continue };
                if rec.engine_version != ENGINE_VERSION {
                    continue;
                }
                let Ok(set) = rec.patterns.join(",").parse::<PatternSet>() else { continue };
                let Ok(count) = rec.count.parse::<BigUint>() else { continue };
                inner.known.insert(key_of(&set, rec.n), count);
            }
        }
        Ok(CountCache { path: Some(path), inner: Mutex::new(inner) })
    }

    pub fn len(&self) -> usize {
        self.inner.lock().expect("cache lock").known.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Cached count, or a fresh one that is queued for the next flush.
    pub fn count(&self, n: usize, set: &PatternSet) -> BigUint {
        let key = key_of(set, n);
        {
            let mut inner = self.inner.lock().expect("cache lock");
            if let Some(v) = inner.known.get(&key).cloned() {
                inner.hits.push(key);
                return v;
            }
        }
        let v = count_avoiders(n, set);
        let mut inner = self.inner.lock().expect("cache lock");
        if !inner.known.contains_key(&key) {
            inner.known.insert(key.clone(), v.clone());
            inner.pending.push(CacheRecord {
                patterns: set.iter().map(|p| p.to_compact()).collect(),
                n,
                count: v.to_string(),
                engine_version: ENGINE_VERSION,
            });
        }
        v
    }

    pub fn hit_count(&self) -> usize {
        self.inner.lock().expect("cache lock").hits.len()
    }

    /// Recomputes up to `k` distinct cache hits of this run. Returns how many
    /// were checked, or an error naming the first stale entry.
    pub fn spot_check(&self, k: usize) -> Result<usize> {
        let sample: Vec<(Key, BigUint)> = {
            let inner = self.inner.lock().expect("cache lock");
            let mut hits = inner.hits.clone();
            hits.sort();
            hits.dedup();
            let mut rng = StdRng::seed_from_u64(hits.len() as u64);
            hits.choose_multiple(&mut rng, k).map(|key| (key.clone(), inner.known[key].clone())).collect()
        };
        for ((patterns, n), cached) in &sample {
            let set: PatternSet = patterns.parse()?;
            let fresh = count_avoiders(*n, &set);
            if fresh != *cached {
                return Err(Error::Catalog(format!(
                    "stale cache entry for {{{patterns}}} at n = {n}: cached {cached}, recomputed {fresh}"
                )));
            }
        }
        Ok(sample.len())
    }

    /// Appends every count computed since the last flush.
    pub fn flush(&self) -> Result<usize> {
        let pending = std::mem::take(&mut self.inner.lock().expect("cache lock").pending);
        let Some(path) = &self.path else { return Ok(0) };
        if pending.is_empty() {
            return Ok(0);
        }
        let io = |e: std::io::Error| Error::Catalog(format!("{}: {e}", path.display()));
        let mut file = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
        let mut buf = String::new();
        for rec in &pending {
            buf.push_str(&serde_json::to_string(rec).expect("plain record"));
            buf.push('\n');
        }
        file.write_all(buf.as_bytes()).map_err(io)?;
        Ok(pending.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::ps;

    fn temp_path(tag: &str) -> PathBuf {
        std::env::temp_dir().join(format!("nonnest-cache-{tag}-{}.jsonl", std::process::id()))
    }

    #[test]
    fn round_trip_through_file() {
        let path = temp_path("rt");
        let _ = std::fs::remove_file(&path);
        let c = CountCache::open(&path).unwrap();
        assert_eq!(c.count(4, &ps("123")), BigUint::from(82u32));
        assert_eq!(c.flush().unwrap(), 1);
        let again = CountCache::open(&path).unwrap();
        assert_eq!(again.len(), 1);
        assert_eq!(again.count(4, &ps("123")), BigUint::from(82u32));
        assert_eq!(again.hit_count(), 1);
        assert_eq!(again.spot_check(3).unwrap(), 1);
        assert_eq!(again.flush().unwrap(), 0);
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn stale_entries_are_caught_and_old_versions_ignored() {
        let path = temp_path("stale");
        let lines = [
            r#"{"patterns":["123"],"n":4,"count":"83","engineVersion":1}"#.replace(":1}", &format!(":{ENGINE_VERSION}}}")),
            r#"{"patterns":["112"],"n":4,"count":"99","engineVersion":0}"#.to_string(),
            "not json".to_string(),
        ];
        std::fs::write(&path, lines.join("\n")).unwrap();
        let c = CountCache::open(&path).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.count(4, &ps("112")), BigUint::from(14u32));
        c.count(4, &ps("123"));
        assert!(c.spot_check(3).is_err());
        std::fs::remove_file(&path).unwrap();
    }

    #[test]
    fn keys_ignore_pattern_order() {
        let c = CountCache::in_memory();
        c.count(3, &ps("132,213"));
        c.count(3, &ps("213,132"));
        assert_eq!(c.hit_count(), 1);
        assert_eq!(c.flush().unwrap(), 0);
    }
}
