//! Shared memo tables for the recursive computations.
//!
//! Lookups take a read lock; insertion is atomic per key and first writer wins.
//! Two threads may compute the same entry concurrently; both produce the same
//! value, so the duplicate is simply dropped.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use crate::error::CdError;
use crate::ncpoly::{g_cd, NcPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CacheKind {
    Hypersimplex,
    Cuspidal,
    W,
}

impl CacheKind {
    pub const ALL: [CacheKind; 3] = [CacheKind::Hypersimplex, CacheKind::Cuspidal, CacheKind::W];

    pub fn as_str(self) -> &'static str {
        match self {
            CacheKind::Hypersimplex => "hypersimplex",
            CacheKind::Cuspidal => "cuspidal",
            CacheKind::W => "w",
        }
    }

    pub fn key_len(self) -> usize {
        match self {
            CacheKind::Hypersimplex => 2,
            CacheKind::Cuspidal => 4,
            CacheKind::W => 5,
        }
    }
}

impl fmt::Display for CacheKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CacheKind {
    type Err = CdError;

    fn from_str(s: &str) -> Result<Self, CdError> {
        match s {
            "hypersimplex" => Ok(CacheKind::Hypersimplex),
            "cuspidal" => Ok(CacheKind::Cuspidal),
            "w" => Ok(CacheKind::W),
            other => Err(CdError::Parse(format!("unknown cache kind {other:?}"))),
        }
    }
}

#[derive(Debug)]
struct Table<K> {
    map: RwLock<HashMap<K, Arc<NcPoly>>>,
}

impl<K> Default for Table<K> {
    fn default() -> Self {
        Table {
            map: RwLock::new(HashMap::new()),
        }
    }
}

impl<K: Eq + Hash + Clone> Table<K> {
    fn get(&self, key: &K) -> Option<Arc<NcPoly>> {
        self.map.read().unwrap().get(key).cloned()
    }

    fn insert(&self, key: K, value: NcPoly) -> Arc<NcPoly> {
        let mut map = self.map.write().unwrap();
        map.entry(key).or_insert_with(|| Arc::new(value)).clone()
    }

    fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    fn snapshot(&self) -> Vec<(K, Arc<NcPoly>)> {
        self.map
            .read()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }
}

/// Memo tables for hypersimplices, cuspidal polytopes, W-terms, hypersimplex
/// products and the `g_cd` family.
#[derive(Debug, Default)]
pub struct Memo {
    hypersimplex: Table<[usize; 2]>,
    cuspidal: Table<[usize; 4]>,
    w: Table<[usize; 5]>,
    products: Table<[usize; 4]>,
    g: Table<usize>,
}

impl Memo {
    pub fn new() -> Self {
        Memo::default()
    }

    pub fn get(&self, kind: CacheKind, key: &[usize]) -> Option<Arc<NcPoly>> {
        match kind {
            CacheKind::Hypersimplex => self.hypersimplex.get(&key.try_into().ok()?),
            CacheKind::Cuspidal => self.cuspidal.get(&key.try_into().ok()?),
            CacheKind::W => self.w.get(&key.try_into().ok()?),
        }
    }

    pub fn insert(&self, kind: CacheKind, key: &[usize], value: NcPoly) -> Arc<NcPoly> {
        assert_eq!(key.len(), kind.key_len(), "bad {kind} key {key:?}");
        match kind {
            CacheKind::Hypersimplex => self.hypersimplex.insert(key.try_into().unwrap(), value),
            CacheKind::Cuspidal => self.cuspidal.insert(key.try_into().unwrap(), value),
            CacheKind::W => self.w.insert(key.try_into().unwrap(), value),
        }
    }

    pub fn len(&self, kind: CacheKind) -> usize {
        match kind {
            CacheKind::Hypersimplex => self.hypersimplex.len(),
            CacheKind::Cuspidal => self.cuspidal.len(),
            CacheKind::W => self.w.len(),
        }
    }

    /// All persisted entries, sorted by kind and key.
    pub fn entries(&self) -> Vec<(CacheKind, Vec<usize>, Arc<NcPoly>)> {
        let mut out: Vec<_> = self
            .hypersimplex
            .snapshot()
            .into_iter()
            .map(|(k, v)| (CacheKind::Hypersimplex, k.to_vec(), v))
            .chain(
                self.cuspidal
                    .snapshot()
                    .into_iter()
                    .map(|(k, v)| (CacheKind::Cuspidal, k.to_vec(), v)),
            )
            .chain(
                self.w
                    .snapshot()
                    .into_iter()
                    .map(|(k, v)| (CacheKind::W, k.to_vec(), v)),
            )
            .collect();
        out.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));
        out
    }

    pub(crate) fn product(&self, key: [usize; 4]) -> Option<Arc<NcPoly>> {
        self.products.get(&key)
    }

    pub(crate) fn insert_product(&self, key: [usize; 4], value: NcPoly) -> Arc<NcPoly> {
        self.products.insert(key, value)
    }

    /// Cached [`g_cd`].
    pub fn g(&self, t: usize) -> Arc<NcPoly> {
        if let Some(v) = self.g.get(&t) {
            return v;
        }
        self.g.insert(t, g_cd(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_insert_wins() {
        let memo = Memo::new();
        let a = memo.insert(CacheKind::Hypersimplex, &[1, 2], NcPoly::c());
        let b = memo.insert(CacheKind::Hypersimplex, &[1, 2], NcPoly::d());
        assert_eq!(*a, NcPoly::c());
        assert_eq!(*b, NcPoly::c());
        assert_eq!(memo.len(CacheKind::Hypersimplex), 1);
        assert!(memo.get(CacheKind::Cuspidal, &[1, 2]).is_none());
    }

    #[test]
    fn concurrent_fill_is_idempotent() {
        let memo = Arc::new(Memo::new());
        std::thread::scope(|s| {
            for _ in 0..8 {
                let memo = memo.clone();
                s.spawn(move || {
                    for t in 0..10 {
                        memo.g(t);
                    }
                });
            }
        });
        for t in 0..10 {
            assert_eq!(*memo.g(t), g_cd(t));
        }
    }

    #[test]
    fn kind_names_roundtrip() {
        for kind in CacheKind::ALL {
            assert_eq!(kind.as_str().parse::<CacheKind>().unwrap(), kind);
        }
        assert!("pyramid".parse::<CacheKind>().is_err());
    }
}
