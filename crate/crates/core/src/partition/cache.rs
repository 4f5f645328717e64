use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use serde::Serialize;

use super::z_closed;
use crate::qexact::QPoly;

/// Environment variable overriding the default entry limit of a [`ZCache`].
pub const CACHE_SIZE_ENV: &str = "XXZPATHS_CACHE_SIZE";

const DEFAULT_CAPACITY: usize = 1 << 16;

/// Shared memo table `(n, m) → Z(n, m)`.
///
/// Readers never block each other. Entries are write-once: a value, once
/// visible, is never replaced. When the table is full new values are still
/// returned but not stored.
#[derive(Debug)]
pub struct ZCache {
    table: RwLock<HashMap<(u64, u64), Arc<QPoly>>>,
    capacity: usize,
    hits: AtomicU64,
    misses: AtomicU64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: usize,
    pub capacity: usize,
}

impl Default for ZCache {
    fn default() -> Self {
        Self::new()
    }
}

impl ZCache {
    /// Capacity from `XXZPATHS_CACHE_SIZE` if set and valid, else 65536.
    pub fn new() -> Self {
        let capacity = std::env::var(CACHE_SIZE_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_CAPACITY);
        Self::with_capacity(capacity)
    }

    pub fn with_capacity(capacity: usize) -> Self {
        ZCache {
            table: RwLock::new(HashMap::new()),
            capacity,
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    pub fn get(&self, n: u64, m: u64) -> Option<QPoly> {
        let found = self
            .table
            .read()
            .expect("cache lock poisoned")
            .get(&(n, m))
            .map(|v| QPoly::clone(v));
        match found {
            Some(_) => self.hits.fetch_add(1, Ordering::Relaxed),
            None => self.misses.fetch_add(1, Ordering::Relaxed),
        };
        found
    }

    /// Stores `value` unless an entry already exists or the table is full.
    pub fn insert(&self, n: u64, m: u64, value: QPoly) {
        let mut table = self.table.write().expect("cache lock poisoned");
        if table.len() < self.capacity {
            table.entry((n, m)).or_insert_with(|| Arc::new(value));
        }
    }

    /// Cached `Z(n, m)`, computing it with the closed form on a miss.
    pub fn get_or_closed(&self, n: u64, m: u64) -> QPoly {
        if let Some(v) = self.get(n, m) {
            return v;
        }
        let v = z_closed(n, m);
        self.insert(n, m, v.clone());
        v
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            entries: self.table.read().expect("cache lock poisoned").len(),
            capacity: self.capacity,
        }
    }
}
