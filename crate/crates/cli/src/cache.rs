//! On-disk cache of expansions and reports, keyed by a SHA-256 of the request.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

pub const CACHE_ENV: &str = "ROOTLIFT_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    kind: String,
    root_system: String,
    params: String,
    version: String,
    payload: T,
}

#[derive(Debug, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
    disabled: AtomicBool,
    hits: AtomicUsize,
    misses: AtomicUsize,
    writes: AtomicUsize,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache::default()
    }

    /// Falls back to an in-memory (no-op) cache if `dir` cannot be created.
    pub fn open(dir: &Path) -> Self {
        match std::fs::create_dir_all(dir) {
            Ok(()) => Cache {
                dir: Some(dir.to_path_buf()),
                ..Cache::default()
            },
            Err(e) => {
                eprintln!("warning: cache directory {} unusable ({e}); continuing without cache", dir.display());
                Cache::disabled()
            }
        }
    }

    pub fn is_enabled(&self) -> bool {
        self.dir.is_some() && !self.disabled.load(Ordering::Relaxed)
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }

    pub fn writes(&self) -> usize {
        self.writes.load(Ordering::Relaxed)
    }

    pub fn key(kind: &str, root: &str, params: &str) -> String {
        let mut h = Sha256::new();
        for part in [kind, root, params, crate::VERSION] {
            h.update(part.as_bytes());
            h.update([0u8]);
        }
        hex::encode(h.finalize())
    }

    fn path(&self, kind: &str, root: &str, params: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref().filter(|_| self.is_enabled())?;
        Some(dir.join(format!("{}.json", Self::key(kind, root, params))))
    }

    pub fn load<T: DeserializeOwned>(&self, kind: &str, root: &str, params: &str) -> Option<T> {
        let path = self.path(kind, root, params)?;
        let found = std::fs::read(&path)
            .ok()
            .and_then(|b| serde_json::from_slice::<Entry<T>>(&b).ok())
            .filter(|e| e.kind == kind && e.root_system == root && e.params == params && e.version == crate::VERSION);
        match found {
            Some(e) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(e.payload)
            }
            None => {
                self.misses.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    /// Write to a temporary file in the cache directory, then rename into place.
    pub fn store<T: Serialize>(&self, kind: &str, root: &str, params: &str, payload: &T) {
        let Some(path) = self.path(kind, root, params) else { return };
        let entry = Entry {
            kind: kind.into(),
            root_system: root.into(),
            params: params.into(),
            version: crate::VERSION.into(),
            payload,
        };
        let res = (|| -> std::io::Result<()> {
            let dir = path.parent().expect("cache file has a parent");
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            serde_json::to_writer(&mut tmp, &entry)?;
            tmp.flush()?;
            tmp.persist(&path).map_err(|e| e.error)?;
            Ok(())
        })();
        match res {
            Ok(()) => {
                self.writes.fetch_add(1, Ordering::Relaxed);
            }
            Err(e) => {
                if !self.disabled.swap(true, Ordering::Relaxed) {
                    eprintln!("warning: cache write failed ({e}); continuing without cache");
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_keys() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::open(dir.path());
        assert!(c.load::<Vec<i32>>("k", "A4", "3").is_none());
        c.store("k", "A4", "3", &vec![1, 2, 3]);
        assert_eq!(c.load::<Vec<i32>>("k", "A4", "3"), Some(vec![1, 2, 3]));
        assert!(c.load::<Vec<i32>>("k", "A4", "4").is_none());
        assert_eq!((c.hits(), c.misses(), c.writes()), (1, 2, 1));
        assert_ne!(Cache::key("k", "A4", "3"), Cache::key("k", "A43", ""));
    }

    #[test]
    fn disabled_cache_is_inert() {
        let c = Cache::disabled();
        c.store("k", "A4", "3", &1);
        assert!(c.load::<i32>("k", "A4", "3").is_none());
        assert!(!c.is_enabled());
    }
}
