//! On-disk result cache. Entries are JSON files named by the SHA-256 of
//! `(schema version, operation, k, parameters)`. A missing, unreadable or
//! corrupt entry is recomputed and rewritten; the cache never decides a
//! result on its own.

use std::fs;
use std::path::PathBuf;

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

const SCHEMA_VERSION: &str = "pmscheme-cache-v1";

#[derive(Debug, Clone, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// No caching.
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: Some(dir.into()) }
    }

    /// `$PMSCHEME_CACHE`, or `./.pmscheme-cache`. An empty value disables it.
    pub fn from_env() -> Self {
        match std::env::var_os("PMSCHEME_CACHE") {
            Some(v) if v.is_empty() => Cache::disabled(),
            Some(v) => Cache::at(v),
            None => Cache::at(".pmscheme-cache"),
        }
    }

    pub fn dir(&self) -> Option<&PathBuf> {
        self.dir.as_ref()
    }

    pub fn key(op: &str, k: usize, params: &str) -> String {
        let mut h = Sha256::new();
        h.update(format!("{SCHEMA_VERSION}\n{op}\n{k}\n{params}"));
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// Returns the cached value if it loads and passes `check`, otherwise
    /// computes, stores and returns a fresh one.
    pub fn get_or_compute<T, E>(
        &self,
        op: &str,
        k: usize,
        params: &str,
        check: impl Fn(&T) -> bool,
        compute: impl FnOnce() -> Result<T, E>,
    ) -> Result<T, E>
    where
        T: Serialize + DeserializeOwned,
    {
        let key = Cache::key(op, k, params);
        let Some(path) = self.path(&key) else {
            return compute();
        };
        if let Ok(text) = fs::read_to_string(&path) {
            match serde_json::from_str::<T>(&text) {
                Ok(v) if check(&v) => return Ok(v),
                _ => eprintln!("warning: cache entry {} is corrupt, recomputing", path.display()),
            }
        }
        let v = compute()?;
        if let Ok(text) = serde_json::to_string(&v) {
            let stored = fs::create_dir_all(path.parent().expect("joined path")).and_then(|_| fs::write(&path, text));
            if let Err(e) = stored {
                eprintln!("warning: could not write cache entry {}: {e}", path.display());
            }
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupt_entries_are_recomputed() {
        let dir = std::env::temp_dir().join(format!("pmscheme-cache-test-{}", std::process::id()));
        let cache = Cache::at(&dir);
        let v: Result<Vec<u32>, ()> = cache.get_or_compute("t", 1, "", |_| true, || Ok(vec![1, 2]));
        assert_eq!(v, Ok(vec![1, 2]));
        let v: Result<Vec<u32>, ()> = cache.get_or_compute("t", 1, "", |_| true, || panic!("should hit"));
        assert_eq!(v, Ok(vec![1, 2]));
        fs::write(dir.join(format!("{}.json", Cache::key("t", 1, ""))), "{not json").unwrap();
        let v: Result<Vec<u32>, ()> = cache.get_or_compute("t", 1, "", |_| true, || Ok(vec![3]));
        assert_eq!(v, Ok(vec![3]));
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn keys_depend_on_every_field() {
        let a = Cache::key("quotient", 6, "[12]/[10,2]");
        assert_ne!(a, Cache::key("quotient", 7, "[12]/[10,2]"));
        assert_ne!(a, Cache::key("char-table", 6, "[12]/[10,2]"));
        assert_ne!(a, Cache::key("quotient", 6, "[12]/[8,4]"));
        assert_eq!(a.len(), 64);
    }
}
