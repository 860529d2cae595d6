//! Content-addressed result cache on disk.
//!
//! An entry is a file named by the SHA-256 of its key; the first line holds the SHA-256
//! of the payload, so a truncated or edited entry is detected and treated as a miss.
//! Writes go through a temporary file and an atomic rename. Every I/O failure is
//! swallowed: a broken cache only costs a recomputation.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::CODE_VERSION;

pub const CACHE_ENV: &str = "KH_CACHE_DIR";

/// What a cached result depends on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheKey {
    pub diagram: String,
    pub frobenius: String,
    pub ring: String,
    pub version: String,
}

impl CacheKey {
    pub fn new(diagram: impl Into<String>, frobenius: impl Into<String>, ring: impl Into<String>) -> Self {
        Self { diagram: diagram.into(), frobenius: frobenius.into(), ring: ring.into(), version: CODE_VERSION.to_string() }
    }

    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for part in [&self.version, &self.frobenius, &self.ring, &self.diagram] {
            h.update((part.len() as u64).to_le_bytes());
            h.update(part.as_bytes());
        }
        hex::encode(h.finalize())
    }
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// `$KH_CACHE_DIR`, else `$HOME/.cache/kh`; disabled when neither is set or the
    /// variable is empty.
    pub fn from_env() -> Self {
        let dir = match std::env::var_os(CACHE_ENV) {
            Some(v) if v.is_empty() => None,
            Some(v) => Some(PathBuf::from(v)),
            None => std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache").join("kh")),
        };
        Self { dir }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Self { dir: Some(dir.into()) }
    }

    pub fn disabled() -> Self {
        Self { dir: None }
    }

    fn path(&self, key: &CacheKey) -> Option<PathBuf> {
        Some(self.dir.as_ref()?.join(format!("{}.json", key.digest())))
    }

    pub fn get(&self, key: &CacheKey) -> Option<String> {
        let path = self.path(key)?;
        let raw = fs::read_to_string(&path).ok()?;
        let (sum, payload) = raw.split_once('\n')?;
        if sum != checksum(payload) {
            let _ = fs::remove_file(&path);
            return None;
        }
        Some(payload.to_string())
    }

    /// Stores `payload`; returns whether it was written.
    pub fn put(&self, key: &CacheKey, payload: &str) -> bool {
        let (Some(dir), Some(path)) = (self.dir.as_ref(), self.path(key)) else { return false };
        let write = || -> std::io::Result<()> {
            fs::create_dir_all(dir)?;
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            writeln!(tmp, "{}", checksum(payload))?;
            tmp.write_all(payload.as_bytes())?;
            tmp.persist(&path).map_err(|e| e.error)?;
            Ok(())
        };
        write().is_ok()
    }

    /// Cached payload for `key`, or `compute()` stored under it.
    pub fn get_or_compute<E>(&self, key: &CacheKey, compute: impl FnOnce() -> Result<String, E>) -> Result<String, E> {
        if let Some(hit) = self.get(key) {
            return Ok(hit);
        }
        let fresh = compute()?;
        self.put(key, &fresh);
        Ok(fresh)
    }
}

fn checksum(payload: &str) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(payload.as_bytes())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key() -> CacheKey {
        CacheKey::new("edges=2;loops=0;0:0,1,1,0:R+", "KHOVANOV", "Z")
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::at(dir.path());
        assert_eq!(c.get(&key()), None);
        assert!(c.put(&key(), "{\"ring\":\"Z\"}"));
        assert_eq!(c.get(&key()).as_deref(), Some("{\"ring\":\"Z\"}"));
    }

    #[test]
    fn version_is_part_of_the_key() {
        let mut other = key();
        other.version.push_str("-next");
        assert_ne!(key().digest(), other.digest());
        assert_ne!(key().digest(), CacheKey::new("x", "KHOVANOV", "Q").digest());
    }

    #[test]
    fn corruption_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::at(dir.path());
        c.put(&key(), "payload");
        let path = c.path(&key()).unwrap();
        let text = fs::read_to_string(&path).unwrap().replace("payload", "pay1oad");
        fs::write(&path, text).unwrap();
        assert_eq!(c.get(&key()), None);
        assert!(!path.exists());
        let mut calls = 0;
        let v: Result<String, ()> = c.get_or_compute(&key(), || {
            calls += 1;
            Ok("payload".into())
        });
        assert_eq!((v.unwrap().as_str(), calls), ("payload", 1));
        assert_eq!(c.get(&key()).as_deref(), Some("payload"));
    }

    #[test]
    fn unusable_directory_is_not_fatal() {
        let file = tempfile::NamedTempFile::new().unwrap();
        let c = Cache::at(file.path().join("sub"));
        assert!(!c.put(&key(), "x"));
        assert_eq!(c.get(&key()), None);
        assert!(!Cache::disabled().put(&key(), "x"));
    }
}
