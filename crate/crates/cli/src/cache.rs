//! Content-addressed cache for expensive constructions.
//!
//! Entries are keyed by the SHA-256 of a description of the construction and
//! the hashes of its inputs, and written atomically. Unreadable entries are
//! ignored with a warning and recomputed.

use std::fs;
use std::path::PathBuf;

use weakhopf::io::Artifact;

use crate::files::{sha256_hex, write_atomic};

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    /// Key for a construction name and its input hashes.
    pub fn key(parts: &[&str]) -> String {
        sha256_hex(format!("{}\n{}", env!("CARGO_PKG_VERSION"), parts.join("\n")).as_bytes())
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn lookup(&self, key: &str, what: &str) -> Option<Artifact> {
        let path = self.path(key)?;
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(_) => {
                log::info!("cache miss: {what}");
                return None;
            }
        };
        match Artifact::from_json(&text) {
            Ok(a) => {
                log::info!("cache hit: {what}");
                Some(a)
            }
            Err(e) => {
                log::warn!("ignoring corrupted cache entry {}: {e}", path.display());
                None
            }
        }
    }

    pub fn store(&self, key: &str, artifact: &Artifact) {
        let Some(path) = self.path(key) else { return };
        if let Err(e) = write_atomic(&path, &artifact.to_json()) {
            log::warn!("could not write cache entry {}: {e:#}", path.display());
        }
    }

    /// Looks up `key`, decoding with `decode`; on a miss or a bad entry,
    /// computes, stores and returns a fresh value.
    pub fn get_or_insert<T>(
        &self,
        key: &str,
        what: &str,
        decode: impl Fn(&Artifact) -> Option<T>,
        compute: impl FnOnce() -> anyhow::Result<(T, Artifact)>,
    ) -> anyhow::Result<T> {
        if let Some(a) = self.lookup(key, what) {
            match decode(&a) {
                Some(v) => return Ok(v),
                None => log::warn!("ignoring cache entry for {what} of the wrong shape"),
            }
        }
        let (value, artifact) = compute()?;
        self.store(key, &artifact);
        Ok(value)
    }
}
