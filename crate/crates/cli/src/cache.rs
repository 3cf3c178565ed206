//! On-disk cache for spectrum results, keyed by a content hash.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const CACHE_ENV: &str = "OBSLAB_CACHE_DIR";

/// Hex SHA-256 of the parts, each terminated by a NUL byte.
pub fn content_hash(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
        h.update([0u8]);
    }
    hex::encode(h.finalize())
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// `$OBSLAB_CACHE_DIR`, else `$HOME/.cache/obslab`. `None` when neither
    /// is set.
    pub fn from_env() -> Option<Cache> {
        if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
            return Some(Cache { dir: dir.into() });
        }
        let home = std::env::var_os("HOME").filter(|d| !d.is_empty())?;
        Some(Cache { dir: Path::new(&home).join(".cache").join("obslab") })
    }

    #[cfg(test)]
    pub fn at(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    fn entry(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored entry; unreadable entries count as misses.
    pub fn get(&self, key: &str) -> Option<String> {
        fs::read_to_string(self.entry(key)).ok()
    }

    /// Writes through a temporary file so readers never see a partial entry.
    pub fn put(&self, key: &str, body: &str) -> Result<(), CliError> {
        fs::create_dir_all(&self.dir).map_err(|e| CliError::io(&self.dir, e))?;
        let tmp = self.dir.join(format!("{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, body).map_err(|e| CliError::io(&tmp, e))?;
        let dest = self.entry(key);
        fs::rename(&tmp, &dest).map_err(|e| CliError::io(&dest, e))
    }
}
