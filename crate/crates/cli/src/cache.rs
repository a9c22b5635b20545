//! Content-addressed store of check results.
//!
//! A result lives at `<root>/<first two hex digits>/<sha256>.json`, where the
//! digest covers the tool version, the check name, its parameters and the
//! canonical form of the complex. Entries are written to a temporary file
//! and renamed into place, so concurrent writers of the same key race
//! harmlessly: both write identical bytes and one rename wins.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::CliError;

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Clone, Debug)]
pub struct Cache {
    root: PathBuf,
}

impl Cache {
    pub fn open(root: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(root).map_err(|e| CliError::Io(format!("{}: {e}", root.display())))?;
        Ok(Cache {
            root: root.to_path_buf(),
        })
    }

    pub fn key(parts: &[&str]) -> String {
        let mut h = Sha256::new();
        for p in parts {
            h.update((p.len() as u64).to_le_bytes());
            h.update(p.as_bytes());
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.root.join(&key[..2]).join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        // a corrupt entry is treated as a miss and overwritten
        serde_json::from_str(&text).ok()
    }

    pub fn insert(&self, key: &str, value: &Value) -> Result<(), CliError> {
        let path = self.path(key);
        let dir = path.parent().expect("has parent");
        let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
        fs::create_dir_all(dir).map_err(io)?;
        let tmp = dir.join(format!(
            ".{key}.{}.{}.tmp",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(
            serde_json::to_string(value)
                .expect("serializable")
                .as_bytes(),
        )
        .map_err(io)?;
        f.sync_all().map_err(io)?;
        fs::rename(&tmp, &path).map_err(io)
    }

    pub fn get_or_insert_with<F>(&self, key: &str, compute: F) -> Result<Value, CliError>
    where
        F: FnOnce() -> Result<Value, CliError>,
    {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let v = compute()?;
        self.insert(key, &v)?;
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip_and_key_separation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        assert_ne!(Cache::key(&["ab", "c"]), Cache::key(&["a", "bc"]));
        let k = Cache::key(&["x"]);
        assert!(cache.get(&k).is_none());
        let v = cache
            .get_or_insert_with(&k, || Ok(json!({"a": 1})))
            .unwrap();
        let again = cache
            .get_or_insert_with(&k, || panic!("should hit the cache"))
            .unwrap();
        assert_eq!(v, again);
    }
}
