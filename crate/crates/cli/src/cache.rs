//! Content-addressed result cache: one JSON file per computed result, keyed
//! by a hash of the command, its arguments, the limits, the seed and the code
//! version. Files are plain JSON and safe to delete at any time.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Cache {
        Cache { dir }
    }

    /// `$LIETORI_CACHE_DIR` is handled by the argument parser; otherwise the
    /// XDG cache directory, or `~/.cache`.
    pub fn default_dir() -> Option<PathBuf> {
        if let Some(x) = std::env::var_os("XDG_CACHE_HOME").filter(|v| !v.is_empty()) {
            return Some(Path::new(&x).join("lietori"));
        }
        std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache").join("lietori"))
    }

    pub fn key(parts: &[&str]) -> String {
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION").as_bytes());
        for p in parts {
            h.update([0u8]);
            h.update(p.as_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, kind: &str, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{kind}-{}.json", &key[..24])))
    }

    /// The cached value for `key`, or the result of `f`, which is stored.
    /// Unreadable or corrupt entries are recomputed; failures to write are
    /// ignored, since the cache is an optimisation only.
    pub fn get_or_compute<E>(
        &self,
        kind: &str,
        parts: &[&str],
        f: impl FnOnce() -> Result<Value, E>,
    ) -> Result<Value, E> {
        let key = Cache::key(parts);
        let path = self.path(kind, &key);
        if let Some(p) = &path {
            if let Ok(text) = fs::read_to_string(p) {
                if let Ok(v) = serde_json::from_str::<Value>(&text) {
                    if v.get("key").and_then(Value::as_str) == Some(key.as_str()) {
                        if let Some(r) = v.get("result") {
                            return Ok(r.clone());
                        }
                    }
                }
            }
        }
        let result = f()?;
        if let Some(p) = &path {
            let entry = serde_json::json!({ "key": key, "parts": parts, "result": result });
            if let Some(d) = p.parent() {
                let _ = fs::create_dir_all(d);
            }
            if let Ok(text) = serde_json::to_string_pretty(&entry) {
                // write then rename, so a concurrent reader never sees half a file
                let tmp = p.with_extension("tmp");
                if fs::write(&tmp, text).is_ok() {
                    let _ = fs::rename(&tmp, p);
                }
            }
        }
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(Some(dir.path().to_path_buf()));
        let v: Result<Value, ()> = c.get_or_compute("t", &["a"], || Ok(serde_json::json!({"x": 1})));
        assert_eq!(v.unwrap()["x"], 1);
        // second call must not recompute
        let v: Result<Value, ()> = c.get_or_compute("t", &["a"], || Err(()));
        assert_eq!(v.unwrap()["x"], 1);
        // a different key does
        let v: Result<Value, ()> = c.get_or_compute("t", &["b"], || Err(()));
        assert!(v.is_err());
    }

    #[test]
    fn corrupt_entries_are_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(Some(dir.path().to_path_buf()));
        let key = Cache::key(&["a"]);
        fs::write(dir.path().join(format!("t-{}.json", &key[..24])), "{not json").unwrap();
        let v: Result<Value, ()> = c.get_or_compute("t", &["a"], || Ok(serde_json::json!(7)));
        assert_eq!(v.unwrap(), 7);
    }

    #[test]
    fn keys_separate_parts() {
        assert_ne!(Cache::key(&["ab", "c"]), Cache::key(&["a", "bc"]));
    }
}
