//! Persistent result cache: one line-delimited JSON file per module under
//! the cache directory.
//!
//! Every entry is re-derivable, so the cache can be deleted at any time.
//! Files carry a schema integer and the writing code version inside each
//! key; entries from other schemas or versions are silently dropped on load
//! and the file is rebuilt on the next save. Writes go through a temp file
//! and an atomic rename.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    schema: u32,
    key: String,
    value: String,
    ts: u64,
}

/// One cache file (module-scoped), loaded eagerly.
#[derive(Debug)]
pub struct CacheFile {
    path: PathBuf,
    entries: BTreeMap<String, String>,
    dirty: bool,
}

impl CacheFile {
    pub fn open(dir: &Path, module: &str) -> Result<Self> {
        let path = dir.join(format!("{module}.jsonl"));
        let mut entries = BTreeMap::new();
        if path.exists() {
            let text = fs::read_to_string(&path)
                .with_context(|| format!("reading cache file {}", path.display()))?;
            for line in text.lines() {
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<Entry>(line) {
                    Ok(entry) if entry.schema == SCHEMA => {
                        entries.insert(entry.key, entry.value);
                    }
                    // Unknown schema or a damaged line: rebuild silently.
                    _ => {}
                }
            }
        }
        Ok(Self {
            path,
            entries,
            dirty: false,
        })
    }

    pub fn get(&self, key: &str) -> Option<&String> {
        self.entries.get(key)
    }

    pub fn put(&mut self, key: String, value: String) {
        if self.entries.get(&key) != Some(&value) {
            self.entries.insert(key, value);
            self.dirty = true;
        }
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Writes the whole file through a temp file and an atomic rename.
    pub fn flush(&mut self) -> Result<()> {
        if !self.dirty {
            return Ok(());
        }
        let ts = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let tmp = self.path.with_extension("jsonl.tmp");
        {
            let mut file =
                fs::File::create(&tmp).with_context(|| format!("creating {}", tmp.display()))?;
            for (key, value) in &self.entries {
                let line = serde_json::to_string(&Entry {
                    schema: SCHEMA,
                    key: key.clone(),
                    value: value.clone(),
                    ts,
                })?;
                writeln!(file, "{line}")?;
            }
            file.sync_all().ok();
        }
        fs::rename(&tmp, &self.path)
            .with_context(|| format!("renaming into {}", self.path.display()))?;
        self.dirty = false;
        Ok(())
    }
}

/// The module caches the CLI uses, or `None` when no cache directory is
/// configured.
#[derive(Debug)]
pub struct Cache {
    pub counting: CacheFile,
    pub oracle: CacheFile,
    pub partitions: CacheFile,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)
            .with_context(|| format!("creating cache directory {}", dir.display()))?;
        let cache = Self {
            counting: CacheFile::open(dir, "counting")?,
            oracle: CacheFile::open(dir, "oracle")?,
            partitions: CacheFile::open(dir, "partitions")?,
        };
        // Warm the spacing-count memo from previous runs.
        let mut preload = Vec::new();
        for (key, value) in &cache.partitions.entries {
            if let Some((t, n)) = parse_c_key(key) {
                if let Ok(v) = value.parse() {
                    preload.push((t, n, v));
                }
            }
        }
        pjl_core::partitions::memo_preload(preload);
        Ok(cache)
    }

    /// Saves the spacing-count memo and flushes everything.
    pub fn flush(&mut self) -> Result<()> {
        for (t, n, value) in pjl_core::partitions::memo_entries() {
            self.partitions.put(c_key(t, n), value.to_string());
        }
        self.counting.flush()?;
        self.oracle.flush()?;
        self.partitions.flush()
    }
}

pub fn c_key(t: usize, n: i64) -> String {
    format!("c;v{};t={t};n={n}", env!("CARGO_PKG_VERSION"))
}

fn parse_c_key(key: &str) -> Option<(usize, i64)> {
    let rest = key.strip_prefix(&format!("c;v{};", env!("CARGO_PKG_VERSION")))?;
    let (t_part, n_part) = rest.split_once(';')?;
    Some((
        t_part.strip_prefix("t=")?.parse().ok()?,
        n_part.strip_prefix("n=")?.parse().ok()?,
    ))
}

/// Key for a cached top-level operation.
pub fn op_key(op: &str, params: &[(&str, String)]) -> String {
    let mut key = format!("{op};v{}", env!("CARGO_PKG_VERSION"));
    for (name, value) in params {
        key.push_str(&format!(";{name}={value}"));
    }
    key
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_schema_filtering() {
        let dir = tempfile::tempdir().unwrap();
        let mut file = CacheFile::open(dir.path(), "counting").unwrap();
        file.put("k1".into(), "41".into());
        file.put("k1".into(), "42".into());
        file.flush().unwrap();

        let reloaded = CacheFile::open(dir.path(), "counting").unwrap();
        assert_eq!(reloaded.get("k1"), Some(&"42".to_string()));

        // A future-schema line is dropped, not propagated.
        let path = dir.path().join("counting.jsonl");
        let mut text = fs::read_to_string(&path).unwrap();
        text.push_str("{\"schema\":999,\"key\":\"other\",\"value\":\"1\",\"ts\":0}\n");
        text.push_str("not json at all\n");
        fs::write(&path, text).unwrap();
        let reloaded = CacheFile::open(dir.path(), "counting").unwrap();
        assert_eq!(reloaded.get("other"), None);
        assert_eq!(reloaded.len(), 1);
    }
}
