//! A single-file JSON cache of [`Enumerated`] results, keyed by group,
//! version and `p_max`. Writes go through a temporary file and a rename.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::verify::Enumerated;
use crate::error::{Error, Result};

#[derive(Debug, Default, Serialize, Deserialize)]
struct CacheFile {
    entries: BTreeMap<String, Enumerated>,
}

pub struct Cache {
    path: PathBuf,
    file: CacheFile,
}

fn key(group: &str, version: &str, p_max: u32) -> String {
    format!("{group}|{version}|{p_max}")
}

impl Cache {
    /// Opens the cache, starting empty when the file is missing or unreadable.
    pub fn open(path: &Path) -> Cache {
        let file = fs::read_to_string(path)
            .ok()
            .and_then(|s| match serde_json::from_str(&s) {
                Ok(f) => Some(f),
                Err(e) => {
                    eprintln!("warning: ignoring unreadable cache {}: {e}", path.display());
                    None
                }
            })
            .unwrap_or_default();
        Cache { path: path.to_path_buf(), file }
    }

    pub fn get(&self, group: &str, version: &str, p_max: u32) -> Option<&Enumerated> {
        self.file.entries.get(&key(group, version, p_max))
    }

    pub fn insert(&mut self, data: Enumerated) {
        self.file.entries.insert(key(&data.group, &data.version, data.p_max), data);
    }

    pub fn len(&self) -> usize {
        self.file.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.file.entries.is_empty()
    }

    pub fn save(&self) -> Result<()> {
        let json = serde_json::to_string_pretty(&self.file).expect("cache serializes");
        write_atomic(&self.path, json.as_bytes())
    }
}

/// Writes `bytes` to a temporary file next to `path`, then renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let io = |e: std::io::Error| Error::Parse(format!("cannot write {}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cli::verify::enumerate;
    use crate::groups::{build_group, GroupSpec};

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        let g = Arc::new(build_group(GroupSpec::A(2)).unwrap());
        let data = enumerate(&g, 2).unwrap();
        let mut cache = Cache::open(&path);
        assert!(cache.is_empty());
        cache.insert(data.clone());
        cache.save().unwrap();
        let reopened = Cache::open(&path);
        assert_eq!(reopened.len(), 1);
        assert_eq!(reopened.get("A2", &data.version, 2), Some(&data));
        assert_eq!(reopened.get("A2", &data.version, 3), None);
    }

    #[test]
    fn corrupt_file_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        fs::write(&path, "not json").unwrap();
        assert!(Cache::open(&path).is_empty());
    }
}
