use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Mutex, RwLock};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::TranslateError;

/// One persisted translation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub backend: String,
    pub sha256: String,
    pub source: String,
    pub translation: String,
}

/// Append-only translation cache keyed by (backend name, sha256 of source).
///
/// Optionally backed by a JSON Lines file; new entries are appended to it as
/// they are inserted. Reads take a shared lock, writes are serialized.
#[derive(Debug, Default)]
pub struct TranslationCache {
    entries: RwLock<HashMap<(String, String), String>>,
    file: Option<Mutex<File>>,
    path: Option<PathBuf>,
}

pub fn source_hash(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

impl TranslationCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Open (creating if needed) a cache file and load its entries.
    pub fn open(path: &Path) -> Result<Self, TranslateError> {
        let io_err = |source| TranslateError::Io {
            path: path.to_path_buf(),
            source,
        };
        let mut entries = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path).map_err(io_err)?);
            for (idx, line) in reader.lines().enumerate() {
                let line = line.map_err(io_err)?;
                if line.trim().is_empty() {
                    continue;
                }
                let bad = |message: String| TranslateError::Cache {
                    path: path.to_path_buf(),
                    line: idx + 1,
                    message,
                };
                let entry: CacheEntry = serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?;
                if source_hash(&entry.source) != entry.sha256 {
                    return Err(bad("sha256 does not match source text".into()));
                }
                entries.insert((entry.backend, entry.sha256), entry.translation);
            }
        } else if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(parent).map_err(io_err)?;
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(io_err)?;
        Ok(Self {
            entries: RwLock::new(entries),
            file: Some(Mutex::new(file)),
            path: Some(path.to_path_buf()),
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, backend: &str, source: &str) -> Option<String> {
        let key = (backend.to_string(), source_hash(source));
        self.entries
            .read()
            .expect("cache lock poisoned")
            .get(&key)
            .cloned()
    }

    /// Record translations. Keys already present are left untouched.
    pub fn insert_all<'a, I>(&self, backend: &str, pairs: I) -> Result<(), TranslateError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut entries = self.entries.write().expect("cache lock poisoned");
        let mut lines = Vec::new();
        for (source, translation) in pairs {
            let sha256 = source_hash(source);
            let key = (backend.to_string(), sha256.clone());
            if entries.contains_key(&key) {
                continue;
            }
            entries.insert(key, translation.to_string());
            if self.file.is_some() {
                let entry = CacheEntry {
                    backend: backend.to_string(),
                    sha256,
                    source: source.to_string(),
                    translation: translation.to_string(),
                };
                let mut line = serde_json::to_string(&entry).expect("cache entry serializes");
                line.push('\n');
                lines.push(line);
            }
        }
        if let (Some(file), false) = (&self.file, lines.is_empty()) {
            let mut file = file.lock().expect("cache file lock poisoned");
            let path = self.path.clone().unwrap_or_default();
            file.write_all(lines.concat().as_bytes())
                .and_then(|_| file.flush())
                .map_err(|source| TranslateError::Io { path, source })?;
        }
        Ok(())
    }
}
