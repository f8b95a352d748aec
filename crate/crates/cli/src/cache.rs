//! Persistent JSON cache of census counts.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use gapsets::{CensusQuery, DepthFilter, MultiplicityFilter};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cache {0} is locked by another writer (remove the .lock file if stale)")]
    Locked(PathBuf),
    #[error("cache {path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub g: u32,
    pub depth: DepthFilter,
    pub mult: MultiplicityFilter,
    pub count: u64,
    /// Seconds since the Unix epoch.
    pub computed_at: u64,
}

impl CacheEntry {
    pub fn query(&self) -> CensusQuery {
        CensusQuery {
            genus: self.g,
            depth: self.depth,
            multiplicity: self.mult,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    schema_version: u32,
    entries: Vec<CacheEntry>,
}

#[derive(Deserialize)]
struct VersionProbe {
    schema_version: Option<u32>,
}

/// Why an existing file was not loaded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Discarded {
    UnknownVersion(Option<u32>),
    Unreadable(String),
}

#[derive(Debug)]
pub struct CountCache {
    path: PathBuf,
    entries: BTreeMap<CensusQuery, CacheEntry>,
    dirty: bool,
    pub discarded: Option<Discarded>,
}

impl CountCache {
    /// Loads `path`, or starts empty when the file is absent, unparsable or
    /// has a schema version this build does not know.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self, CacheError> {
        let path = path.into();
        let mut cache = CountCache {
            path,
            entries: BTreeMap::new(),
            dirty: false,
            discarded: None,
        };
        let text = match fs::read_to_string(&cache.path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(source) => {
                return Err(CacheError::Io {
                    path: cache.path,
                    source,
                })
            }
        };
        match serde_json::from_str::<VersionProbe>(&text) {
            Ok(VersionProbe {
                schema_version: Some(SCHEMA_VERSION),
            }) => {}
            Ok(probe) => {
                cache.discarded = Some(Discarded::UnknownVersion(probe.schema_version));
                return Ok(cache);
            }
            Err(e) => {
                cache.discarded = Some(Discarded::Unreadable(e.to_string()));
                return Ok(cache);
            }
        }
        match serde_json::from_str::<CacheFile>(&text) {
            Ok(file) => {
                cache.entries = file.entries.into_iter().map(|e| (e.query(), e)).collect();
            }
            Err(e) => cache.discarded = Some(Discarded::Unreadable(e.to_string())),
        }
        Ok(cache)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, query: &CensusQuery) -> Option<u64> {
        self.entries.get(query).map(|e| e.count)
    }

    pub fn entries(&self) -> impl Iterator<Item = &CacheEntry> {
        self.entries.values()
    }

    pub fn insert(&mut self, query: &CensusQuery, count: u64) {
        let computed_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        let entry = CacheEntry {
            g: query.genus,
            depth: query.depth,
            mult: query.multiplicity,
            count,
            computed_at,
        };
        self.entries.insert(*query, entry);
        self.dirty = true;
    }

    /// Writes the cache if it changed. Fails fast if another process holds
    /// the lock file.
    pub fn save(&mut self) -> Result<(), CacheError> {
        if !self.dirty {
            return Ok(());
        }
        let _lock = LockFile::acquire(&self.path)?;
        let file = CacheFile {
            schema_version: SCHEMA_VERSION,
            entries: self.entries.values().copied().collect(),
        };
        let json = serde_json::to_string_pretty(&file).map_err(|source| CacheError::Json {
            path: self.path.clone(),
            source,
        })?;
        let tmp = sibling(&self.path, "tmp");
        let io = |source| CacheError::Io {
            path: self.path.clone(),
            source,
        };
        fs::write(&tmp, json + "\n").map_err(io)?;
        fs::rename(&tmp, &self.path).map_err(io)?;
        self.dirty = false;
        Ok(())
    }

    /// Recomputes up to `samples` random cached queries with genus at most
    /// `gmax` and returns the ones whose cached count is wrong, as
    /// `(entry, fresh count)`.
    pub fn self_check<E>(
        &self,
        samples: usize,
        gmax: u32,
        rng: &mut impl Rng,
        mut recompute: impl FnMut(&CensusQuery) -> Result<u64, E>,
    ) -> Result<SelfCheck, E> {
        let pool: Vec<&CacheEntry> = self.entries.values().filter(|e| e.g <= gmax).collect();
        let n = if pool.is_empty() { 0 } else { samples };
        let picked: Vec<CacheEntry> = (0..n)
            .filter_map(|_| pool.choose(rng).map(|e| **e))
            .collect();
        let mut bad = Vec::new();
        for entry in &picked {
            let fresh = recompute(&entry.query())?;
            if fresh != entry.count {
                bad.push((*entry, fresh));
            }
        }
        Ok(SelfCheck {
            checked: picked.len(),
            mismatches: bad,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfCheck {
    pub checked: usize,
    pub mismatches: Vec<(CacheEntry, u64)>,
}

fn sibling(path: &Path, ext: &str) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".");
    name.push(ext);
    path.with_file_name(name)
}

struct LockFile(PathBuf);

impl LockFile {
    fn acquire(cache: &Path) -> Result<Self, CacheError> {
        let path = sibling(cache, "lock");
        match OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(mut f) => {
                let _ = writeln!(f, "{}", std::process::id());
                Ok(LockFile(path))
            }
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                Err(CacheError::Locked(cache.to_path_buf()))
            }
            Err(source) => Err(CacheError::Io { path, source }),
        }
    }
}

impl Drop for LockFile {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}
