//! On-disk cache of computed tables.
//!
//! Each table lives in its own JSON file holding a format version, the key it
//! was stored under, a SHA-256 checksum of the table's canonical JSON and the
//! table itself. Entries that fail any of these checks are recomputed and
//! overwritten. Files are written to a temporary name and renamed into place.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use asmrel::coeffs::CoefficientTable;
use asmrel::relations::{Computed, TableSource};
use asmrel::{CountTable, Family, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const FORMAT_VERSION: u32 = 1;

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "ASMREL_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry {
    format_version: u32,
    key: String,
    checksum: String,
    table: CountTable,
}

/// What a cache lookup found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryState {
    Valid,
    Missing,
    Corrupt,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    /// Entries present on disk but rejected.
    pub corrupt: u64,
}

/// Checksum of a table: SHA-256 of its compact JSON, hex encoded.
pub fn table_checksum(table: &CountTable) -> String {
    let json = serde_json::to_vec(table).expect("count tables serialize");
    hex::encode(Sha256::digest(&json))
}

pub fn refined_key(n: usize, family: Family) -> String {
    format!("refined-{}-n{n}", family.slug())
}

pub fn coefficient_key(n: usize, c: usize, d: usize) -> String {
    format!("coeff-c{c}-d{d}-n{n}")
}

/// The default directory: `$ASMREL_CACHE_DIR`, else `$XDG_CACHE_HOME/asmrel`,
/// else `$HOME/.cache/asmrel`.
pub fn default_dir() -> Option<PathBuf> {
    let var = |k: &str| {
        std::env::var_os(k)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    };
    var(CACHE_DIR_ENV)
        .or_else(|| var("XDG_CACHE_HOME").map(|p| p.join("asmrel")))
        .or_else(|| var("HOME").map(|p| p.join(".cache").join("asmrel")))
}

/// A [`TableSource`] that consults a directory before computing. With no
/// directory it computes every table.
pub struct DiskCache {
    dir: Option<PathBuf>,
    memo: Mutex<HashMap<String, Arc<CountTable>>>,
    hits: AtomicU64,
    misses: AtomicU64,
    corrupt: AtomicU64,
}

impl DiskCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        DiskCache {
            dir,
            memo: Mutex::new(HashMap::new()),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
            corrupt: AtomicU64::new(0),
        }
    }

    pub fn disabled() -> Self {
        Self::new(None)
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            corrupt: self.corrupt.load(Ordering::Relaxed),
        }
    }

    fn path(dir: &Path, key: &str) -> PathBuf {
        dir.join(format!("{key}.json"))
    }

    /// Loads and validates one entry.
    pub fn load(&self, key: &str) -> (EntryState, Option<CountTable>) {
        let Some(dir) = &self.dir else {
            return (EntryState::Missing, None);
        };
        let Ok(bytes) = fs::read(Self::path(dir, key)) else {
            return (EntryState::Missing, None);
        };
        match serde_json::from_slice::<Entry>(&bytes) {
            Ok(e)
                if e.format_version == FORMAT_VERSION
                    && e.key == key
                    && e.checksum == table_checksum(&e.table) =>
            {
                (EntryState::Valid, Some(e.table))
            }
            _ => (EntryState::Corrupt, None),
        }
    }

    fn store(&self, key: &str, table: &CountTable) -> std::io::Result<()> {
        let Some(dir) = &self.dir else {
            return Ok(());
        };
        fs::create_dir_all(dir)?;
        let entry = Entry {
            format_version: FORMAT_VERSION,
            key: key.to_string(),
            checksum: table_checksum(table),
            table: table.clone(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(Self::path(dir, key)).map_err(|e| e.error)?;
        Ok(())
    }

    fn get_or_compute(
        &self,
        key: String,
        compute: impl FnOnce() -> Result<CountTable>,
    ) -> Result<Arc<CountTable>> {
        if let Some(t) = self.memo.lock().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let (state, loaded) = self.load(&key);
        let table = match loaded {
            Some(t) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                t
            }
            None => {
                if state == EntryState::Corrupt {
                    self.corrupt.fetch_add(1, Ordering::Relaxed);
                    eprintln!("warning: cache entry {key} failed validation; recomputing");
                }
                self.misses.fetch_add(1, Ordering::Relaxed);
                let t = compute()?;
                if let Err(e) = self.store(&key, &t) {
                    eprintln!("warning: could not write cache entry {key}: {e}");
                }
                t
            }
        };
        let t = Arc::new(table);
        Ok(self.memo.lock().unwrap().entry(key).or_insert(t).clone())
    }

    /// Cache entries on disk, sorted by key, with their state.
    pub fn list(&self) -> std::io::Result<Vec<(String, EntryState)>> {
        let Some(dir) = &self.dir else {
            return Ok(Vec::new());
        };
        let rd = match fs::read_dir(dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e),
        };
        let mut keys = Vec::new();
        for ent in rd {
            let name = ent?.file_name().to_string_lossy().into_owned();
            if let Some(key) = name.strip_suffix(".json") {
                keys.push(key.to_string());
            }
        }
        keys.sort();
        Ok(keys
            .into_iter()
            .map(|k| {
                let state = self.load(&k).0;
                (k, state)
            })
            .collect())
    }

    /// Removes every entry; returns how many files were deleted.
    pub fn clear(&self) -> std::io::Result<usize> {
        let entries = self.list()?;
        let dir = self
            .dir
            .as_ref()
            .expect("list is empty without a directory");
        for (k, _) in &entries {
            fs::remove_file(Self::path(dir, k))?;
        }
        self.memo.lock().unwrap().clear();
        Ok(entries.len())
    }
}

impl TableSource for DiskCache {
    fn refined(&self, n: usize, family: Family) -> Result<Arc<CountTable>> {
        self.get_or_compute(refined_key(n, family), || {
            Computed.refined(n, family).map(|t| (*t).clone())
        })
    }

    fn coefficients(&self, n: usize, c: usize, d: usize) -> Result<Arc<CoefficientTable>> {
        let t = self.get_or_compute(coefficient_key(n, c, d), || {
            Computed.coefficients(n, c, d).map(|t| t.to_count_table())
        })?;
        CoefficientTable::from_count_table(&t, c, d).map(Arc::new)
    }
}
