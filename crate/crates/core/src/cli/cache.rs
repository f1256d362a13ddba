//! Append-only result cache.
//!
//! One JSON record per line in `records.jsonl` under the cache directory,
//! keyed by operation and `(q, l, m, t, r, s)`. Records written by another
//! version of the crate, and lines that do not parse, are ignored.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub const CACHE_ENV: &str = "DETCODE_CACHE";
const FILE_NAME: &str = "records.jsonl";

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub op: String,
    pub q: u64,
    pub l: usize,
    pub m: usize,
    pub t: usize,
    pub r: usize,
    pub s: usize,
}

impl CacheKey {
    pub fn new(op: &str, q: u64, l: usize, m: usize, t: usize, r: usize, s: usize) -> Self {
        CacheKey { op: op.to_string(), q, l, m, t, r, s }
    }
}

#[derive(Serialize, Deserialize)]
struct Record {
    version: String,
    #[serde(flatten)]
    key: CacheKey,
    value: String,
}

pub struct Cache {
    path: PathBuf,
    entries: HashMap<CacheKey, String>,
}

impl Cache {
    /// Opens the cache named by `DETCODE_CACHE`, if set.
    pub fn from_env() -> io::Result<Option<Cache>> {
        match std::env::var_os(CACHE_ENV) {
            Some(dir) if !dir.is_empty() => Cache::open(Path::new(&dir)).map(Some),
            _ => Ok(None),
        }
    }

    pub fn open(dir: &Path) -> io::Result<Cache> {
        fs::create_dir_all(dir)?;
        let path = dir.join(FILE_NAME);
        let mut entries = HashMap::new();
        if path.exists() {
            for line in BufReader::new(File::open(&path)?).lines() {
                let line = line?;
                if let Ok(rec) = serde_json::from_str::<Record>(&line) {
                    if rec.version == crate::cli::VERSION {
                        entries.insert(rec.key, rec.value);
                    }
                }
            }
        }
        Ok(Cache { path, entries })
    }

    pub fn get(&self, key: &CacheKey) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Appends records for keys not already present.
    pub fn put_all(&mut self, records: Vec<(CacheKey, String)>) -> io::Result<()> {
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let mut buf = String::new();
        for (key, value) in records {
            if self.entries.contains_key(&key) {
                continue;
            }
            let rec = Record { version: crate::cli::VERSION.to_string(), key, value };
            buf.push_str(&serde_json::to_string(&rec).map_err(io::Error::other)?);
            buf.push('\n');
            self.entries.insert(rec.key, rec.value);
        }
        file.write_all(buf.as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_stale_versions() {
        let dir = tempfile::tempdir().unwrap();
        let key = CacheKey::new("w_hat", 2, 4, 5, 1, 1, 0);
        {
            let mut c = Cache::open(dir.path()).unwrap();
            assert!(c.get(&key).is_none());
            c.put_all(vec![(key.clone(), "128".into())]).unwrap();
        }
        let mut f = OpenOptions::new().append(true).open(dir.path().join(FILE_NAME)).unwrap();
        writeln!(f, "{{\"version\":\"0.0.0-old\",\"op\":\"w_hat\",\"q\":2,\"l\":4,\"m\":5,\"t\":1,\"r\":2,\"s\":0,\"value\":\"1\"}}").unwrap();
        writeln!(f, "not json").unwrap();
        let c = Cache::open(dir.path()).unwrap();
        assert_eq!(c.get(&key), Some("128"));
        assert_eq!(c.len(), 1);
    }
}
