//! Append-only JSON-lines store of finished counts.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, ErrorKind, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use slopecount_core::IdealSpec;

use crate::{CountReport, Error};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub subcommand: String,
    pub n: usize,
    pub q: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<IdealSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wheel: Option<String>,
    pub version: String,
}

impl CacheKey {
    pub fn new(subcommand: &str, n: usize, q: u8) -> Self {
        CacheKey {
            subcommand: subcommand.into(),
            n,
            q,
            ideal: None,
            wheel: None,
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: CacheKey,
    report: CountReport,
}

#[derive(Clone, Debug)]
pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Cache { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Latest report stored under `key`. Lines that do not parse are skipped.
    pub fn lookup(&self, key: &CacheKey) -> Result<Option<CountReport>, Error> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let mut found = None;
        for line in BufReader::new(file).lines() {
            if let Ok(entry) = serde_json::from_str::<Entry>(&line?) {
                if entry.key == *key {
                    found = Some(entry.report);
                }
            }
        }
        Ok(found)
    }

    pub fn store(&self, key: &CacheKey, report: &CountReport) -> Result<(), Error> {
        let mut line = serde_json::to_string(&Entry {
            key: key.clone(),
            report: report.clone(),
        })?;
        line.push('\n');
        OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?
            .write_all(line.as_bytes())?;
        Ok(())
    }

    /// Cached report for `key`, or the result of `compute`, which is stored.
    pub fn get_or_insert_with<F>(&self, key: &CacheKey, compute: F) -> Result<CountReport, Error>
    where
        F: FnOnce() -> Result<CountReport, Error>,
    {
        if let Some(hit) = self.lookup(key)? {
            return Ok(hit);
        }
        let report = compute()?;
        self.store(key, &report)?;
        Ok(report)
    }
}
