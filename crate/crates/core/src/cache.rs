//! Append-only result cache, one JSON record per line.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::game::{format_start, GameKind, GameSpec};
use crate::scoring::{Outcome, Winner};

/// Everything that determines a game's value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub base: String,
    pub start: String,
    pub kind: GameKind,
    pub bias: (u32, u32),
}

impl CacheKey {
    pub fn of(spec: &GameSpec) -> Self {
        CacheKey {
            base: spec.base.to_text(),
            start: format_start(&spec.start),
            kind: spec.kind,
            bias: (spec.bias.p, spec.bias.q),
        }
    }

    /// Hex SHA-256 prefix over the key fields.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        for part in [self.base.as_str(), self.start.as_str(), self.kind.name()] {
            h.update(part.as_bytes());
            h.update([0]);
        }
        h.update(self.bias.0.to_le_bytes());
        h.update(self.bias.1.to_le_bytes());
        h.finalize()[..12].iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub fingerprint: String,
    #[serde(flatten)]
    pub key: CacheKey,
    pub a: u32,
    pub b: u32,
    pub winner: Winner,
    pub seconds: f64,
}

impl CacheRecord {
    pub fn outcome(&self) -> Outcome {
        Outcome::new(self.a, self.b)
    }
}

#[derive(Debug)]
pub struct ResultCache {
    path: PathBuf,
    by_fingerprint: HashMap<String, Vec<CacheRecord>>,
}

impl ResultCache {
    /// Loads the cache at `path`; a missing file is an empty cache.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut by_fingerprint: HashMap<String, Vec<CacheRecord>> = HashMap::new();
        if path.exists() {
            for (i, line) in BufReader::new(File::open(&path)?).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: CacheRecord = serde_json::from_str(&line)
                    .map_err(|e| Error::Format(format!("{}:{}: {e}", path.display(), i + 1)))?;
                by_fingerprint.entry(rec.fingerprint.clone()).or_default().push(rec);
            }
        }
        Ok(ResultCache { path, by_fingerprint })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.by_fingerprint.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The first stored record whose full key matches `spec`.
    pub fn lookup(&self, spec: &GameSpec) -> Option<&CacheRecord> {
        let key = CacheKey::of(spec);
        self.by_fingerprint.get(&key.fingerprint())?.iter().find(|r| r.key == key)
    }

    pub fn append(&mut self, spec: &GameSpec, outcome: Outcome, winner: Winner, seconds: f64) -> Result<()> {
        let key = CacheKey::of(spec);
        let rec = CacheRecord { fingerprint: key.fingerprint(), key, a: outcome.a, b: outcome.b, winner, seconds };
        let line = serde_json::to_string(&rec).map_err(|e| Error::Internal(e.to_string()))?;
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        writeln!(f, "{line}")?;
        self.by_fingerprint.entry(rec.fingerprint.clone()).or_default().push(rec);
        Ok(())
    }
}
