//! Append-only CSV cache of completed counts, one file per `(m, condition)`.
//!
//! A record whose key `(m, cycle_type, p, condition)` is already present is
//! compared against the stored row instead of being appended again.

use std::fs::{self, File, OpenOptions};
use std::io;
use std::path::{Path, PathBuf};

use equicount_core::{CountRecord, CycleType, Engine, GeneralityCondition};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{path}: bad row for {cycle_type} at p = {p}: {reason}")]
    BadRow {
        path: PathBuf,
        cycle_type: String,
        p: u64,
        reason: String,
    },
    #[error(
        "cache conflict for m = {m}, {cycle_type}, p = {p}, {condition}: stored quotient {stored}, new {new}"
    )]
    Conflict {
        m: u32,
        cycle_type: String,
        p: u64,
        condition: String,
        stored: u128,
        new: u128,
    },
}

/// One cache row. Integers are written in decimal; `raw_fixed_count` can
/// exceed 64 bits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub m: u32,
    pub cycle_type: String,
    pub p: u64,
    pub condition: String,
    #[serde(with = "decimal")]
    pub raw_fixed_count: u128,
    #[serde(with = "decimal")]
    pub quotient_count: u128,
    pub engine: String,
    pub wall_seconds: f64,
}

// The csv crate has no native u128 support.
mod decimal {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u128, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse().map_err(D::Error::custom)
    }
}

impl CacheEntry {
    pub fn from_record(r: &CountRecord, wall_seconds: f64) -> Self {
        CacheEntry {
            m: r.m,
            cycle_type: r.cycle_type.dotted(),
            p: r.p,
            condition: r.condition.name().to_string(),
            raw_fixed_count: r.raw_fixed_count,
            quotient_count: r.quotient_count,
            engine: r.engine.name().to_string(),
            wall_seconds,
        }
    }

    pub fn to_record(&self) -> Result<CountRecord, String> {
        let cycle_type = CycleType::parse_for(&self.cycle_type, self.m).map_err(|e| e.to_string())?;
        let condition = GeneralityCondition::from_name(&self.condition, self.m).map_err(|e| e.to_string())?;
        let engine: Engine = self.engine.parse().map_err(|e: equicount_core::CountError| e.to_string())?;
        Ok(CountRecord {
            m: self.m,
            cycle_type,
            p: self.p,
            condition,
            raw_fixed_count: self.raw_fixed_count,
            quotient_count: self.quotient_count,
            engine,
        })
    }

    fn key(&self) -> (u32, &str, u64, &str) {
        (self.m, &self.cycle_type, self.p, &self.condition)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stored {
    Appended,
    /// Same key already present with the same counts.
    Verified,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, m: u32, condition: &str) -> PathBuf {
        self.dir.join(format!("m{m}_{condition}.csv"))
    }

    /// All rows of one file; a missing file is an empty cache.
    pub fn load(&self, m: u32, condition: &str) -> Result<Vec<CacheEntry>, CacheError> {
        let path = self.path_for(m, condition);
        let file = match File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        csv::Reader::from_reader(file)
            .deserialize()
            .collect::<Result<Vec<CacheEntry>, _>>()
            .map_err(|source| CacheError::Csv { path, source })
    }

    /// Validated records of one file.
    pub fn records(&self, m: u32, condition: &str) -> Result<Vec<CountRecord>, CacheError> {
        let path = self.path_for(m, condition);
        self.load(m, condition)?
            .iter()
            .map(|e| {
                e.to_record().map_err(|reason| CacheError::BadRow {
                    path: path.clone(),
                    cycle_type: e.cycle_type.clone(),
                    p: e.p,
                    reason,
                })
            })
            .collect()
    }

    pub fn lookup(&self, m: u32, cycle_type: &CycleType, p: u64, condition: &str) -> Result<Option<CacheEntry>, CacheError> {
        let dotted = cycle_type.dotted();
        Ok(self
            .load(m, condition)?
            .into_iter()
            .find(|e| e.key() == (m, dotted.as_str(), p, condition)))
    }

    pub fn store(&self, entry: &CacheEntry) -> Result<Stored, CacheError> {
        let existing = self.load(entry.m, &entry.condition)?;
        if let Some(old) = existing.iter().find(|e| e.key() == entry.key()) {
            if old.quotient_count != entry.quotient_count || old.raw_fixed_count != entry.raw_fixed_count {
                return Err(CacheError::Conflict {
                    m: entry.m,
                    cycle_type: entry.cycle_type.clone(),
                    p: entry.p,
                    condition: entry.condition.clone(),
                    stored: old.quotient_count,
                    new: entry.quotient_count,
                });
            }
            return Ok(Stored::Verified);
        }
        let path = self.path_for(entry.m, &entry.condition);
        let io_err = |source| CacheError::Io { path: path.clone(), source };
        fs::create_dir_all(&self.dir).map_err(io_err)?;
        let file = OpenOptions::new().create(true).append(true).open(&path).map_err(io_err)?;
        let fresh = file.metadata().map_err(io_err)?.len() == 0;
        let mut w = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
        w.serialize(entry)
            .and_then(|()| w.flush().map_err(csv::Error::from))
            .map_err(|source| CacheError::Csv { path: path.clone(), source })?;
        Ok(Stored::Appended)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scratch(name: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("equicount-cache-{name}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        dir
    }

    fn record(class: &str, p: u64, quotient: u128) -> CountRecord {
        CountRecord {
            m: 7,
            cycle_type: class.parse().unwrap(),
            p,
            condition: GeneralityCondition::glp(7).unwrap(),
            raw_fixed_count: quotient * equicount_core::pgl_order(p),
            quotient_count: quotient,
            engine: Engine::Twisted,
        }
    }

    #[test]
    fn round_trip_and_verification() {
        let dir = scratch("rt");
        let cache = Cache::new(&dir);
        let a = record("2.2.1.1.1", 3, 24);
        let b = record("7", 3, 847);
        assert_eq!(cache.store(&CacheEntry::from_record(&a, 1.5)).unwrap(), Stored::Appended);
        assert_eq!(cache.store(&CacheEntry::from_record(&b, 0.25)).unwrap(), Stored::Appended);
        assert_eq!(cache.store(&CacheEntry::from_record(&a, 9.0)).unwrap(), Stored::Verified);
        assert_eq!(cache.records(7, "glp").unwrap(), [a.clone(), b]);
        let text = fs::read_to_string(cache.path_for(7, "glp")).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.starts_with("m,cycle_type,p,condition,raw_fixed_count,quotient_count,engine,wall_seconds\n"));
        assert!(matches!(
            cache.store(&CacheEntry::from_record(&record("2.2.1.1.1", 3, 25), 1.0)),
            Err(CacheError::Conflict { stored: 24, new: 25, .. })
        ));
        fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn wide_counts_survive() {
        let dir = scratch("wide");
        let cache = Cache::new(&dir);
        let mut r = record("1x7", 23, 1);
        r.raw_fixed_count = u128::from(u64::MAX) * 1000;
        cache.store(&CacheEntry::from_record(&r, 0.0)).unwrap();
        assert_eq!(cache.records(7, "glp").unwrap(), [r]);
        fs::remove_dir_all(dir).unwrap();
    }
}
