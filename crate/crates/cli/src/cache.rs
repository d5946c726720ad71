//! On-disk cache of B° triangle rows.
//!
//! One JSON file per mode, rewritten whenever a request needs more rows than
//! it holds. Access is serialized with an advisory lock on the file itself.

use std::fs::{self, File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use beststop::closed_form::{BTriangle, Mode};

pub const SCHEMA_VERSION: u32 = 1;
pub const ENV_VAR: &str = "BESTSTOP_CACHE";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleEntry {
    pub schema: u32,
    pub mode: Mode,
    pub rows: usize,
    /// Row `j` holds `B°_{j+1}(k)` for `k = 1..=j+1`, as decimal strings.
    pub interior: Vec<Vec<String>>,
}

impl TriangleEntry {
    pub fn from_triangle(t: &BTriangle) -> Self {
        TriangleEntry {
            schema: SCHEMA_VERSION,
            mode: t.mode(),
            rows: t.max_n(),
            interior: t
                .rows()
                .iter()
                .map(|r| r.interior[1..].iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }

    /// Parses and checks an entry; any problem is reported as a string so the
    /// caller can rebuild.
    pub fn parse(text: &str) -> Result<Self, String> {
        let e: TriangleEntry = serde_json::from_str(text).map_err(|e| e.to_string())?;
        if e.schema != SCHEMA_VERSION {
            return Err(format!("schema {} (expected {SCHEMA_VERSION})", e.schema));
        }
        if e.rows != e.interior.len() {
            return Err(format!("header says {} rows, found {}", e.rows, e.interior.len()));
        }
        Ok(e)
    }

    pub fn to_triangle(&self) -> Result<BTriangle, String> {
        let rows = self
            .interior
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.parse::<BigUint>().map_err(|e| format!("entry {x:?}: {e}")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        BTriangle::restore(self.mode, rows).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone)]
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

    pub fn triangle_path(&self, mode: Mode) -> PathBuf {
        self.dir.join(format!("triangle-{mode}.json"))
    }

    /// Rows `1..=rows` of the optimal triangle, from the cache when it holds
    /// enough rows. Unreadable entries are rebuilt; `warn` receives a note.
    pub fn triangle(
        &self,
        mode: Mode,
        rows: usize,
        warn: &mut dyn FnMut(String),
    ) -> std::io::Result<BTriangle> {
        fs::create_dir_all(&self.dir)?;
        let path = self.triangle_path(mode);
        let mut file = OpenOptions::new()
            .read(true)
            .write(true)
            .create(true)
            .truncate(false)
            .open(&path)?;
        file.lock()?;
        let result = self.triangle_locked(&mut file, &path, mode, rows, warn);
        file.unlock()?;
        result
    }

    fn triangle_locked(
        &self,
        file: &mut File,
        path: &Path,
        mode: Mode,
        rows: usize,
        warn: &mut dyn FnMut(String),
    ) -> std::io::Result<BTriangle> {
        let mut text = String::new();
        let read = file.read_to_string(&mut text);
        if !text.trim().is_empty() || read.is_err() {
            let cached = read
                .map_err(|e| e.to_string())
                .and_then(|_| TriangleEntry::parse(&text))
                .and_then(|e| {
                    if e.mode != mode {
                        return Err(format!("holds the {} triangle", e.mode));
                    }
                    e.to_triangle()
                });
            match cached {
                Ok(t) if t.max_n() >= rows => return Ok(t.truncated(rows)),
                Ok(_) => {}
                Err(e) => warn(format!(
                    "warning: cache entry {} is corrupt ({e}); rebuilding",
                    path.display()
                )),
            }
        }
        let t = BTriangle::compute(mode, rows);
        let json = serde_json::to_string(&TriangleEntry::from_triangle(&t))?;
        file.set_len(0)?;
        file.seek(SeekFrom::Start(0))?;
        file.write_all(json.as_bytes())?;
        file.sync_data()?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_round_trip() {
        let t = BTriangle::compute(Mode::Strike, 12);
        let e = TriangleEntry::from_triangle(&t);
        let text = serde_json::to_string(&e).unwrap();
        let back = TriangleEntry::parse(&text).unwrap();
        assert_eq!(back, e);
        assert_eq!(back.to_triangle().unwrap().rows(), t.rows());
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(TriangleEntry::parse("{").is_err());
        let mut e = TriangleEntry::from_triangle(&BTriangle::compute(Mode::Trigger, 4));
        e.schema = 0;
        assert!(TriangleEntry::parse(&serde_json::to_string(&e).unwrap()).is_err());
        e.schema = SCHEMA_VERSION;
        e.rows = 5;
        assert!(TriangleEntry::parse(&serde_json::to_string(&e).unwrap()).is_err());
        e.rows = 4;
        e.interior[2][0] = "x".into();
        assert!(e.to_triangle().is_err());
    }

    #[test]
    fn grows_and_recovers() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let mut notes = Vec::new();
        let a = cache.triangle(Mode::Strike, 10, &mut |m| notes.push(m)).unwrap();
        assert_eq!(a.max_n(), 10);
        let b = cache.triangle(Mode::Strike, 6, &mut |m| notes.push(m)).unwrap();
        assert_eq!(b.rows(), &a.rows()[..6]);
        let c = cache.triangle(Mode::Strike, 16, &mut |m| notes.push(m)).unwrap();
        assert_eq!(c.interior(16, 13).unwrap(), &BigUint::from(300u32));
        assert!(notes.is_empty());

        fs::write(cache.triangle_path(Mode::Strike), "not json").unwrap();
        let d = cache.triangle(Mode::Strike, 8, &mut |m| notes.push(m)).unwrap();
        assert_eq!(d.rows(), &a.rows()[..8]);
        assert_eq!(notes.len(), 1);
        let stored = fs::read_to_string(cache.triangle_path(Mode::Strike)).unwrap();
        assert_eq!(TriangleEntry::parse(&stored).unwrap().rows, 8);
    }
}
