//! One self-describing file per (q, n): a header line, then JSON carrying the
//! exact cyclotomic data as (order, exponent, coefficient) triples.

use crate::chartab::{ExactCharacter, ExactValue, IrrepInfo, LevelSnapshot, LevelStore};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "glq-level-cache";

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    format_version: u32,
    q: u32,
    n: usize,
    modulus: Vec<u32>,
    labels: Vec<String>,
    ell: u64,
    characters: Vec<CachedCharacter>,
    info: Vec<IrrepInfo>,
}

#[derive(Serialize, Deserialize)]
struct CachedCharacter {
    dim: u64,
    /// Per class: the order of the root of unity, then its triples.
    values: Vec<(u32, Vec<(u32, u32, i64)>)>,
}

impl CacheEntry {
    fn from_snapshot(s: &LevelSnapshot) -> Self {
        CacheEntry {
            format_version: FORMAT_VERSION,
            q: s.q,
            n: s.n,
            modulus: s.modulus.clone(),
            labels: s.labels.clone(),
            ell: s.ell,
            characters: s
                .characters
                .iter()
                .map(|c| CachedCharacter {
                    dim: c.dim,
                    values: c.values.iter().map(|v| (v.order, v.triples())).collect(),
                })
                .collect(),
            info: s.info.clone(),
        }
    }

    fn into_snapshot(self) -> Result<LevelSnapshot> {
        let mut characters = Vec::with_capacity(self.characters.len());
        for c in self.characters {
            let mut values = Vec::with_capacity(c.values.len());
            for (order, t) in c.values {
                if t.iter().any(|&(o, k, _)| o != order || k >= order) {
                    return Err(Error::Cache("malformed cyclotomic triple".into()));
                }
                values.push(ExactValue::from_triples(order, &t));
            }
            characters.push(ExactCharacter { dim: c.dim, values });
        }
        Ok(LevelSnapshot {
            q: self.q,
            n: self.n,
            modulus: self.modulus,
            labels: self.labels,
            ell: self.ell,
            characters,
            info: self.info,
        })
    }
}

/// Level cache in a directory; unreadable or outdated files are rebuilt.
#[derive(Clone, Debug)]
pub struct FileStore {
    dir: PathBuf,
}

impl FileStore {
    pub fn new(dir: impl Into<PathBuf>) -> Result<FileStore> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
        Ok(FileStore { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, q: u32, n: usize) -> PathBuf {
        self.dir.join(format!("gl{n}_f{q}.glq"))
    }

    /// Parses a cache file; None on a version or identity mismatch.
    pub fn read(path: &Path, q: u32, n: usize, modulus: &[u32]) -> Result<Option<LevelSnapshot>> {
        let text = fs::read_to_string(path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        let (header, body) = text.split_once('\n').ok_or_else(|| Error::Cache("missing header".into()))?;
        let mut words = header.split_whitespace();
        if words.next() != Some(MAGIC) {
            return Err(Error::Cache(format!("{}: not a level cache", path.display())));
        }
        if words.next() != Some(&format!("v{FORMAT_VERSION}")) {
            return Ok(None);
        }
        let entry: CacheEntry = serde_json::from_str(body).map_err(|e| Error::Cache(e.to_string()))?;
        if entry.format_version != FORMAT_VERSION || entry.q != q || entry.n != n || entry.modulus != modulus {
            return Ok(None);
        }
        entry.into_snapshot().map(Some)
    }
}

impl LevelStore for FileStore {
    fn load(&self, q: u32, n: usize, modulus: &[u32]) -> Option<LevelSnapshot> {
        let path = self.path(q, n);
        if !path.exists() {
            return None;
        }
        FileStore::read(&path, q, n, modulus).ok().flatten()
    }

    fn save(&self, snapshot: &LevelSnapshot) -> Result<()> {
        let path = self.path(snapshot.q, snapshot.n);
        let tmp = path.with_extension("tmp");
        let body = serde_json::to_string(&CacheEntry::from_snapshot(snapshot)).map_err(|e| Error::Cache(e.to_string()))?;
        let write = || -> std::io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            writeln!(f, "{MAGIC} v{FORMAT_VERSION} q={} n={}", snapshot.q, snapshot.n)?;
            f.write_all(body.as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, &path)
        };
        write().map_err(|e| Error::Cache(format!("{}: {e}", path.display())))
    }
}
