use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hurwitz::HurwitzVector;
use crate::moves::{OrbitSummary, Partition};

/// Environment variable naming the orbit cache directory.
pub const CACHE_ENV: &str = "DIHEDRAL_COVERS_CACHE";

pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Record {
    n: u32,
    g_prime: u32,
    d: usize,
    mod_aut: bool,
    move_set_hash: String,
    canonical: String,
    size: usize,
}

/// Orbit partitions stored as line-delimited JSON, one record per orbit.
#[derive(Clone, Debug)]
pub struct OrbitCache {
    dir: PathBuf,
}

impl OrbitCache {
    pub fn new(dir: impl AsRef<Path>) -> Self {
        Self { dir: dir.as_ref().to_path_buf() }
    }

    pub fn from_env() -> Option<Self> {
        cache_dir_from_env().map(Self::new)
    }

    fn path(&self, n: u32, g_prime: u32, d: usize, mod_aut: bool, hash: &str) -> PathBuf {
        let kind = if mod_aut { "aut" } else { "plain" };
        self.dir.join(format!("orbits-n{n}-g{g_prime}-d{d}-{kind}-{}.jsonl", &hash[..16.min(hash.len())]))
    }

    /// Cached orbits for the cell, or `None` when missing or written for another move set.
    pub fn load(&self, n: u32, g_prime: u32, d: usize, mod_aut: bool, hash: &str) -> Result<Option<Vec<OrbitSummary>>> {
        let path = self.path(n, g_prime, d, mod_aut, hash);
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let mut out = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let Ok(r) = serde_json::from_str::<Record>(line) else { return Ok(None) };
            if r.n != n || r.g_prime != g_prime || r.d != d || r.mod_aut != mod_aut || r.move_set_hash != hash {
                return Ok(None);
            }
            let Ok(canonical) = r.canonical.parse::<HurwitzVector>() else { return Ok(None) };
            out.push(OrbitSummary { canonical, size: r.size });
        }
        Ok(Some(out))
    }

    pub fn store(&self, partition: &Partition, hash: &str) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(partition.n, partition.g_prime, partition.d, partition.mod_aut, hash);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        for o in &partition.orbits {
            let r = Record {
                n: partition.n,
                g_prime: partition.g_prime,
                d: partition.d,
                mod_aut: partition.mod_aut,
                move_set_hash: hash.to_string(),
                canonical: o.canonical.to_string(),
                size: o.size,
            };
            writeln!(tmp, "{}", serde_json::to_string(&r)?)?;
        }
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}
