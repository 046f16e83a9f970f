//! On-disk cache of enumerations.
//!
//! File layout (integers little-endian):
//! `b"GWLGRAPH"`, format version `u32`, key hash `[u8; 32]`, entry count
//! `u64`, then per entry a `u32` length, the canonical bytes and the
//! automorphism order `u64`, and finally the SHA-256 of everything before it.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{
    automorphism_order, canonical_form, decode_canonical, enumerate_graphs, Degree, GraphError, GraphWithSymmetry,
};
use crate::gkm::Target;

/// Bumped whenever enumeration output or the canonical encoding changes.
pub const ALGORITHM_VERSION: u32 = 1;
const MAGIC: &[u8; 8] = b"GWLGRAPH";
const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] io::Error),
    #[error("corrupt cache: {0}")]
    Corrupt(String),
    #[error("cache entry belongs to a different configuration")]
    KeyMismatch,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub target: Target,
    pub n: u32,
    pub degree: Degree,
    pub m: usize,
}

impl CacheKey {
    pub fn hash(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update(b"gwloc enumeration");
        h.update(ALGORITHM_VERSION.to_le_bytes());
        h.update([self.target.tag()]);
        h.update(self.n.to_le_bytes());
        let (kind, a, b) = match self.degree {
            Degree::Total(d) => (0u8, d, 0),
            Degree::Bi(a, b) => (1u8, a, b),
        };
        h.update([kind]);
        h.update(a.to_le_bytes());
        h.update(b.to_le_bytes());
        h.update((self.m as u64).to_le_bytes());
        h.finalize().into()
    }

    pub fn file_name(&self) -> String {
        let hex: String = self.hash().iter().map(|b| format!("{b:02x}")).collect();
        format!("{hex}.gwc")
    }
}

pub fn encode_cache(key: &CacheKey, graphs: &[GraphWithSymmetry]) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&key.hash());
    out.extend_from_slice(&(graphs.len() as u64).to_le_bytes());
    for g in graphs {
        let code = canonical_form(&g.graph);
        out.extend_from_slice(&(code.len() as u32).to_le_bytes());
        out.extend_from_slice(&code);
        out.extend_from_slice(&g.aut_order.to_le_bytes());
    }
    let sum = Sha256::digest(&out);
    out.extend_from_slice(&sum);
    out
}

fn take<'a>(bytes: &'a [u8], pos: &mut usize, k: usize) -> Result<&'a [u8], CacheError> {
    let end = pos
        .checked_add(k)
        .filter(|&e| e <= bytes.len())
        .ok_or_else(|| CacheError::Corrupt("truncated".into()))?;
    let s = &bytes[*pos..end];
    *pos = end;
    Ok(s)
}

/// Parses and fully re-verifies a cache file. With `expected` set, the stored
/// key must match.
pub fn decode_cache(bytes: &[u8], expected: Option<&CacheKey>) -> Result<Vec<GraphWithSymmetry>, CacheError> {
    if bytes.len() < MAGIC.len() + 4 + 32 + 8 + 32 {
        return Err(CacheError::Corrupt("too short".into()));
    }
    let (body, sum) = bytes.split_at(bytes.len() - 32);
    if Sha256::digest(body).as_slice() != sum {
        return Err(CacheError::Corrupt("checksum mismatch".into()));
    }
    let mut pos = 0;
    if take(body, &mut pos, 8)? != MAGIC {
        return Err(CacheError::Corrupt("bad magic".into()));
    }
    let version = u32::from_le_bytes(take(body, &mut pos, 4)?.try_into().unwrap());
    if version != FORMAT_VERSION {
        return Err(CacheError::Corrupt(format!("format version {version}")));
    }
    let hash = take(body, &mut pos, 32)?;
    if let Some(key) = expected {
        if hash != key.hash() {
            return Err(CacheError::KeyMismatch);
        }
    }
    let count = u64::from_le_bytes(take(body, &mut pos, 8)?.try_into().unwrap());
    let mut out = Vec::new();
    let mut prev: Option<&[u8]> = None;
    for _ in 0..count {
        let len = u32::from_le_bytes(take(body, &mut pos, 4)?.try_into().unwrap()) as usize;
        let code = take(body, &mut pos, len)?;
        let aut = u64::from_le_bytes(take(body, &mut pos, 8)?.try_into().unwrap());
        if prev.is_some_and(|p| p >= code) {
            return Err(CacheError::Corrupt("entries out of order".into()));
        }
        prev = Some(code);
        let graph = decode_canonical(code).map_err(|e| CacheError::Corrupt(e.to_string()))?;
        if let Some(key) = expected {
            if graph.target() != key.target
                || graph.n() != key.n
                || graph.degree() != key.degree
                || graph.marking_count() != key.m
            {
                return Err(CacheError::Corrupt("entry does not match key".into()));
            }
        }
        if automorphism_order(&graph) != aut {
            return Err(CacheError::Corrupt("stored automorphism order is wrong".into()));
        }
        out.push(GraphWithSymmetry::new(graph));
    }
    if pos != body.len() {
        return Err(CacheError::Corrupt("trailing bytes".into()));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    Disabled,
}

#[derive(Debug, Clone)]
pub struct GraphCache {
    dir: PathBuf,
}

impl GraphCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        GraphCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    pub fn load(&self, key: &CacheKey) -> Result<Option<Vec<GraphWithSymmetry>>, CacheError> {
        match fs::read(self.path(key)) {
            Ok(bytes) => decode_cache(&bytes, Some(key)).map(Some),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Atomic write: temp file in the same directory, then rename.
    pub fn store(&self, key: &CacheKey, graphs: &[GraphWithSymmetry]) -> Result<PathBuf, CacheError> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(key);
        let tmp = self
            .dir
            .join(format!(".{}.{}.tmp", key.file_name(), std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&encode_cache(key, graphs))?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(path)
    }
}

/// Enumerate through an optional cache.
pub fn enumerate_cached(
    cache: Option<&GraphCache>,
    key: &CacheKey,
) -> Result<(Vec<GraphWithSymmetry>, CacheStatus), CacheError> {
    let Some(cache) = cache else {
        return Ok((
            enumerate_graphs(key.target, key.n, key.degree, key.m)?,
            CacheStatus::Disabled,
        ));
    };
    if let Some(graphs) = cache.load(key)? {
        return Ok((graphs, CacheStatus::Hit));
    }
    let graphs = enumerate_graphs(key.target, key.n, key.degree, key.m)?;
    cache.store(key, &graphs)?;
    Ok((graphs, CacheStatus::Miss))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key() -> CacheKey {
        CacheKey {
            target: Target::ProductPP,
            n: 3,
            degree: Degree::Bi(1, 1),
            m: 1,
        }
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let k = key();
        let graphs = enumerate_graphs(k.target, k.n, k.degree, k.m).unwrap();
        let bytes = encode_cache(&k, &graphs);
        let back = decode_cache(&bytes, Some(&k)).unwrap();
        assert_eq!(back, graphs);
        assert_eq!(encode_cache(&k, &back), bytes);
    }

    #[test]
    fn corruption_is_detected() {
        let k = key();
        let graphs = enumerate_graphs(k.target, k.n, k.degree, k.m).unwrap();
        let bytes = encode_cache(&k, &graphs);
        for i in [0, 10, 60, bytes.len() / 2, bytes.len() - 1] {
            let mut bad = bytes.clone();
            bad[i] ^= 1;
            assert!(decode_cache(&bad, Some(&k)).is_err());
        }
        assert!(decode_cache(&bytes[..bytes.len() - 1], Some(&k)).is_err());
        let other = CacheKey { m: 2, ..k };
        assert!(matches!(
            decode_cache(&bytes, Some(&other)),
            Err(CacheError::KeyMismatch)
        ));
    }

    #[test]
    fn keys_differ() {
        let k = key();
        assert_ne!(k.hash(), CacheKey { n: 4, ..k }.hash());
        assert_ne!(
            k.hash(),
            CacheKey {
                degree: Degree::Bi(2, 0),
                ..k
            }
            .hash()
        );
        assert_ne!(
            CacheKey {
                degree: Degree::Total(2),
                target: Target::Grassmannian,
                ..k
            }
            .hash(),
            CacheKey {
                degree: Degree::Total(2),
                target: Target::Projective,
                ..k
            }
            .hash()
        );
    }
}
