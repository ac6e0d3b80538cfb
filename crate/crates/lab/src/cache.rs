//! On-disk persistence of the p-independent sequence tables.
//!
//! The file is `sequences-<version>.bin` under `CONGRUENCE_LAB_CACHE_DIR`: an
//! 8-byte magic followed by a bincode payload whose first field is the core
//! library version. A version mismatch or a decode failure discards the file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use congruence_core::sequences::{CacheSnapshot, IntSeq, SeqCache};
use congruence_core::{Rational, VERSION};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub const CACHE_ENV: &str = "CONGRUENCE_LAB_CACHE_DIR";
const MAGIC: &[u8; 8] = b"CLSEQ\x00\x00\x01";

const INT_SEQS: [IntSeq; 5] = [
    IntSeq::CentralBinom,
    IntSeq::Catalan,
    IntSeq::Binom3k,
    IntSeq::Binom4k,
    IntSeq::Binom6k,
];

#[derive(Serialize, Deserialize)]
struct Stored {
    version: String,
    euler: Vec<BigInt>,
    bernoulli: Vec<Rational>,
    harmonic1: Vec<Rational>,
    harmonic2: Vec<Rational>,
    ints: Vec<(u8, Vec<BigInt>)>,
}

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

pub fn cache_path(dir: &Path) -> PathBuf {
    dir.join(format!("sequences-{VERSION}.bin"))
}

fn tag(seq: IntSeq) -> u8 {
    INT_SEQS.iter().position(|&s| s == seq).expect("listed") as u8
}

pub fn encode(cache: &SeqCache) -> Result<Vec<u8>> {
    let snap = cache.snapshot();
    let stored = Stored {
        version: VERSION.to_string(),
        euler: snap.euler,
        bernoulli: snap.bernoulli,
        harmonic1: snap.harmonic1,
        harmonic2: snap.harmonic2,
        ints: snap.ints.into_iter().map(|(s, v)| (tag(s), v)).collect(),
    };
    let mut out = MAGIC.to_vec();
    bincode::serialize_into(&mut out, &stored)?;
    Ok(out)
}

/// `None` if the bytes are not a cache written by this version.
pub fn decode(bytes: &[u8]) -> Option<SeqCache> {
    let payload = bytes.strip_prefix(MAGIC.as_slice())?;
    let stored: Stored = bincode::deserialize(payload).ok()?;
    if stored.version != VERSION {
        return None;
    }
    let mut ints = Vec::with_capacity(stored.ints.len());
    for (t, v) in stored.ints {
        ints.push((*INT_SEQS.get(t as usize)?, v));
    }
    Some(SeqCache::restore(CacheSnapshot {
        euler: stored.euler,
        bernoulli: stored.bernoulli,
        harmonic1: stored.harmonic1,
        harmonic2: stored.harmonic2,
        ints,
    }))
}

/// Loads the cache for this version, or an empty one.
pub fn load(dir: &Path) -> SeqCache {
    match fs::read(cache_path(dir)) {
        Ok(bytes) => decode(&bytes).unwrap_or_else(|| {
            eprintln!(
                "note: ignoring stale or unreadable sequence cache in {}",
                dir.display()
            );
            SeqCache::new()
        }),
        Err(_) => SeqCache::new(),
    }
}

pub fn store(dir: &Path, cache: &SeqCache) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = cache_path(dir);
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).with_context(|| format!("writing {}", tmp.display()))?;
    f.write_all(&encode(cache)?)?;
    f.sync_all()?;
    fs::rename(&tmp, &path)?;
    Ok(())
}
