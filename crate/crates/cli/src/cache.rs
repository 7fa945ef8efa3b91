//! Persistent store for Möbius tables.
//!
//! One file, `cubemob.cache`, in the cache directory:
//!
//! ```text
//! "CUBEMOBC" | version: u8 | record*
//! record  = len: u32 | kind: str | n: u32 | hash: str | created: u64 | rows: u32 | row*
//! row     = len: u32 | cell*
//! cell    = 0u8 | 1u8 bytes: u32-prefixed two's-complement little endian
//! str     = u32-prefixed UTF-8
//! ```
//!
//! All integers are little endian. A wrong magic or version empties the
//! cache; a damaged record drops it and everything after it. Either way a
//! warning is logged and the tables are recomputed.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use cubemob_core::poset::MuRow;
use num_bigint::BigInt;

pub const MAGIC: &[u8; 8] = b"CUBEMOBC";
pub const CACHE_VERSION: u8 = 1;
pub const FILE_NAME: &str = "cubemob.cache";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheKey {
    pub kind: String,
    pub n: u32,
    pub hash: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheEntry {
    pub version: u8,
    pub key: CacheKey,
    pub created: u64,
    pub payload: Vec<MuRow>,
}

impl CacheEntry {
    pub fn new(key: CacheKey, payload: Vec<MuRow>) -> CacheEntry {
        let created = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        CacheEntry {
            version: CACHE_VERSION,
            key,
            created,
            payload,
        }
    }
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    version: u8,
    entries: Vec<CacheEntry>,
}

impl Cache {
    pub fn open(dir: &Path) -> Cache {
        Cache::open_versioned(dir, CACHE_VERSION)
    }

    /// Opens the cache expecting schema `version`; entries written under
    /// any other version are ignored.
    pub fn open_versioned(dir: &Path, version: u8) -> Cache {
        let path = dir.join(FILE_NAME);
        let entries = match fs::read(&path) {
            Ok(bytes) => decode(&bytes, version, &path),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Vec::new(),
            Err(e) => {
                log::warn!("cannot read cache {}: {e}; continuing without it", path.display());
                Vec::new()
            }
        };
        Cache { path, version, entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &CacheKey) -> Option<&CacheEntry> {
        self.entries.iter().find(|e| e.key == *key)
    }

    /// Stores `entry`, replacing any entry under the same key, and
    /// rewrites the file. Write failures are logged and otherwise ignored.
    pub fn put(&mut self, mut entry: CacheEntry) {
        entry.version = self.version;
        self.entries.retain(|e| e.key != entry.key);
        self.entries.push(entry);
        if let Err(e) = self.flush() {
            log::warn!("cannot write cache {}: {e}", self.path.display());
        }
    }

    fn flush(&self) -> io::Result<()> {
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir)?;
        }
        let bytes = encode(&self.entries, self.version);
        let tmp = self.path.with_extension(format!("tmp{}", std::process::id()));
        {
            let mut file = fs::File::create(&tmp)?;
            file.write_all(&bytes)?;
            file.sync_all()?;
        }
        fs::rename(&tmp, &self.path)
    }
}

fn put_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_str(out: &mut Vec<u8>, s: &str) {
    put_u32(out, s.len() as u32);
    out.extend_from_slice(s.as_bytes());
}

fn encode_record(entry: &CacheEntry) -> Vec<u8> {
    let mut out = Vec::new();
    put_str(&mut out, &entry.key.kind);
    put_u32(&mut out, entry.key.n);
    put_str(&mut out, &entry.key.hash);
    out.extend_from_slice(&entry.created.to_le_bytes());
    put_u32(&mut out, entry.payload.len() as u32);
    for row in &entry.payload {
        put_u32(&mut out, row.len() as u32);
        for cell in row {
            match cell {
                None => out.push(0),
                Some(v) => {
                    out.push(1);
                    let bytes = v.to_signed_bytes_le();
                    put_u32(&mut out, bytes.len() as u32);
                    out.extend_from_slice(&bytes);
                }
            }
        }
    }
    out
}

pub fn encode(entries: &[CacheEntry], version: u8) -> Vec<u8> {
    let mut out = MAGIC.to_vec();
    out.push(version);
    for entry in entries {
        let record = encode_record(entry);
        put_u32(&mut out, record.len() as u32);
        out.extend_from_slice(&record);
    }
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize) -> Option<&'a [u8]> {
        let end = self.pos.checked_add(len)?;
        let slice = self.bytes.get(self.pos..end)?;
        self.pos = end;
        Some(slice)
    }

    fn u8(&mut self) -> Option<u8> {
        Some(self.take(1)?[0])
    }

    fn u32(&mut self) -> Option<u32> {
        Some(u32::from_le_bytes(self.take(4)?.try_into().ok()?))
    }

    fn u64(&mut self) -> Option<u64> {
        Some(u64::from_le_bytes(self.take(8)?.try_into().ok()?))
    }

    fn string(&mut self) -> Option<String> {
        let len = self.u32()? as usize;
        String::from_utf8(self.take(len)?.to_vec()).ok()
    }

    fn done(&self) -> bool {
        self.pos == self.bytes.len()
    }
}

fn decode_record(bytes: &[u8], version: u8) -> Option<CacheEntry> {
    let mut r = Reader { bytes, pos: 0 };
    let kind = r.string()?;
    let n = r.u32()?;
    let hash = r.string()?;
    let created = r.u64()?;
    let rows = r.u32()? as usize;
    let mut payload = Vec::with_capacity(rows.min(1 << 16));
    for _ in 0..rows {
        let cells = r.u32()? as usize;
        let mut row = Vec::with_capacity(cells.min(1 << 16));
        for _ in 0..cells {
            row.push(match r.u8()? {
                0 => None,
                1 => {
                    let len = r.u32()? as usize;
                    Some(BigInt::from_signed_bytes_le(r.take(len)?))
                }
                _ => return None,
            });
        }
        payload.push(row);
    }
    r.done().then_some(CacheEntry {
        version,
        key: CacheKey { kind, n, hash },
        created,
        payload,
    })
}

pub fn decode(bytes: &[u8], version: u8, path: &Path) -> Vec<CacheEntry> {
    if bytes.len() < MAGIC.len() + 1 || &bytes[..MAGIC.len()] != MAGIC {
        log::warn!("cache {} has no valid header; ignoring it", path.display());
        return Vec::new();
    }
    let found = bytes[MAGIC.len()];
    if found != version {
        log::warn!(
            "cache {} has schema version {found}, expected {version}; ignoring it",
            path.display()
        );
        return Vec::new();
    }
    let mut r = Reader {
        bytes,
        pos: MAGIC.len() + 1,
    };
    let mut entries = Vec::new();
    while !r.done() {
        let record = r.u32().and_then(|len| r.take(len as usize));
        match record.and_then(|rec| decode_record(rec, version)) {
            Some(entry) => entries.push(entry),
            None => {
                log::warn!(
                    "cache {} is damaged after {} records; discarding the rest",
                    path.display(),
                    entries.len()
                );
                break;
            }
        }
    }
    entries
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CacheEntry {
        CacheEntry::new(
            CacheKey {
                kind: "mu-mr".into(),
                n: 2,
                hash: "abc".into(),
            },
            vec![
                vec![Some(BigInt::from(1)), None, Some(BigInt::from(-3))],
                vec![None, Some(BigInt::from(1) << 200), None],
            ],
        )
    }

    #[test]
    fn round_trip_is_exact() {
        let entry = sample();
        let bytes = encode(std::slice::from_ref(&entry), CACHE_VERSION);
        assert_eq!(decode(&bytes, CACHE_VERSION, Path::new("x")), vec![entry]);
    }

    #[test]
    fn damaged_tail_is_dropped() {
        let entry = sample();
        let mut bytes = encode(&[entry.clone(), entry.clone()], CACHE_VERSION);
        bytes.truncate(bytes.len() - 3);
        assert_eq!(decode(&bytes, CACHE_VERSION, Path::new("x")), vec![entry]);
        assert!(decode(b"garbage", CACHE_VERSION, Path::new("x")).is_empty());
    }

    #[test]
    fn put_then_get_on_disk() {
        let dir = tempfile::tempdir().unwrap();
        let entry = sample();
        let mut cache = Cache::open(dir.path());
        assert!(cache.get(&entry.key).is_none());
        cache.put(entry.clone());
        let reopened = Cache::open(dir.path());
        assert_eq!(reopened.get(&entry.key).unwrap().payload, entry.payload);
        assert!(Cache::open_versioned(dir.path(), CACHE_VERSION + 1).is_empty());
    }
}
