//! Orbit caches: JSON, gzip-compressed above a size threshold.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use flate2::read::GzDecoder;
use flate2::write::GzEncoder;
use flate2::Compression;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::surface::OrbitSummary;

/// Environment variable naming the orbit cache directory.
pub const CACHE_DIR_ENV: &str = "BRAIDSURF_CACHE_DIR";
/// Serialized caches larger than this are gzip-compressed.
pub const GZIP_THRESHOLD: usize = 64 * 1024;
const FORMAT: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("corrupt cache file {path}: {reason}")]
    Corrupt { path: PathBuf, reason: String },
    #[error("cache {field} fingerprint mismatch: expected {expected}, found {found}")]
    FingerprintMismatch {
        field: &'static str,
        expected: String,
        found: String,
    },
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: u32,
    group_fingerprint: String,
    move_fingerprint: String,
    summary: OrbitSummary,
}

pub fn write_cache(summary: &OrbitSummary, path: &Path) -> Result<(), CacheError> {
    write_cache_with_threshold(summary, path, GZIP_THRESHOLD)
}

pub fn write_cache_with_threshold(summary: &OrbitSummary, path: &Path, gzip_above: usize) -> Result<(), CacheError> {
    let file = CacheFile {
        format: FORMAT,
        group_fingerprint: summary.group_fingerprint.clone(),
        move_fingerprint: summary.move_fingerprint.clone(),
        summary: summary.clone(),
    };
    let json = serde_json::to_vec(&file).map_err(|e| CacheError::Corrupt {
        path: path.to_path_buf(),
        reason: e.to_string(),
    })?;
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let bytes = if json.len() > gzip_above {
        let mut enc = GzEncoder::new(Vec::new(), Compression::default());
        enc.write_all(&json)?;
        enc.finish()?
    } else {
        json
    };
    // write then rename so readers never see a half-written file
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Reads a cache and checks both fingerprints against the expected ones.
pub fn read_cache(path: &Path, group_fingerprint: &str, move_fingerprint: &str) -> Result<OrbitSummary, CacheError> {
    let raw = fs::read(path)?;
    let corrupt = |reason: String| CacheError::Corrupt {
        path: path.to_path_buf(),
        reason,
    };
    let json = if raw.starts_with(&[0x1f, 0x8b]) {
        let mut out = Vec::new();
        GzDecoder::new(raw.as_slice())
            .read_to_end(&mut out)
            .map_err(|e| corrupt(e.to_string()))?;
        out
    } else {
        raw
    };
    let file: CacheFile = serde_json::from_slice(&json).map_err(|e| corrupt(e.to_string()))?;
    if file.format != FORMAT {
        return Err(corrupt(format!("unsupported format {}", file.format)));
    }
    let check = |field, expected: &str, found: &str| {
        if expected == found {
            Ok(())
        } else {
            Err(CacheError::FingerprintMismatch {
                field,
                expected: expected.to_string(),
                found: found.to_string(),
            })
        }
    };
    check("group", group_fingerprint, &file.group_fingerprint)?;
    check("group", group_fingerprint, &file.summary.group_fingerprint)?;
    check("move set", move_fingerprint, &file.move_fingerprint)?;
    check("move set", move_fingerprint, &file.summary.move_fingerprint)?;
    if !file.summary.representatives.windows(2).all(|w| w[0] < w[1])
        || file.summary.size != file.summary.representatives.len()
    {
        return Err(corrupt("representatives are not a sorted set of the recorded size".into()));
    }
    Ok(file.summary)
}

pub fn cache_roundtrip(summary: &OrbitSummary, path: &Path) -> Result<OrbitSummary, CacheError> {
    write_cache(summary, path)?;
    read_cache(path, &summary.group_fingerprint, &summary.move_fingerprint)
}

/// File name for the orbit of `start` (a canonical tuple).
pub fn cache_key(group_fingerprint: &str, move_fingerprint: &str, automorphisms: bool, start: &[usize]) -> String {
    let mut h = Sha256::new();
    h.update(group_fingerprint.as_bytes());
    h.update([0]);
    h.update(move_fingerprint.as_bytes());
    h.update([u8::from(automorphisms)]);
    for x in start {
        h.update((*x as u64).to_le_bytes());
    }
    let digest = h.finalize();
    let hex: String = digest.iter().take(16).map(|b| format!("{b:02x}")).collect();
    format!("orbit-{hex}.json")
}

pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::perm::builtin;
    use crate::surface::{orbit, OrbitOptions, SurfaceMonodromy};

    fn summary(g: usize) -> OrbitSummary {
        let z3 = Arc::new(builtin("Z/3").unwrap());
        let mut a = vec![1];
        let mut b = vec![0];
        a.resize(g, 0);
        b.resize(g, 0);
        let t = SurfaceMonodromy::new(z3, &a, &b, &[]).unwrap();
        orbit(&t, &OrbitOptions::default()).unwrap()
    }

    fn tmp(name: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("braidsurf-cache-test-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        dir.join(name)
    }

    #[test]
    fn roundtrip_small_and_compressed() {
        let s = summary(1);
        assert_eq!(cache_roundtrip(&s, &tmp("small.json")).unwrap(), s);
        let big = summary(2);
        let p = tmp("big.json");
        write_cache_with_threshold(&big, &p, 0).unwrap();
        assert_eq!(read_cache(&p, &big.group_fingerprint, &big.move_fingerprint).unwrap(), big);
        assert!(fs::read(&p).unwrap().starts_with(&[0x1f, 0x8b]));
    }

    #[test]
    fn mismatch_and_corruption() {
        let s = summary(1);
        let p = tmp("mm.json");
        write_cache(&s, &p).unwrap();
        assert!(matches!(
            read_cache(&p, &s.group_fingerprint, "other"),
            Err(CacheError::FingerprintMismatch { field: "move set", .. })
        ));
        let bytes = fs::read(&p).unwrap();
        fs::write(&p, &bytes[..bytes.len() / 2]).unwrap();
        assert!(matches!(
            read_cache(&p, &s.group_fingerprint, &s.move_fingerprint),
            Err(CacheError::Corrupt { .. })
        ));
    }

    #[test]
    fn keys_depend_on_inputs() {
        let a = cache_key("g", "m", false, &[0, 1]);
        assert_ne!(a, cache_key("g", "m", true, &[0, 1]));
        assert_ne!(a, cache_key("g", "m", false, &[1, 0]));
        assert_eq!(a, cache_key("g", "m", false, &[0, 1]));
    }
}
