//! On-disk cache for enumerated signature lists, one record per
//! (ambient genus, order, options) key. Records are line-delimited text
//! with a format-version header; readers reject unknown versions, and the
//! options tag is part of the key so flag changes never serve stale data.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::enumeration::{enumerate_signatures, EnumOptions};
use crate::model::Signature;

pub const CACHE_VERSION_LINE: &str = "orbicheck-cache v1";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("corrupt cache record {path}: {reason}")]
    Corrupt { path: String, reason: String },
}

#[derive(Debug, Clone)]
pub struct SignatureCache {
    dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CacheVerifyReport {
    pub checked: usize,
    pub valid: usize,
}

impl SignatureCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, CacheError> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(SignatureCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn record_path(&self, g: u32, order: u64, opts: &EnumOptions) -> PathBuf {
        self.dir
            .join(format!("sig-g{}-d{}-{}.txt", g, order, opts.cache_tag(g)))
    }

    fn key_line(g: u32, order: u64, opts: &EnumOptions) -> String {
        format!("key g={} order={} opts={}", g, order, opts.cache_tag(g))
    }

    pub fn store(
        &self,
        g: u32,
        order: u64,
        opts: &EnumOptions,
        sigs: &[Signature],
    ) -> Result<(), CacheError> {
        let mut body = String::new();
        body.push_str(CACHE_VERSION_LINE);
        body.push('\n');
        body.push_str(&Self::key_line(g, order, opts));
        body.push('\n');
        for s in sigs {
            body.push_str(&s.to_string());
            body.push('\n');
        }
        fs::write(self.record_path(g, order, opts), body)?;
        Ok(())
    }

    /// Reads a record back, or `None` when absent. Corrupt records (bad
    /// version, mismatched key, unparseable signature) are an error, never
    /// silently recomputed.
    pub fn lookup(
        &self,
        g: u32,
        order: u64,
        opts: &EnumOptions,
    ) -> Result<Option<Vec<Signature>>, CacheError> {
        let path = self.record_path(g, order, opts);
        if !path.exists() {
            return Ok(None);
        }
        Ok(Some(Self::parse_record(
            &path,
            Some(&Self::key_line(g, order, opts)),
        )?))
    }

    fn parse_record(path: &Path, expect_key: Option<&str>) -> Result<Vec<Signature>, CacheError> {
        let corrupt = |reason: String| CacheError::Corrupt {
            path: path.display().to_string(),
            reason,
        };
        let body = fs::read_to_string(path)?;
        let mut lines = body.lines();
        match lines.next() {
            Some(CACHE_VERSION_LINE) => {}
            other => {
                return Err(corrupt(format!(
                    "unknown format version {:?}",
                    other.unwrap_or("")
                )))
            }
        }
        let key = lines.next().unwrap_or("");
        if !key.starts_with("key ") {
            return Err(corrupt("missing key line".to_string()));
        }
        if let Some(expected) = expect_key {
            if key != expected {
                return Err(corrupt(format!("key mismatch: {key:?}")));
            }
        }
        let mut sigs = Vec::new();
        for line in lines {
            let sig: Signature = line
                .parse()
                .map_err(|e| corrupt(format!("bad signature line {line:?}: {e}")))?;
            sigs.push(sig);
        }
        Ok(sigs)
    }

    /// Returns the cached list, computing and storing it on a miss.
    pub fn get_or_compute(
        &self,
        g: u32,
        order: u64,
        opts: &EnumOptions,
    ) -> Result<Vec<Signature>, CacheError> {
        if let Some(sigs) = self.lookup(g, order, opts)? {
            return Ok(sigs);
        }
        let sigs = enumerate_signatures(g, order, opts);
        self.store(g, order, opts, &sigs)?;
        Ok(sigs)
    }

    /// Paths of all records, sorted by file name.
    pub fn records(&self) -> Result<Vec<PathBuf>, CacheError> {
        let mut out = Vec::new();
        for entry in fs::read_dir(&self.dir)? {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "txt") {
                out.push(path);
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn clear(&self) -> Result<usize, CacheError> {
        let records = self.records()?;
        let n = records.len();
        for path in records {
            fs::remove_file(path)?;
        }
        Ok(n)
    }

    /// Re-validates every stored record against a fresh enumeration.
    pub fn verify(&self) -> Result<CacheVerifyReport, CacheError> {
        let mut checked = 0;
        let mut valid = 0;
        for path in self.records()? {
            checked += 1;
            let corrupt = |reason: String| CacheError::Corrupt {
                path: path.display().to_string(),
                reason,
            };
            let body = fs::read_to_string(&path)?;
            let key_line = body.lines().nth(1).unwrap_or("");
            let (g, order, opts) = parse_key(key_line)
                .ok_or_else(|| corrupt(format!("unparseable key {key_line:?}")))?;
            let stored = Self::parse_record(&path, None)?;
            let fresh = enumerate_signatures(g, order, &opts);
            if stored != fresh {
                return Err(corrupt("stored list disagrees with recomputation".into()));
            }
            valid += 1;
        }
        Ok(CacheVerifyReport { checked, valid })
    }
}

fn parse_key(line: &str) -> Option<(u32, u64, EnumOptions)> {
    let rest = line.strip_prefix("key ")?;
    let mut g = None;
    let mut order = None;
    let mut opts = None;
    for field in rest.split_whitespace() {
        let (name, value) = field.split_once('=')?;
        match name {
            "g" => g = Some(value.parse().ok()?),
            "order" => order = Some(value.parse().ok()?),
            "opts" => opts = Some(parse_tag(value)?),
            _ => return None,
        }
    }
    Some((g?, order?, opts?))
}

// inverse of EnumOptions::cache_tag: `div{0|1}-max{N}-r{N}`
fn parse_tag(tag: &str) -> Option<EnumOptions> {
    let mut parts = tag.split('-');
    let div = parts.next()?.strip_prefix("div")?;
    let max = parts.next()?.strip_prefix("max")?;
    let r = parts.next()?.strip_prefix("r")?;
    if parts.next().is_some() {
        return None;
    }
    Some(EnumOptions {
        periods_divide_order: match div {
            "0" => false,
            "1" => true,
            _ => return None,
        },
        max_order: Some(max.parse().ok()?),
        max_exception_r: r.parse().ok()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> EnumOptions {
        EnumOptions::default()
    }

    #[test]
    fn round_trip_and_verify() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SignatureCache::open(dir.path()).unwrap();
        assert_eq!(cache.records().unwrap().len(), 0);

        let sigs = cache.get_or_compute(2, 2, &opts()).unwrap();
        assert_eq!(sigs.len(), 2);
        assert_eq!(cache.lookup(2, 2, &opts()).unwrap(), Some(sigs));

        let report = cache.verify().unwrap();
        assert_eq!(
            report,
            CacheVerifyReport {
                checked: 1,
                valid: 1
            }
        );

        assert_eq!(cache.clear().unwrap(), 1);
        assert_eq!(cache.records().unwrap().len(), 0);
    }

    #[test]
    fn options_change_misses() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SignatureCache::open(dir.path()).unwrap();
        cache.get_or_compute(2, 2, &opts()).unwrap();
        let widened = EnumOptions {
            periods_divide_order: false,
            ..opts()
        };
        assert_eq!(cache.lookup(2, 2, &widened).unwrap(), None);
    }

    #[test]
    fn rejects_unknown_version() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SignatureCache::open(dir.path()).unwrap();
        cache.get_or_compute(2, 2, &opts()).unwrap();
        let path = cache.records().unwrap().pop().unwrap();
        let body = fs::read_to_string(&path).unwrap();
        fs::write(&path, body.replace("v1", "v9")).unwrap();
        assert!(matches!(
            cache.lookup(2, 2, &opts()),
            Err(CacheError::Corrupt { .. })
        ));
        assert!(matches!(cache.verify(), Err(CacheError::Corrupt { .. })));
    }

    #[test]
    fn verify_detects_tampered_body() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SignatureCache::open(dir.path()).unwrap();
        cache.get_or_compute(2, 2, &opts()).unwrap();
        let path = cache.records().unwrap().pop().unwrap();
        let body = fs::read_to_string(&path).unwrap();
        fs::write(&path, body.replace("1;2,2", "1;2,2,2,2")).unwrap();
        assert!(matches!(cache.verify(), Err(CacheError::Corrupt { .. })));
    }
}
