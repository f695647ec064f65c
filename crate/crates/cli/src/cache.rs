//! Results cache: class-group summaries keyed by decimal discriminant,
//! persisted as versioned JSON. A missing, stale, or corrupt file cold
//! starts with a warning; it never aborts a run.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use rqf::forms::ClassGroupSummary;

pub const CACHE_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedSummary {
    pub d: u64,
    pub delta: u64,
    pub h_plus: u64,
    pub h: u64,
    pub unit_norm: i8,
    pub genus_rank: u32,
}

impl From<&ClassGroupSummary> for CachedSummary {
    fn from(s: &ClassGroupSummary) -> Self {
        CachedSummary {
            d: s.d,
            delta: s.delta,
            h_plus: s.h_plus,
            h: s.h,
            unit_norm: s.unit_norm,
            genus_rank: s.genus_rank,
        }
    }
}

impl From<&CachedSummary> for ClassGroupSummary {
    fn from(s: &CachedSummary) -> Self {
        ClassGroupSummary {
            d: s.d,
            delta: s.delta,
            h_plus: s.h_plus,
            h: s.h,
            unit_norm: s.unit_norm,
            genus_rank: s.genus_rank,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    version: String,
    entries: BTreeMap<String, CachedSummary>,
}

#[derive(Debug, Default)]
pub struct Cache {
    pub entries: BTreeMap<u64, CachedSummary>,
}

impl Cache {
    /// Loads a cache, falling back to empty on any defect.
    pub fn load(path: &Path) -> Cache {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(_) => return Cache::default(),
        };
        let parsed: CacheFile = match serde_json::from_str(&text) {
            Ok(p) => p,
            Err(e) => {
                eprintln!("warning: cache {} is corrupt ({e}); starting cold", path.display());
                return Cache::default();
            }
        };
        if parsed.version != CACHE_VERSION {
            eprintln!(
                "warning: cache {} has version {:?}, expected {CACHE_VERSION:?}; ignoring it",
                path.display(),
                parsed.version
            );
            return Cache::default();
        }
        let mut entries = BTreeMap::new();
        for (k, v) in parsed.entries {
            match k.parse::<u64>() {
                Ok(delta) if delta == v.delta => {
                    entries.insert(delta, v);
                }
                _ => {
                    eprintln!(
                        "warning: cache {} entry {k:?} is inconsistent; ignoring it",
                        path.display()
                    );
                }
            }
        }
        Cache { entries }
    }

    pub fn get(&self, delta: u64) -> Option<ClassGroupSummary> {
        self.entries.get(&delta).map(ClassGroupSummary::from)
    }

    pub fn insert(&mut self, summary: &ClassGroupSummary) {
        self.entries.insert(summary.delta, summary.into());
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        let file = CacheFile {
            version: CACHE_VERSION.into(),
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&file).expect("cache serializes");
        text.push('\n');
        std::fs::write(path, text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ClassGroupSummary {
        ClassGroupSummary {
            d: 69,
            delta: 69,
            h_plus: 2,
            h: 1,
            unit_norm: 1,
            genus_rank: 1,
        }
    }

    #[test]
    fn roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        let mut cache = Cache::default();
        cache.insert(&sample());
        cache.save(&path).unwrap();
        let loaded = Cache::load(&path);
        assert_eq!(loaded.get(69), Some(sample()));
    }

    #[test]
    fn missing_file_is_empty() {
        let cache = Cache::load(Path::new("/nonexistent/cache.json"));
        assert!(cache.entries.is_empty());
    }

    #[test]
    fn corrupt_file_is_empty() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        std::fs::write(&path, "{ not json").unwrap();
        let cache = Cache::load(&path);
        assert!(cache.entries.is_empty());
    }

    #[test]
    fn version_mismatch_is_empty() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        std::fs::write(
            &path,
            r#"{"version":"0","entries":{"69":{"d":69,"delta":69,"h_plus":2,"h":1,"unit_norm":1,"genus_rank":1}}}"#,
        )
        .unwrap();
        let cache = Cache::load(&path);
        assert!(cache.entries.is_empty());
    }
}
