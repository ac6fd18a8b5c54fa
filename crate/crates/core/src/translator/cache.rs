//! On-disk query cache: `<dir>/<first two hex digits>/<digest>.json`.
//! Entries are written once, atomically, and never evicted.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{TranslateError, TranslationRequest, TranslatorParams};
use crate::digest::digest_fields;
use crate::lang::Lang;

/// Temperature enters the key at four decimals, so float noise below that
/// does not split entries.
pub fn cache_key(source: &str, src: Lang, dst: Lang, params: &TranslatorParams, backend_id: &str) -> String {
    digest_fields([
        source.as_bytes(),
        src.tag().as_bytes(),
        dst.tag().as_bytes(),
        params.beam.to_string().as_bytes(),
        format!("{:.4}", params.temperature).as_bytes(),
        backend_id.as_bytes(),
        serde_json::to_string(&params.extra).expect("map serializes").as_bytes(),
    ])
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    backend_id: String,
    request: TranslationRequest,
    candidates: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct QueryCache {
    dir: PathBuf,
}

fn io(e: impl std::fmt::Display) -> TranslateError {
    TranslateError::Cache(e.to_string())
}

impl QueryCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, TranslateError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(io)?;
        Ok(QueryCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(&key[..2]).join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Result<Option<Vec<String>>, TranslateError> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(io(e)),
        };
        let entry: Entry = serde_json::from_str(&text).map_err(|e| io(format!("{}: {e}", path.display())))?;
        Ok(Some(entry.candidates))
    }

    pub fn put(
        &self,
        key: &str,
        req: &TranslationRequest,
        backend_id: &str,
        candidates: &[String],
    ) -> Result<(), TranslateError> {
        let path = self.path(key);
        let parent = path.parent().expect("entries live in a shard directory");
        fs::create_dir_all(parent).map_err(io)?;
        let entry = Entry {
            key: key.to_string(),
            backend_id: backend_id.to_string(),
            request: req.clone(),
            candidates: candidates.to_vec(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(parent).map_err(io)?;
        let text = serde_json::to_string_pretty(&entry).expect("entries serialize");
        tmp.write_all(text.as_bytes()).map_err(io)?;
        tmp.persist(&path).map_err(io)?;
        Ok(())
    }

    /// Number of stored entries.
    pub fn len(&self) -> usize {
        let Ok(shards) = fs::read_dir(&self.dir) else {
            return 0;
        };
        shards
            .flatten()
            .filter_map(|s| fs::read_dir(s.path()).ok())
            .map(|d| {
                d.flatten()
                    .filter(|e| e.path().extension().is_some_and(|x| x == "json"))
                    .count()
            })
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::translator::{MockBackend, Translator};

    #[test]
    fn key_changes_with_every_field() {
        let p = TranslatorParams::new(1, 0.1);
        let base = cache_key("s", Lang::Java, Lang::Py, &p, "b");
        let mut q = p.clone();
        q.temperature = 0.2;
        assert_ne!(base, cache_key("s", Lang::Java, Lang::Py, &q, "b"));
        q = p.clone();
        q.temperature = 0.10000001;
        assert_eq!(base, cache_key("s", Lang::Java, Lang::Py, &q, "b"));
        q = p.clone();
        q.extra.insert("top_p".into(), "0.9".into());
        assert_ne!(base, cache_key("s", Lang::Java, Lang::Py, &q, "b"));
        assert_ne!(base, cache_key("s", Lang::Java, Lang::Cpp, &p, "b"));
        assert_ne!(base, cache_key("s", Lang::Java, Lang::Py, &p, "c"));
    }

    #[test]
    fn warm_disk_cache_skips_the_backend() {
        let dir = tempfile::tempdir().unwrap();
        let src = "int f(int a) { return a; }";
        let first = Translator::new(
            Arc::new(MockBackend::default()),
            Some(QueryCache::open(dir.path()).unwrap()),
        );
        let a = first
            .translate(src, Lang::Java, Lang::Py, &first.params(2, 0.9))
            .unwrap();
        let second = Translator::new(
            Arc::new(MockBackend::default()),
            Some(QueryCache::open(dir.path()).unwrap()),
        );
        let b = second
            .translate(src, Lang::Java, Lang::Py, &second.params(2, 0.9))
            .unwrap();
        assert!(b.from_cache);
        assert_eq!(second.backend_calls(), 0);
        assert_eq!(a.candidates, b.candidates);
        assert_eq!(QueryCache::open(dir.path()).unwrap().len(), 1);
    }
}
