//! On-disk answer cache keyed by canonical form and query.
//!
//! Answers are stored in canonical labelling, so isomorphic inputs share an
//! entry. Entries from another schema version, or whose stored key does not
//! match, are ignored and overwritten.

use std::fs;
use std::path::{Path, PathBuf};

use minorforge::to_graph6;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::SCHEMA;

#[derive(Serialize, Deserialize)]
struct Entry {
    schema: u32,
    canonical: String,
    query: String,
    answer: Value,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: &Path) -> std::io::Result<Cache> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    fn path(&self, canonical: &str, query: &str) -> PathBuf {
        let mut h = Sha256::new();
        h.update(canonical.as_bytes());
        h.update([0]);
        h.update(query.as_bytes());
        let name: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
        self.dir.join(format!("{name}.json"))
    }

    pub fn get<T: DeserializeOwned>(&self, canonical: &minorforge::Graph, query: &str) -> Option<T> {
        let canonical = to_graph6(canonical);
        let text = fs::read_to_string(self.path(&canonical, query)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        if entry.schema != SCHEMA || entry.canonical != canonical || entry.query != query {
            return None;
        }
        serde_json::from_value(entry.answer).ok()
    }

    /// Best effort: a cache that cannot be written is skipped.
    pub fn put<T: Serialize>(&self, canonical: &minorforge::Graph, query: &str, answer: &T) {
        let canonical = to_graph6(canonical);
        let Ok(answer) = serde_json::to_value(answer) else {
            return;
        };
        let path = self.path(&canonical, query);
        let entry = Entry { schema: SCHEMA, canonical, query: query.to_string(), answer };
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        if fs::write(&tmp, serde_json::to_vec(&entry).expect("serialisable")).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use minorforge::graph::cycle;

    #[test]
    fn stale_schema_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let g = cycle(5);
        cache.put(&g, "q", &3u32);
        assert_eq!(cache.get::<u32>(&g, "q"), Some(3));
        assert_eq!(cache.get::<u32>(&g, "other"), None);
        let path = cache.path(&to_graph6(&g), "q");
        let text = fs::read_to_string(&path).unwrap().replace("\"schema\":1", "\"schema\":0");
        fs::write(&path, text).unwrap();
        assert_eq!(cache.get::<u32>(&g, "q"), None);
    }
}
