//! On-disk result cache, one JSON file per record.

use std::fs;
use std::path::PathBuf;

use crate::record::{sha256_hex, ResultRecord};

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    /// `$QHOM_CACHE`, else `$XDG_CACHE_HOME/qhom`, else `~/.cache/qhom`.
    pub fn from_env(no_cache: bool) -> Self {
        if no_cache {
            return Self::disabled();
        }
        let env = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
        let dir = env("QHOM_CACHE")
            .or_else(|| env("XDG_CACHE_HOME").map(|d| d.join("qhom")))
            .or_else(|| env("HOME").map(|d| d.join(".cache").join("qhom")));
        Cache { dir }
    }

    pub fn key(table_sha256: &str, theory: &str, degree: usize) -> String {
        sha256_hex(format!("{table_sha256}|{theory}|{degree}|{}", qhom::ENGINE_VERSION).as_bytes())
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn get(&self, key: &str) -> Option<ResultRecord> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Best effort: an unwritable cache directory only costs recomputation.
    pub fn put(&self, key: &str, record: &ResultRecord) {
        let (Some(dir), Some(path)) = (self.dir.as_ref(), self.path(key)) else {
            return;
        };
        if fs::create_dir_all(dir).is_err() {
            return;
        }
        let tmp = dir.join(format!("{key}.{}.tmp", std::process::id()));
        let body = serde_json::to_string(record).expect("record serializes");
        if fs::write(&tmp, body).is_ok() && fs::rename(&tmp, &path).is_err() {
            let _ = fs::remove_file(&tmp);
        }
    }
}
