//! On-disk result cache keyed by a content hash.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::jobs::Report;

/// Bumped whenever job output may change.
pub const VERSION_TAG: &str = concat!("qswd-", env!("CARGO_PKG_VERSION"), "/cache-1");

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    key: String,
    report: Report,
}

pub struct Cache {
    dir: PathBuf,
}

pub enum Lookup {
    Hit(Report),
    Miss,
    /// Unreadable entry; recomputed after the warning.
    Corrupt(String),
}

pub fn key(section: &str) -> String {
    let mut h = Sha256::new();
    h.update(VERSION_TAG.as_bytes());
    h.update(b"\n");
    h.update(section.as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl Cache {
    pub fn new(dir: &Path) -> std::io::Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Lookup {
        let path = self.path(key);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(format!("{}: {e}", path.display())),
        };
        match serde_json::from_str::<Entry>(&text) {
            Ok(e) if e.key == key && e.version == VERSION_TAG => Lookup::Hit(e.report),
            Ok(_) => Lookup::Corrupt(format!("{}: key or version mismatch", path.display())),
            Err(e) => Lookup::Corrupt(format!("{}: {e}", path.display())),
        }
    }

    /// Writes to a temporary file in the cache directory, then renames.
    pub fn put(&self, key: &str, report: &Report) -> std::io::Result<()> {
        let entry = Entry { version: VERSION_TAG.into(), key: key.into(), report: report.clone() };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.flush()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jobs::Report;

    #[test]
    fn roundtrip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path()).unwrap();
        let k = key("section");
        assert!(matches!(c.get(&k), Lookup::Miss));
        let r = Report { tables: vec![], failures: vec!["x".into()] };
        c.put(&k, &r).unwrap();
        assert!(matches!(c.get(&k), Lookup::Hit(ref got) if *got == r));
        std::fs::write(dir.path().join(format!("{k}.json")), "{ not json").unwrap();
        assert!(matches!(c.get(&k), Lookup::Corrupt(_)));
    }

    #[test]
    fn keys_depend_on_content() {
        assert_ne!(key("a"), key("b"));
        assert_eq!(key("a"), key("a"));
        assert_eq!(key("a").len(), 64);
    }
}
