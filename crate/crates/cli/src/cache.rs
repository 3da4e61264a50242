//! Content-addressed report cache. Entries are keyed by a digest of the
//! artifact version and the normalized request, and written atomically.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "/1");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub version: String,
    pub exit_code: i32,
    pub stdout: String,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: &Path) -> io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    pub fn key<T: Serialize>(request: &T) -> String {
        let body = serde_json::to_string(request).expect("requests serialize");
        let mut h = Sha256::new();
        h.update(VERSION.as_bytes());
        h.update([0]);
        h.update(body.as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored entry, ignoring unreadable ones and those of other versions.
    pub fn get(&self, key: &str) -> Option<Entry> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.version == VERSION).then_some(entry)
    }

    pub fn put(&self, key: &str, exit_code: i32, stdout: &str) -> io::Result<()> {
        let entry = Entry { version: VERSION.to_string(), exit_code, stdout: stdout.to_string() };
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry).expect("entries serialize"))?;
        fs::rename(&tmp, self.path(key))
    }
}
