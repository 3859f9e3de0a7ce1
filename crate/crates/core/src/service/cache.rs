//! One file per (p, suite, key), written by rename so concurrent writers
//! never expose a partial file. The first line is the SHA-256 of the rest.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "HZD_CACHE_DIR";

/// Bumped whenever cached entries change meaning.
const FORMAT: &str = "hzd-cache-v1";

#[derive(Debug)]
pub struct Cache {
    root: PathBuf,
    pub hits: AtomicUsize,
    pub misses: AtomicUsize,
    pub corrupted: AtomicUsize,
    counter: AtomicU64,
}

fn checksum(body: &str) -> String {
    hex::encode(Sha256::digest(format!("{FORMAT}\n{body}").as_bytes()))
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Cache {
            root: root.into(),
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
            corrupted: AtomicUsize::new(0),
            counter: AtomicU64::new(0),
        }
    }

    /// The directory from the environment, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).map(Cache::new)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path(&self, p: u32, suite: &str, key: &str) -> PathBuf {
        let safe = |s: &str| -> String {
            s.chars()
                .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
                .collect()
        };
        self.root.join(format!("p{p}")).join(safe(suite)).join(format!("{}.json", safe(key)))
    }

    /// The cached value, or `None` if absent or failing its checksum.
    pub fn get<T: DeserializeOwned>(&self, p: u32, suite: &str, key: &str) -> Option<T> {
        let path = self.path(p, suite, key);
        let Ok(text) = fs::read_to_string(&path) else {
            self.misses.fetch_add(1, Ordering::Relaxed);
            return None;
        };
        let parsed = text
            .split_once('\n')
            .filter(|(sum, body)| *sum == checksum(body))
            .and_then(|(_, body)| serde_json::from_str(body).ok());
        match parsed {
            Some(v) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(v)
            }
            None => {
                self.corrupted.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    pub fn put<T: Serialize>(&self, p: u32, suite: &str, key: &str, value: &T) -> std::io::Result<()> {
        let path = self.path(p, suite, key);
        let dir = path.parent().expect("cache paths have a parent");
        fs::create_dir_all(dir)?;
        let body = serde_json::to_string(value).map_err(std::io::Error::other)?;
        let n = self.counter.fetch_add(1, Ordering::Relaxed);
        let tmp = dir.join(format!(".tmp-{}-{n}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            writeln!(f, "{}", checksum(&body))?;
            f.write_all(body.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path());
        assert_eq!(c.get::<Vec<i32>>(3, "ring", "0,0,0"), None);
        c.put(3, "ring", "0,0,0", &vec![1, 2, 3]).unwrap();
        assert_eq!(c.get::<Vec<i32>>(3, "ring", "0,0,0"), Some(vec![1, 2, 3]));
        let path = c.path(3, "ring", "0,0,0");
        let text = fs::read_to_string(&path).unwrap().replace("[1,2,3]", "[1,2,4]");
        fs::write(&path, text).unwrap();
        assert_eq!(c.get::<Vec<i32>>(3, "ring", "0,0,0"), None);
        assert_eq!(c.corrupted.load(Ordering::Relaxed), 1);
        assert_eq!(c.hits.load(Ordering::Relaxed), 1);
    }
}
