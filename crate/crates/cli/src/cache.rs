//! Content-addressed artifact cache under `$MODWB_CACHE_DIR`.
//!
//! Files are named by the SHA-256 of the request key. Unreadable or
//! unparsable entries are recomputed and overwritten; write failures are
//! ignored, so the cache never changes a result.

use std::path::PathBuf;

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use modwb::Result;

pub const CACHE_ENV: &str = "MODWB_CACHE_DIR";

pub fn entry_path(key: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    let digest = Sha256::digest(key.as_bytes());
    Some(PathBuf::from(dir).join(format!("{}.json", hex::encode(digest))))
}

fn store(path: &PathBuf, text: &str) {
    if let Some(parent) = path.parent() {
        let _ = std::fs::create_dir_all(parent);
    }
    let _ = std::fs::write(path, text);
}

/// Raw JSON text for `key`, recomputed on a miss.
pub fn cached_text(key: &str, compute: impl FnOnce() -> Result<String>) -> Result<String> {
    let path = entry_path(key);
    if let Some(text) = path.as_ref().and_then(|p| std::fs::read_to_string(p).ok()) {
        if serde_json::from_str::<serde_json::Value>(&text).is_ok() {
            return Ok(text);
        }
    }
    let text = compute()?;
    if let Some(p) = &path {
        store(p, &text);
    }
    Ok(text)
}

pub fn cached<T: Serialize + DeserializeOwned>(key: &str, compute: impl FnOnce() -> Result<T>) -> Result<T> {
    let path = entry_path(key);
    if let Some(value) = path
        .as_ref()
        .and_then(|p| std::fs::read_to_string(p).ok())
        .and_then(|text| serde_json::from_str(&text).ok())
    {
        return Ok(value);
    }
    let value = compute()?;
    if let Some(p) = &path {
        store(p, &serde_json::to_string(&value).expect("artifact serializes"));
    }
    Ok(value)
}
