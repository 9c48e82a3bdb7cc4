//! Catalogue cache: JSON files keyed by genus and schema version, guarded
//! by a content hash. A mismatch of either forces a rebuild; stale files
//! are never reused silently.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::enumeration::{Catalog, CatalogDoc, SCHEMA_VERSION};

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache invalid: {0}")]
    Invalid(String),
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    schema_version: u32,
    content_hash: String,
    #[serde(flatten)]
    doc: CatalogDoc,
}

fn hash_cells(doc: &CatalogDoc) -> String {
    let payload = serde_json::to_vec(&doc.cells).expect("cells serialize");
    let mut hasher = Sha256::new();
    hasher.update(&payload);
    format!("{:x}", hasher.finalize())
}

/// Path of the cache file for a genus under `dir`.
pub fn cache_path(dir: &Path, genus: usize) -> PathBuf {
    dir.join(format!("catalog-g{genus}-v{SCHEMA_VERSION}.json"))
}

/// Writes the catalogue to its cache file, creating `dir` if needed.
pub fn store(dir: &Path, catalog: &Catalog) -> Result<PathBuf, CacheError> {
    std::fs::create_dir_all(dir)?;
    let doc = CatalogDoc::from_catalog(catalog);
    let file = CacheFile {
        schema_version: SCHEMA_VERSION,
        content_hash: hash_cells(&doc),
        doc,
    };
    let path = cache_path(dir, catalog.genus);
    let json = serde_json::to_string(&file).expect("cache serializes");
    std::fs::write(&path, json)?;
    Ok(path)
}

/// Loads a cached catalogue. `Ok(None)` when no file exists; `Err` when a
/// file exists but fails validation.
pub fn load(dir: &Path, genus: usize) -> Result<Option<Catalog>, CacheError> {
    let path = cache_path(dir, genus);
    if !path.exists() {
        return Ok(None);
    }
    let text = std::fs::read_to_string(&path)?;
    let file: CacheFile = serde_json::from_str(&text)
        .map_err(|e| CacheError::Invalid(format!("unreadable cache file: {e}")))?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(CacheError::Invalid(format!(
            "schema version {} does not match {}",
            file.schema_version, SCHEMA_VERSION
        )));
    }
    if hash_cells(&file.doc) != file.content_hash {
        return Err(CacheError::Invalid("content hash mismatch".into()));
    }
    if file.doc.genus != genus {
        return Err(CacheError::Invalid(format!(
            "cache holds genus {}, expected {}",
            file.doc.genus, genus
        )));
    }
    let catalog = file
        .doc
        .into_catalog()
        .map_err(|e| CacheError::Invalid(format!("inconsistent cells: {e}")))?;
    Ok(Some(catalog))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::build_catalog;

    #[test]
    fn store_and_load_round_trip() {
        let dir = std::env::temp_dir().join(format!("mcomb-cache-test-{}", std::process::id()));
        let catalog = build_catalog(1).unwrap();
        store(&dir, &catalog).unwrap();
        let loaded = load(&dir, 1).unwrap().unwrap();
        assert_eq!(loaded.total_cells(), 2);
        assert_eq!(load(&dir, 2).unwrap().map(|c| c.total_cells()), None);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn corrupted_cache_is_rejected() {
        let dir = std::env::temp_dir().join(format!("mcomb-cache-bad-{}", std::process::id()));
        let catalog = build_catalog(1).unwrap();
        let path = store(&dir, &catalog).unwrap();
        let mut text = std::fs::read_to_string(&path).unwrap();
        text = text.replace("1212", "2121");
        std::fs::write(&path, text).unwrap();
        assert!(matches!(load(&dir, 1), Err(CacheError::Invalid(_))));
        std::fs::remove_dir_all(&dir).ok();
    }
}
