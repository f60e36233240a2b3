//! Disk cache for localization tables.
//!
//! One JSON file per table, keyed by type, rank, and word, under a
//! per-library-version subdirectory so a new version never reads a stale
//! format. Writes land under a temporary name in the same directory and are
//! renamed into place.

use std::env;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::rootdata::{RootDatum, WeylGroup};

use super::{localization_table_hproduct, LocalizationTable, SchubertError};

/// The active cache root: `GROTHKIT_CACHE` when set (empty disables caching
/// entirely), otherwise the platform cache directory under `grothkit`.
pub fn cache_dir() -> Option<PathBuf> {
    match env::var("GROTHKIT_CACHE") {
        Ok(dir) if dir.is_empty() => None,
        Ok(dir) => Some(PathBuf::from(dir)),
        Err(_) => platform_cache_dir(),
    }
}

fn platform_cache_dir() -> Option<PathBuf> {
    if let Ok(dir) = env::var("XDG_CACHE_HOME") {
        if !dir.is_empty() {
            return Some(PathBuf::from(dir).join("grothkit"));
        }
    }
    env::var("HOME")
        .ok()
        .filter(|h| !h.is_empty())
        .map(|h| PathBuf::from(h).join(".cache").join("grothkit"))
}

fn version_dir(root: &Path) -> PathBuf {
    root.join(concat!("v", env!("CARGO_PKG_VERSION")))
}

fn table_file_name(group: &WeylGroup, word: &[usize]) -> String {
    let datum = group.datum();
    let key = if word.is_empty() {
        "id".to_string()
    } else {
        let letters: Vec<String> = word.iter().map(|i| i.to_string()).collect();
        letters.join("-")
    };
    format!("{}{}-w{}.json", datum.label(), datum.rank(), key)
}

/// Only tables over the standard datum of their type are cached; a custom
/// Cartan matrix under the same label must not collide with it on disk.
fn is_standard(group: &WeylGroup) -> bool {
    let datum = group.datum();
    RootDatum::standard(datum.label(), datum.rank())
        .map(|standard| standard == *datum)
        .unwrap_or(false)
}

/// Write the table into the given cache root. Returns the final path.
pub fn store_table_in(root: &Path, table: &LocalizationTable) -> io::Result<PathBuf> {
    let dir = version_dir(root);
    fs::create_dir_all(&dir)?;
    let name = table_file_name(table.group(), table.word());
    let path = dir.join(&name);
    let tmp = dir.join(format!(".{}.{}.tmp", name, std::process::id()));
    fs::write(&tmp, table.to_json())?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// Write the table into the active cache root, if caching is enabled.
pub fn store_table(table: &LocalizationTable) -> io::Result<Option<PathBuf>> {
    match cache_dir() {
        Some(root) => store_table_in(&root, table).map(Some),
        None => Ok(None),
    }
}

/// Read a table for this exact group and word from the given cache root.
/// Any missing, unparsable, or mismatched file is a miss.
pub fn load_table_from(
    root: &Path,
    group: &Arc<WeylGroup>,
    word: &[usize],
) -> Option<LocalizationTable> {
    let path = version_dir(root).join(table_file_name(group, word));
    let text = fs::read_to_string(path).ok()?;
    let table = LocalizationTable::from_json(group, &text)?;
    if table.word() != word {
        return None;
    }
    Some(table)
}

/// Read a table from the active cache root, if caching is enabled.
pub fn load_table(group: &Arc<WeylGroup>, word: &[usize]) -> Option<LocalizationTable> {
    cache_dir().and_then(|root| load_table_from(&root, group, word))
}

/// Compute a localization table through the given cache root: return the
/// cached copy on a hit, otherwise build it by the h-product and store it
/// best-effort (an IO failure still returns the computed table).
pub fn cached_localization_table_in(
    root: &Path,
    group: &Arc<WeylGroup>,
    word: &[usize],
) -> Result<LocalizationTable, SchubertError> {
    if !is_standard(group) {
        return localization_table_hproduct(group, word);
    }
    if let Some(table) = load_table_from(root, group, word) {
        return Ok(table);
    }
    let table = localization_table_hproduct(group, word)?;
    let _ = store_table_in(root, &table);
    Ok(table)
}

/// Compute a localization table through the active cache root.
pub fn cached_localization_table(
    group: &Arc<WeylGroup>,
    word: &[usize],
) -> Result<LocalizationTable, SchubertError> {
    match cache_dir() {
        Some(root) => cached_localization_table_in(&root, group, word),
        None => localization_table_hproduct(group, word),
    }
}

/// Cached table files under the given root for the current library version,
/// sorted by name. A missing directory is an empty cache.
pub fn list_cached_tables_in(root: &Path) -> io::Result<Vec<PathBuf>> {
    let dir = version_dir(root);
    let mut out = Vec::new();
    let entries = match fs::read_dir(dir) {
        Ok(entries) => entries,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(out),
        Err(e) => return Err(e),
    };
    for entry in entries {
        let path = entry?.path();
        if path.extension().map(|e| e == "json").unwrap_or(false) {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}

/// Cached table files under the active root.
pub fn list_cached_tables() -> io::Result<Vec<PathBuf>> {
    match cache_dir() {
        Some(root) => list_cached_tables_in(&root),
        None => Ok(Vec::new()),
    }
}

/// Delete the cached tables for the current library version under the given
/// root. Returns how many files were removed.
pub fn clear_cache_in(root: &Path) -> io::Result<usize> {
    let files = list_cached_tables_in(root)?;
    let mut removed = 0;
    for path in files {
        fs::remove_file(path)?;
        removed += 1;
    }
    Ok(removed)
}

/// Delete the cached tables under the active root.
pub fn clear_cache() -> io::Result<usize> {
    match cache_dir() {
        Some(root) => clear_cache_in(&root),
        None => Ok(0),
    }
}
