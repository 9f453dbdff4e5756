//! Built-in catalog of small groups, optionally extended from a JSON file
//! named by the `BURNSIDE_CATALOG` environment variable.

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Group;

pub const CATALOG_ENV: &str = "BURNSIDE_CATALOG";

const BUILTIN: &str = include_str!("catalog.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<Arc<Group>> {
        Group::from_permutations(&self.name, self.degree, &self.generators)
    }
}

pub fn parse_catalog(json: &str) -> Result<Vec<CatalogEntry>> {
    serde_json::from_str(json).map_err(|e| Error::Catalog(e.to_string()))
}

pub fn load_file(path: &Path) -> Result<Vec<CatalogEntry>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
    parse_catalog(&text)
}

/// Normalized lookup key: case-insensitive, `×` and `*` read as `x`, spaces
/// dropped, and a few common alternative spellings folded together.
pub fn normalize_name(name: &str) -> String {
    let mut s: String = name
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '×' | '*' => 'x',
            '²' => '2',
            '³' => '3',
            '⁴' => '4',
            c => c.to_ascii_lowercase(),
        })
        .collect();
    s = s.replace("^", "").replace("_", "");
    let alias = match s.as_str() {
        "c1" | "trivial" => "1",
        "c22" | "v4" | "klein" => "c2xc2",
        "c2xd8" => "d8xc2",
        "c2xq8" => "q8xc2",
        "c32" => "c3xc3",
        "c42" => "c4xc4",
        "c4xc22" | "c2xc2xc4" => "c4xc2xc2",
        "c2xc4" => "c4xc2",
        "c2xc2xc2" => "c23",
        "c2xc2xc2xc2" => "c24",
        "m16" | "m42" => "m4(2)",
        "s3xc2" | "d6xc2" => "d12",
        _ => return s,
    };
    alias.to_string()
}

struct Registry {
    entries: Vec<CatalogEntry>,
    built: HashMap<String, Arc<Group>>,
}

static REGISTRY: Lazy<Mutex<Registry>> = Lazy::new(|| {
    let mut entries = parse_catalog(BUILTIN).expect("built-in catalog is valid JSON");
    if let Ok(path) = std::env::var(CATALOG_ENV) {
        match load_file(Path::new(&path)) {
            Ok(extra) => entries.extend(extra),
            Err(e) => eprintln!("warning: ignoring {CATALOG_ENV}: {e}"),
        }
    }
    Mutex::new(Registry { entries, built: HashMap::new() })
});

/// All catalog entries (built-in first, then the extra file).
pub fn entries() -> Vec<CatalogEntry> {
    REGISTRY.lock().entries.clone()
}

/// Adds entries at runtime; later entries do not shadow earlier names.
pub fn register(extra: Vec<CatalogEntry>) {
    REGISTRY.lock().entries.extend(extra);
}

/// The catalog group with the given name. Repeated lookups return the same
/// group object, so caches attached to it are shared.
pub fn get(name: &str) -> Result<Arc<Group>> {
    let key = normalize_name(name);
    let mut reg = REGISTRY.lock();
    if let Some(g) = reg.built.get(&key) {
        return Ok(g.clone());
    }
    let entry = reg
        .entries
        .iter()
        .find(|e| normalize_name(&e.name) == key)
        .cloned()
        .ok_or_else(|| Error::UnknownGroup(name.to_string()))?;
    let g = entry.build()?;
    reg.built.insert(key, g.clone());
    Ok(g)
}

/// Every catalog group, in catalog order.
pub fn all_groups() -> Result<Vec<Arc<Group>>> {
    entries().iter().map(|e| get(&e.name)).collect()
}

pub fn groups_up_to(max_order: usize) -> Result<Vec<Arc<Group>>> {
    Ok(all_groups()?.into_iter().filter(|g| g.order() <= max_order).collect())
}

pub fn p_groups_up_to(max_order: usize) -> Result<Vec<Arc<Group>>> {
    Ok(groups_up_to(max_order)?.into_iter().filter(|g| g.is_p_group()).collect())
}
