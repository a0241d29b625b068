//! The fixed sweep catalog, optionally extended by a directory of Cayley
//! files named in `WORDMAP_CATALOG`.

use std::path::Path;

use crate::error::Result;

pub const NILPOTENT: [&str; 10] = ["C2", "C4", "C2xC2", "C6", "C12", "Q8", "D8", "Heis3", "C3xC3xC3", "C2xQ8"];
pub const NON_NILPOTENT: [&str; 4] = ["S3", "A4", "S4", "D12"];

pub const CATALOG_ENV: &str = "WORDMAP_CATALOG";

pub fn builtin_catalog() -> Vec<String> {
    NILPOTENT.iter().chain(&NON_NILPOTENT).map(|s| s.to_string()).collect()
}

/// `cayley:` specs for the regular files of a directory, sorted by name.
pub fn cayley_specs_in(dir: &Path) -> Result<Vec<String>> {
    let mut paths = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_file() {
            paths.push(path);
        }
    }
    paths.sort();
    Ok(paths.into_iter().map(|p| format!("cayley:{}", p.display())).collect())
}

/// The builtin catalog followed by the files under `WORDMAP_CATALOG`, if set.
pub fn catalog() -> Result<Vec<String>> {
    let mut specs = builtin_catalog();
    if let Some(dir) = std::env::var_os(CATALOG_ENV) {
        specs.extend(cayley_specs_in(Path::new(&dir))?);
    }
    Ok(specs)
}
