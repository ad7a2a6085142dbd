//! Family index files: one template per line,
//! `protein_id<TAB>path<TAB>sse_count`.
//!
//! Blank lines and `#` comments are skipped. A `# family: <id>` comment
//! names the family; otherwise the index file stem is used.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use crate::error::{read_to_string, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyEntry {
    pub protein_id: String,
    pub path: PathBuf,
    pub sse_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyIndex {
    pub family_id: String,
    pub entries: Vec<FamilyEntry>,
}

impl FamilyIndex {
    pub fn with_sse_count(&self, m: usize) -> impl Iterator<Item = &FamilyEntry> {
        self.entries.iter().filter(move |e| e.sse_count == m)
    }
}

pub fn load_family_index(text: &str, default_id: &str) -> Result<FamilyIndex> {
    let mut family_id = None;
    let mut entries = Vec::new();
    let mut seen = HashSet::new();
    for (k, line) in text.lines().enumerate() {
        let ln = k + 1;
        let trimmed = line.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(id) = comment.trim().strip_prefix("family:") {
                family_id.get_or_insert_with(|| id.trim().to_string());
            }
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        let [id, path, count] = fields[..] else {
            return Err(Error::parse(ln, format!("expected 3 tab-separated fields, found {}", fields.len())));
        };
        if id.is_empty() || path.is_empty() {
            return Err(Error::parse(ln, "empty protein id or path"));
        }
        let sse_count: usize = match count.parse() {
            Ok(c) if c >= 1 => c,
            _ => return Err(Error::parse(ln, format!("sse_count {count:?} is not a positive integer"))),
        };
        if !seen.insert(id.to_string()) {
            return Err(Error::DuplicateProtein(id.to_string()));
        }
        entries.push(FamilyEntry { protein_id: id.to_string(), path: PathBuf::from(path), sse_count });
    }
    if entries.is_empty() {
        return Err(Error::EmptyFamily);
    }
    Ok(FamilyIndex { family_id: family_id.unwrap_or_else(|| default_id.to_string()), entries })
}

/// Reads an index file. Relative template paths are resolved against the
/// directory holding the index.
pub fn read_family_index(path: &Path) -> Result<FamilyIndex> {
    let text = read_to_string(path)?;
    let stem = path.file_stem().map_or_else(|| "family".to_string(), |s| s.to_string_lossy().into_owned());
    let mut index = load_family_index(&text, &stem).map_err(|e| e.in_file(path))?;
    let base = path.parent().unwrap_or(Path::new(""));
    for e in &mut index.entries {
        if e.path.is_relative() {
            e.path = base.join(&e.path);
        }
    }
    Ok(index)
}
