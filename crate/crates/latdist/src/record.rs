use std::collections::HashSet;
use std::fs;
use std::path::Path;

use latdist_core::{CellParameters, LatticeBasis};

use crate::{cif, json, FormatError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordSource {
    Cif,
    Json,
}

/// A named lattice read from an input file.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeRecord {
    pub id: String,
    pub source: RecordSource,
    pub basis: LatticeBasis,
    pub raw_cell: Option<CellParameters>,
}

/// Reads lattices from a `.json` file, a CIF file, or a directory of both
/// (files taken in name order). Ids must be unique.
pub fn load_records(path: &Path) -> Result<Vec<LatticeRecord>> {
    let mut records = Vec::new();
    if path.is_dir() {
        let mut files: Vec<_> = fs::read_dir(path)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                matches!(
                    p.extension()
                        .and_then(|e| e.to_str())
                        .map(str::to_ascii_lowercase)
                        .as_deref(),
                    Some("cif") | Some("json")
                )
            })
            .collect();
        files.sort();
        for f in files {
            records.extend(load_file(&f)?);
        }
    } else {
        records = load_file(path)?;
    }
    check_unique(&records)?;
    Ok(records)
}

fn load_file(path: &Path) -> Result<Vec<LatticeRecord>> {
    let bytes = fs::read(path)?;
    let text = String::from_utf8_lossy(&bytes);
    let name = path.display().to_string();
    let is_json = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    if is_json {
        json::parse_lattice_json(&text, &name)
    } else {
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("lattice");
        cif::parse_cif_cell(&text, &name, stem).map(|r| vec![r])
    }
}

pub(crate) fn check_unique(records: &[LatticeRecord]) -> Result<()> {
    let mut seen = HashSet::new();
    for r in records {
        if !seen.insert(r.id.as_str()) {
            return Err(FormatError::DuplicateId(r.id.clone()));
        }
    }
    Ok(())
}
