//! Unit cell parameters from a CIF file.
//!
//! Only `_cell_length_a/b/c` and `_cell_angle_alpha/beta/gamma` of the first
//! data block are read. Loops, semicolon text fields and all other tags are
//! skipped. Standard uncertainties such as `7.3(2)` are dropped.

use latdist_core::{basis_from_cell_parameters, CellParameters};

use crate::{FormatError, LatticeRecord, RecordSource, Result};

const TAGS: [&str; 6] = [
    "_cell_length_a",
    "_cell_length_b",
    "_cell_length_c",
    "_cell_angle_alpha",
    "_cell_angle_beta",
    "_cell_angle_gamma",
];

/// Parses the cell of the first data block. The record id is the data block
/// name, or `fallback_id` when the block is unnamed.
pub fn parse_cif_cell(text: &str, source_name: &str, fallback_id: &str) -> Result<LatticeRecord> {
    let mut values: [Option<f64>; 6] = [None; 6];
    let mut block: Option<String> = None;
    let mut pending: Option<usize> = None;
    let mut in_text_field = false;

    'lines: for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        if line.starts_with(';') {
            in_text_field = !in_text_field;
            continue;
        }
        if in_text_field {
            continue;
        }
        for token in tokens(line) {
            if token.starts_with('#') {
                break;
            }
            if let Some(slot) = pending.take() {
                values[slot] = Some(parse_number(token, source_name, lineno)?);
                continue;
            }
            let lower = token.to_ascii_lowercase();
            if let Some(name) = lower.strip_prefix("data_") {
                if block.is_some() {
                    break 'lines;
                }
                block = Some(if name.is_empty() {
                    fallback_id.to_string()
                } else {
                    token[5..].to_string()
                });
            } else if let Some(slot) = TAGS.iter().position(|t| *t == lower) {
                pending = Some(slot);
            }
            // Everything else is another tag, its value, or loop data.
        }
    }

    let mut cell = [0.0; 6];
    for (slot, v) in values.iter().enumerate() {
        cell[slot] = v.ok_or_else(|| FormatError::MissingTag {
            source_name: source_name.to_string(),
            tag: TAGS[slot],
        })?;
    }
    let lattice_err = |source| FormatError::Lattice {
        source_name: source_name.to_string(),
        source,
    };
    let params = CellParameters::new(cell[0], cell[1], cell[2], cell[3], cell[4], cell[5])
        .map_err(lattice_err)?;
    let basis = basis_from_cell_parameters(&params).map_err(lattice_err)?;
    Ok(LatticeRecord {
        id: block.unwrap_or_else(|| fallback_id.to_string()),
        source: RecordSource::Cif,
        basis,
        raw_cell: Some(params),
    })
}

/// Whitespace-separated tokens, honoring single and double quotes.
fn tokens(line: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let bytes = line.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i >= bytes.len() {
            break;
        }
        let quote = bytes[i];
        if quote == b'\'' || quote == b'"' {
            let start = i + 1;
            let mut j = start;
            // A closing quote must be followed by whitespace or end of line.
            while j < bytes.len()
                && !(bytes[j] == quote
                    && (j + 1 == bytes.len() || bytes[j + 1].is_ascii_whitespace()))
            {
                j += 1;
            }
            out.push(&line[start..j.min(bytes.len())]);
            i = j + 1;
        } else {
            let start = i;
            while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            out.push(&line[start..i]);
        }
    }
    out
}

fn parse_number(token: &str, source_name: &str, line: usize) -> Result<f64> {
    let bare = token.split('(').next().unwrap_or(token);
    bare.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| FormatError::MalformedNumber {
            source_name: source_name.to_string(),
            line,
            text: token.to_string(),
        })
}
