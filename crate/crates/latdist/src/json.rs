//! JSON lattice lists:
//!
//! ```json
//! [
//!   {"id": "cubic", "basis": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]},
//!   {"id": "t2-41", "cell": [53.3, 23.7, 7.3, 90, 90, 90]}
//! ]
//! ```

use latdist_core::{basis_from_cell_parameters, CellParameters, LatticeBasis};
use serde_json::Value;

use crate::record::check_unique;
use crate::{FormatError, LatticeRecord, RecordSource, Result};

pub fn parse_lattice_json(text: &str, source_name: &str) -> Result<Vec<LatticeRecord>> {
    let doc: Value = serde_json::from_str(text).map_err(|e| FormatError::Schema {
        location: format!("{source_name}:{}:{}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let items = doc.as_array().ok_or_else(|| FormatError::Schema {
        location: source_name.to_string(),
        message: "expected a top-level array of lattice records".into(),
    })?;
    let records = items
        .iter()
        .enumerate()
        .map(|(i, item)| parse_record(item, i, source_name))
        .collect::<Result<Vec<_>>>()?;
    check_unique(&records)?;
    Ok(records)
}

fn parse_record(item: &Value, index: usize, source_name: &str) -> Result<LatticeRecord> {
    let id = item.get("id").and_then(Value::as_str);
    let location = match id {
        Some(id) => format!("{source_name}: record {id:?}"),
        None => format!("{source_name}: record #{index}"),
    };
    let fail = |message: String| FormatError::Schema {
        location: location.clone(),
        message,
    };
    let id = id.ok_or_else(|| fail("missing string field \"id\"".into()))?;

    let (basis, raw_cell) = match (item.get("basis"), item.get("cell")) {
        (Some(b), None) => {
            let rows = numbers(b, 9, true)
                .ok_or_else(|| fail("\"basis\" must be three rows of three numbers".into()))?;
            let basis = LatticeBasis::from_rows([
                [rows[0], rows[1], rows[2]],
                [rows[3], rows[4], rows[5]],
                [rows[6], rows[7], rows[8]],
            ])
            .map_err(|e| fail(e.to_string()))?;
            (basis, None)
        }
        (None, Some(c)) => {
            let c = numbers(c, 6, false)
                .ok_or_else(|| fail("\"cell\" must be [a, b, c, alpha, beta, gamma]".into()))?;
            let params = CellParameters::new(c[0], c[1], c[2], c[3], c[4], c[5])
                .map_err(|e| fail(e.to_string()))?;
            let basis = basis_from_cell_parameters(&params).map_err(|e| fail(e.to_string()))?;
            (basis, Some(params))
        }
        _ => {
            return Err(fail(
                "exactly one of \"basis\" or \"cell\" is required".into(),
            ))
        }
    };
    Ok(LatticeRecord {
        id: id.to_string(),
        source: RecordSource::Json,
        basis,
        raw_cell,
    })
}

/// Flattens a numeric array (or a 3×3 nested array when `nested`).
fn numbers(v: &Value, count: usize, nested: bool) -> Option<Vec<f64>> {
    let arr = v.as_array()?;
    let flat: Vec<&Value> = if nested {
        if arr.len() != 3 {
            return None;
        }
        let mut out = Vec::with_capacity(9);
        for row in arr {
            let row = row.as_array().filter(|r| r.len() == 3)?;
            out.extend(row.iter());
        }
        out
    } else {
        arr.iter().collect()
    };
    if flat.len() != count {
        return None;
    }
    flat.into_iter().map(Value::as_f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_identity_record() {
        let r = parse_lattice_json(
            r#"[{"id":"c","basis":[[1,0,0],[0,1,0],[0,0,1]]}]"#,
            "t.json",
        )
        .unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].id, "c");
        assert_eq!(r[0].basis.determinant(), 1.0);
        assert!(r[0].raw_cell.is_none());
    }

    #[test]
    fn cell_record() {
        let r = parse_lattice_json(r#"[{"id":"hex","cell":[1,1,2,90,90,120]}]"#, "t.json").unwrap();
        assert!((r[0].basis.determinant() - 3f64.sqrt()).abs() < 1e-12);
        assert!(r[0].raw_cell.is_some());
    }

    #[test]
    fn errors_name_the_record() {
        let cases = [
            r#"[{"id":"bad","basis":[[1,0,0],[0,1,0]]}]"#,
            r#"[{"id":"bad","basis":[[1,0,0],[0,1,0],[1,1,0]]}]"#,
            r#"[{"id":"bad","cell":[1,1,1,179.9,179.9,179.9]}]"#,
            r#"[{"id":"bad"}]"#,
        ];
        for text in cases {
            let err = parse_lattice_json(text, "t.json").unwrap_err().to_string();
            assert!(err.contains("\"bad\""), "{err}");
        }
        let err = parse_lattice_json(r#"[{"basis":[]}]"#, "t.json")
            .unwrap_err()
            .to_string();
        assert!(err.contains("record #0"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_lattice_json("[{\"id\": }]", "t.json")
            .unwrap_err()
            .to_string();
        assert!(err.starts_with("t.json:1:"), "{err}");
    }

    #[test]
    fn duplicate_ids_rejected() {
        let text = r#"[{"id":"a","cell":[1,1,1,90,90,90]},{"id":"a","cell":[2,2,2,90,90,90]}]"#;
        assert!(matches!(
            parse_lattice_json(text, "t.json"),
            Err(FormatError::DuplicateId(_))
        ));
    }
}
