//! Wavefront OBJ export of polyhedra.

use std::fmt::Write;

use latdist_core::{ConvexPolyhedron, Vec3};

use crate::{FormatError, Result};

/// `v x y z` lines (9 significant digits) and 1-based `f` lines in stored
/// winding order.
pub fn export_cell_obj(p: &ConvexPolyhedron) -> String {
    let mut out = String::new();
    for v in p.vertices() {
        let _ = writeln!(out, "v {} {} {}", sig9(v.x), sig9(v.y), sig9(v.z));
    }
    for f in p.faces() {
        out.push('f');
        for i in f {
            let _ = write!(out, " {}", i + 1);
        }
        out.push('\n');
    }
    out
}

/// Shortest decimal of `x` rounded to 9 significant digits.
fn sig9(x: f64) -> String {
    let rounded: f64 = format!("{x:.8e}").parse().unwrap_or(x);
    if rounded == 0.0 {
        "0".to_string()
    } else {
        rounded.to_string()
    }
}

/// Reads the `v` and `f` lines back; face indices become 0-based.
pub fn parse_obj(text: &str) -> Result<(Vec<Vec3>, Vec<Vec<usize>>)> {
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let bad = |message: &str| FormatError::Schema {
            location: format!("obj line {}", idx + 1),
            message: message.to_string(),
        };
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("v") => {
                let c: Vec<f64> = parts
                    .map(str::parse)
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad("bad vertex coordinate"))?;
                if c.len() < 3 {
                    return Err(bad("vertex needs three coordinates"));
                }
                vertices.push(Vec3::new(c[0], c[1], c[2]));
            }
            Some("f") => {
                let face = parts
                    .map(|t| {
                        let i: usize = t
                            .split('/')
                            .next()
                            .unwrap_or(t)
                            .parse()
                            .map_err(|_| bad("bad face index"))?;
                        i.checked_sub(1)
                            .ok_or_else(|| bad("face indices are 1-based"))
                    })
                    .collect::<Result<Vec<usize>>>()?;
                faces.push(face);
            }
            _ => {}
        }
    }
    if faces.iter().flatten().any(|&i| i >= vertices.len()) {
        return Err(FormatError::Schema {
            location: "obj".into(),
            message: "face index out of range".into(),
        });
    }
    Ok((vertices, faces))
}
