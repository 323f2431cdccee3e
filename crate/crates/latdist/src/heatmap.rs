//! Grayscale rendering of distance matrices.

use crate::DistanceMatrix;

pub type GrayMatrix = Vec<Vec<u8>>;

/// Maps `[min, max]` of all entries linearly onto `[0, 255]`, rounding half
/// away from zero. A constant matrix maps to all zeros.
pub fn scale_to_gray(m: &DistanceMatrix) -> GrayMatrix {
    let all = m.values.iter().flatten().copied();
    let (lo, hi) = all.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    m.values
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| {
                    if hi > lo {
                        (255.0 * (v - lo) / (hi - lo)).round().clamp(0.0, 255.0) as u8
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

/// Binary PGM: `P5\n<width> <height>\n255\n` followed by row-major bytes.
pub fn write_pgm_heatmap(g: &[Vec<u8>]) -> Vec<u8> {
    let height = g.len();
    let width = g.first().map_or(0, Vec::len);
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    for row in g {
        out.extend_from_slice(row);
    }
    out
}
