//! Pairwise distance matrices: parallel computation and CSV storage.
//!
//! CSV layout: the first row holds a label cell (`dH n=3` or `dS n=3`)
//! followed by the ids, every other row starts with an id. Values are
//! written with 9 digits after the decimal point and `\n` line ends, so the
//! output is byte-identical across platforms and thread counts.

use std::sync::atomic::{AtomicUsize, Ordering};

use latdist_core::{compute_voronoi_cell, ConvexPolyhedron, Metric, RotationGrid, SearchOptions};
use rayon::prelude::*;

use crate::{FormatError, LatticeRecord, Result};

/// Symmetric matrix of lattice distances with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    pub ids: Vec<String>,
    pub values: Vec<Vec<f64>>,
    /// `None` when read from a CSV without a recognized label cell.
    pub metric: Option<Metric>,
    pub grid_n: Option<u32>,
}

const SYMMETRY_TOL: f64 = 1e-9;

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    fn label(&self) -> String {
        let metric = match self.metric {
            Some(Metric::Hausdorff) => "dH",
            Some(Metric::Scale) => "dS",
            None => "id",
        };
        match self.grid_n {
            Some(n) if self.metric.is_some() => format!("{metric} n={n}"),
            _ => metric.to_string(),
        }
    }
}

pub fn metric_label(metric: Metric) -> &'static str {
    match metric {
        Metric::Hausdorff => "dH",
        Metric::Scale => "dS",
    }
}

fn parse_label(label: &str) -> (Option<Metric>, Option<u32>) {
    let mut parts = label.split_whitespace();
    let metric = match parts.next() {
        Some("dH") => Some(Metric::Hausdorff),
        Some("dS") => Some(Metric::Scale),
        _ => None,
    };
    let n = parts
        .next()
        .and_then(|p| p.strip_prefix("n="))
        .and_then(|n| n.parse().ok());
    (metric, n)
}

pub fn write_matrix_csv(m: &DistanceMatrix) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let mut header = vec![m.label()];
    header.extend(m.ids.iter().cloned());
    w.write_record(&header).expect("writing to memory");
    for (id, row) in m.ids.iter().zip(&m.values) {
        let mut rec = vec![id.clone()];
        rec.extend(row.iter().map(|v| format!("{v:.9}")));
        w.write_record(&rec).expect("writing to memory");
    }
    w.into_inner().expect("writing to memory")
}

pub fn read_matrix_csv(text: &[u8]) -> Result<DistanceMatrix> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text);
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| FormatError::Csv {
            line: e.position().map_or(i + 1, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        rows.push(rec);
    }
    let Some(header) = rows.first() else {
        return Err(FormatError::Csv {
            line: 1,
            message: "empty matrix file".into(),
        });
    };
    let ids: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let (metric, grid_n) = parse_label(header.get(0).unwrap_or(""));
    let n = ids.len();
    if rows.len() != n + 1 {
        return Err(FormatError::Csv {
            line: rows.len().min(n + 1) + 1,
            message: format!("expected {n} data rows, found {}", rows.len() - 1),
        });
    }

    let mut values = vec![vec![0.0; n]; n];
    for (i, rec) in rows.iter().enumerate().skip(1) {
        let line = i + 1;
        let bad = |message: String| FormatError::Csv { line, message };
        if rec.len() != n + 1 {
            return Err(bad(format!(
                "expected {} fields, found {}",
                n + 1,
                rec.len()
            )));
        }
        if rec[0] != ids[i - 1] {
            return Err(bad(format!(
                "row id {:?} does not match column id {:?}",
                &rec[0],
                ids[i - 1]
            )));
        }
        for j in 0..n {
            let cell = &rec[j + 1];
            let v: f64 = cell
                .trim()
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite() && *v >= 0.0)
                .ok_or_else(|| bad(format!("column {}: invalid distance {cell:?}", j + 2)))?;
            values[i - 1][j] = v;
        }
        if values[i - 1][i - 1] != 0.0 {
            return Err(bad(format!("nonzero diagonal entry for {:?}", ids[i - 1])));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i][j] - values[j][i]).abs() > SYMMETRY_TOL {
                return Err(FormatError::SymmetryViolation {
                    row: ids[i].clone(),
                    col: ids[j].clone(),
                });
            }
        }
    }
    Ok(DistanceMatrix {
        ids,
        values,
        metric,
        grid_n,
    })
}

/// A computed matrix together with bookkeeping about the run.
#[derive(Debug, Clone)]
pub struct MatrixRun {
    pub matrix: DistanceMatrix,
    pub cells_computed: usize,
    pub pairs_computed: usize,
}

/// Computes all `N(N-1)/2` pairwise distances on `threads` workers.
///
/// Each Voronoi cell is built once before the parallel phase. Results are
/// placed by pair index, so the matrix does not depend on `threads`.
/// `progress` is called with the number of finished pairs.
pub fn compute_matrix(
    records: &[LatticeRecord],
    metric: Metric,
    grid: &RotationGrid,
    opts: SearchOptions,
    threads: usize,
    progress: &(dyn Fn(usize, usize) + Sync),
) -> std::result::Result<MatrixRun, latdist_core::Error> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    pool.install(|| {
        let cells: Vec<ConvexPolyhedron> = records
            .par_iter()
            .map(|r| compute_voronoi_cell(&r.basis))
            .collect::<std::result::Result<_, _>>()?;

        let n = records.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let total = pairs.len();
        let done = AtomicUsize::new(0);
        let dists: Vec<f64> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let d = metric.between_cells(&cells[i], &cells[j], grid, opts).value;
                progress(done.fetch_add(1, Ordering::Relaxed) + 1, total);
                d
            })
            .collect();

        let mut values = vec![vec![0.0; n]; n];
        for (&(i, j), &d) in pairs.iter().zip(&dists) {
            values[i][j] = d;
            values[j][i] = d;
        }
        Ok(MatrixRun {
            matrix: DistanceMatrix {
                ids: records.iter().map(|r| r.id.clone()).collect(),
                values,
                metric: Some(metric),
                grid_n: Some(grid.resolution()),
            },
            cells_computed: cells.len(),
            pairs_computed: total,
        })
    })
}
