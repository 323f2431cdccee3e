//! Crystallographic inputs, distance matrices and rendering for
//! [`latdist_core`].
//!
//! Formats:
//! * a CIF subset reading only the six `_cell_*` tags,
//! * JSON arrays of `{"id", "basis"}` or `{"id", "cell"}` records,
//! * CSV distance matrices with ids in the first row and column,
//! * binary PGM (P5) grayscale heatmaps,
//! * Wavefront OBJ export of Voronoi cells.

pub mod cif;
mod error;
pub mod heatmap;
pub mod json;
pub mod matrix;
pub mod obj;
pub mod record;

pub use error::{FormatError, Result};
pub use heatmap::{scale_to_gray, write_pgm_heatmap, GrayMatrix};
pub use matrix::{compute_matrix, read_matrix_csv, write_matrix_csv, DistanceMatrix, MatrixRun};
pub use record::{load_records, LatticeRecord, RecordSource};
