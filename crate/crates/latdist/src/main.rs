use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use latdist::matrix::metric_label;
use latdist::obj::export_cell_obj;
use latdist::{
    compute_matrix, load_records, read_matrix_csv, scale_to_gray, write_matrix_csv,
    write_pgm_heatmap,
};
use latdist_core::{
    compute_voronoi_cell, compute_voronoi_cell_with_extent, inradius, polyhedron_volume,
    sample_rotations, validate_cell, Metric, OffsetMode, RotationSample, SearchOptions,
};

/// Distances between 3D lattices via their Voronoi cells.
#[derive(Parser)]
#[command(name = "latdist", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    /// Extended Hausdorff distance
    Dh,
    /// Scale-invariant distance
    Ds,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Dh => Metric::Hausdorff,
            MetricArg::Ds => Metric::Scale,
        }
    }
}

#[derive(clap::Args)]
struct SearchArgs {
    #[arg(long, value_enum, env = "LATDIST_METRIC", default_value = "dh")]
    metric: MetricArg,
    /// Rotation grid resolution
    #[arg(long, env = "LATDIST_N", default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    /// Refine the best grid rotation by local search
    #[arg(long)]
    refine: bool,
    /// Measure offsets against the face crossed by the origin segment
    #[arg(long)]
    segment_face: bool,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            refine: self.refine,
            offset_mode: if self.segment_face {
                OffsetMode::SegmentFace
            } else {
                OffsetMode::Exact
            },
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print Voronoi cell statistics for every lattice in the input
    Cell {
        input: PathBuf,
        /// Neighbor shell extent (default: automatic)
        #[arg(long, env = "LATDIST_EXTENT")]
        extent: Option<u32>,
        /// Write each cell as Wavefront OBJ into this directory
        #[arg(long)]
        obj: Option<PathBuf>,
    },
    /// Distance between two lattices
    Dist {
        input: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        /// Ids of the two lattices (optional when the input holds exactly two)
        #[arg(long, num_args = 2, value_names = ["ID1", "ID2"])]
        pair: Option<Vec<String>>,
    },
    /// Pairwise distance matrix as CSV
    Matrix {
        input: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        /// Worker threads (0: all cores)
        #[arg(long, env = "LATDIST_THREADS", default_value_t = 0)]
        threads: usize,
        /// Output CSV (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a PGM heatmap
        #[arg(long)]
        heatmap: Option<PathBuf>,
    },
    /// Render a CSV distance matrix as a PGM heatmap
    Heatmap { csv: PathBuf, out: PathBuf },
}

/// Input problems exit with 2, computation failures with 1.
enum Failure {
    Input(String),
    Compute(String),
}

impl From<latdist::FormatError> for Failure {
    fn from(e: latdist::FormatError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<latdist_core::Error> for Failure {
    fn from(e: latdist_core::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> Failure + '_ {
    move |e| Failure::Input(format!("{}: {e}", path.display()))
}

fn describe(r: &RotationSample) -> String {
    format!(
        "axis=({:.6}, {:.6}, {:.6}) angle={:.4}deg",
        r.axis.x,
        r.axis.y,
        r.axis.z,
        r.angle_degrees()
    )
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Cell { input, extent, obj } => {
            let records = load_records(&input)?;
            if let Some(dir) = &obj {
                fs::create_dir_all(dir).map_err(io_err(dir))?;
            }
            let mut out = std::io::stdout().lock();
            for r in &records {
                let cell = match extent {
                    Some(e) => {
                        let c = compute_voronoi_cell_with_extent(&r.basis, e)?;
                        if !validate_cell(&c, &r.basis) {
                            return Err(Failure::Compute(format!(
                                "{}: cell from extent {e} failed validation",
                                r.id
                            )));
                        }
                        c
                    }
                    None => compute_voronoi_cell(&r.basis)?,
                };
                let _ = writeln!(
                    out,
                    "{}: vertices={} faces={} volume={:.6} inradius={:.6}",
                    r.id,
                    cell.vertex_count(),
                    cell.face_count(),
                    polyhedron_volume(&cell),
                    inradius(&cell)
                );
                if let Some(dir) = &obj {
                    let path = dir.join(format!("{}.obj", r.id));
                    fs::write(&path, export_cell_obj(&cell)).map_err(io_err(&path))?;
                }
            }
        }
        Command::Dist {
            input,
            search,
            pair,
        } => {
            let records = load_records(&input)?;
            let (a, b) = match &pair {
                Some(ids) => {
                    let find = |id: &String| {
                        records
                            .iter()
                            .find(|r| &r.id == id)
                            .ok_or_else(|| Failure::Input(format!("no lattice with id {id:?}")))
                    };
                    (find(&ids[0])?, find(&ids[1])?)
                }
                None if records.len() == 2 => (&records[0], &records[1]),
                None => {
                    return Err(Failure::Input(format!(
                        "input holds {} lattices; select two with --pair",
                        records.len()
                    )))
                }
            };
            let grid = sample_rotations(search.n)?;
            let p = compute_voronoi_cell(&a.basis)?;
            let q = compute_voronoi_cell(&b.basis)?;
            let metric = Metric::from(search.metric);
            let res = metric.between_cells(&p, &q, &grid, search.options());
            println!("{} {} {} n={}", metric_label(metric), a.id, b.id, search.n);
            println!("distance={:.9}", res.value);
            println!(
                "forward={:.9} {}",
                res.forward_term,
                describe(&res.best_rotation_forward)
            );
            println!(
                "backward={:.9} {}",
                res.backward_term,
                describe(&res.best_rotation_backward)
            );
        }
        Command::Matrix {
            input,
            search,
            threads,
            out,
            heatmap,
        } => {
            let records = load_records(&input)?;
            let grid = sample_rotations(search.n)?;
            let run = compute_matrix(
                &records,
                search.metric.into(),
                &grid,
                search.options(),
                threads,
                &|_, _| {},
            )?;
            eprintln!(
                "computed {} pairs from {} cells on a grid of {} rotations",
                run.pairs_computed,
                run.cells_computed,
                grid.len()
            );
            let csv = write_matrix_csv(&run.matrix);
            match &out {
                Some(path) => fs::write(path, &csv).map_err(io_err(path))?,
                None => {
                    let _ = std::io::stdout().write_all(&csv);
                }
            }
            if let Some(path) = &heatmap {
                let pgm = write_pgm_heatmap(&scale_to_gray(&run.matrix));
                fs::write(path, pgm).map_err(io_err(path))?;
            }
        }
        Command::Heatmap { csv, out } => {
            let text = fs::read(&csv).map_err(io_err(&csv))?;
            let m = read_matrix_csv(&text)?;
            fs::write(&out, write_pgm_heatmap(&scale_to_gray(&m))).map_err(io_err(&out))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
