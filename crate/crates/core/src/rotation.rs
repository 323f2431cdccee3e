//! Sampled minimization over rotations and the two lattice distances.
//!
//! Rotations are parametrized by an axis in the upper hemisphere,
//! `(√(1−z²)·cos μ, √(1−z²)·sin μ, z)`, and an angle `θ ∈ [0, 2π)`. A grid of
//! resolution `n` takes `n` midpoint samples of `z ∈ (0, 1)` and `⌈2πn⌉`
//! uniform samples of each of `μ` and `θ`, plus the identity rotation.
//!
//! Minima over a grid are upper bounds of the exact minima over SO(3), so the
//! sampled distances can exceed the exact ones by the sampling error of the
//! grid. Metric identities that hold exactly (identity, symmetry, scaling)
//! also hold exactly for the sampled values; the triangle inequality holds up
//! to twice the sampling error.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::lattice::LatticeBasis;
use crate::math;
use crate::metrics::{offset_of_points_bounded, scale_of_points_bounded, OffsetMode};
use crate::vec3::Vec3;
use crate::voronoi::{compute_voronoi_cell, ConvexPolyhedron};
use crate::{Error, Result};

/// Rotation by `angle` radians about the unit `axis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationSample {
    pub axis: Vec3,
    pub angle: f64,
}

impl RotationSample {
    pub const IDENTITY: RotationSample = RotationSample {
        axis: Vec3::Z,
        angle: 0.0,
    };

    /// Axis from the height `z` and azimuth `mu` on the upper hemisphere.
    pub fn from_params(z: f64, mu: f64, angle: f64) -> Self {
        let z = z.clamp(0.0, 1.0);
        let r = math::sqrt(1.0 - z * z);
        RotationSample {
            axis: Vec3::new(r * math::cos(mu), r * math::sin(mu), z),
            angle,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.angle == 0.0
    }

    pub fn angle_degrees(&self) -> f64 {
        self.angle.to_degrees()
    }

    pub fn apply(&self, u: Vec3) -> Vec3 {
        rodrigues_rotate(u, self.axis, self.angle)
    }

    pub fn matrix(&self) -> Mat3 {
        Mat3 {
            cols: [
                self.apply(Vec3::X),
                self.apply(Vec3::Y),
                self.apply(Vec3::Z),
            ],
        }
    }

    fn params(&self) -> (f64, f64, f64) {
        (
            self.axis.z,
            math::atan2(self.axis.y, self.axis.x),
            self.angle,
        )
    }
}

/// 3×3 matrix stored by columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3 {
    pub cols: [Vec3; 3],
}

impl Mat3 {
    #[inline]
    pub fn apply(&self, v: Vec3) -> Vec3 {
        self.cols[0] * v.x + self.cols[1] * v.y + self.cols[2] * v.z
    }
}

/// Rodrigues' rotation of `u` about the unit `axis` by `theta` radians:
/// `u cos θ + (a × u) sin θ + a (a·u)(1 − cos θ)`.
pub fn rodrigues_rotate(u: Vec3, axis: Vec3, theta: f64) -> Vec3 {
    let (s, c) = (math::sin(theta), math::cos(theta));
    u * c + axis.cross(u) * s + axis * (axis.dot(u) * (1.0 - c))
}

/// Finite sample of SO(3) in deterministic order: `z`-major, then `μ`, then
/// `θ`, with the identity last.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationGrid {
    n: u32,
    angle_samples: u32,
    samples: Vec<RotationSample>,
    matrices: Vec<Mat3>,
}

impl RotationGrid {
    pub fn resolution(&self) -> u32 {
        self.n
    }

    /// Number of samples of each of `μ` and `θ`, `⌈2πn⌉`.
    pub fn angle_samples(&self) -> u32 {
        self.angle_samples
    }

    pub fn samples(&self) -> &[RotationSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Builds the rotation grid of resolution `n ≥ 1`, containing
/// `n·⌈2πn⌉² + 1` rotations.
pub fn sample_rotations(n: u32) -> Result<RotationGrid> {
    if n == 0 {
        return Err(Error::InvalidGrid);
    }
    let m = math::ceil(TAU * n as f64) as u32;
    let mut samples = Vec::with_capacity((n * m * m + 1) as usize);
    for k in 0..n {
        let z = (k as f64 + 0.5) / n as f64;
        for j in 0..m {
            let mu = TAU * j as f64 / m as f64;
            for l in 0..m {
                let theta = TAU * l as f64 / m as f64;
                samples.push(RotationSample::from_params(z, mu, theta));
            }
        }
    }
    samples.push(RotationSample::IDENTITY);
    let matrices = samples.iter().map(RotationSample::matrix).collect();
    Ok(RotationGrid {
        n,
        angle_samples: m,
        samples,
        matrices,
    })
}

/// Options for the rotation search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchOptions {
    /// Coordinate descent on `(z, μ, θ)` around the grid minimum, three
    /// halving steps starting from half the grid spacing.
    pub refine: bool,
    pub offset_mode: OffsetMode,
}

/// Result of a lattice distance computation.
///
/// For the Hausdorff distance the directional terms are offsets and
/// `value = max(forward, backward)`; for the scale-invariant distance they
/// are scale factors and `value = ln(max(forward, backward))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeDistanceResult {
    pub value: f64,
    pub forward_term: f64,
    pub backward_term: f64,
    pub best_rotation_forward: RotationSample,
    pub best_rotation_backward: RotationSample,
}

/// The two lattice distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    /// Extended Hausdorff distance, in length units.
    Hausdorff,
    /// Scale-invariant distance, dimensionless.
    Scale,
}

impl Metric {
    /// Distance between two lattices given by their Voronoi cells.
    pub fn between_cells(
        self,
        p: &ConvexPolyhedron,
        q: &ConvexPolyhedron,
        grid: &RotationGrid,
        opts: SearchOptions,
    ) -> LatticeDistanceResult {
        match self {
            Metric::Hausdorff => hausdorff_between_cells(p, q, grid, opts),
            Metric::Scale => scale_between_cells(p, q, grid, opts),
        }
    }
}

/// Minimizes `eval` over the grid (first minimum wins), then optionally refines.
fn minimize<F>(grid: &RotationGrid, opts: SearchOptions, mut eval: F) -> (f64, RotationSample)
where
    F: FnMut(&Mat3, f64) -> f64,
{
    let mut best = f64::INFINITY;
    let mut best_idx = 0;
    for (i, m) in grid.matrices.iter().enumerate() {
        let v = eval(m, best);
        if v < best {
            best = v;
            best_idx = i;
            if best == 0.0 {
                break;
            }
        }
    }
    let start = grid.samples[best_idx];
    if opts.refine && best > 0.0 {
        refine(grid, start, best, &mut eval)
    } else {
        (best, start)
    }
}

fn refine<F>(
    grid: &RotationGrid,
    start: RotationSample,
    start_value: f64,
    eval: &mut F,
) -> (f64, RotationSample)
where
    F: FnMut(&Mat3, f64) -> f64,
{
    let (mut z, mut mu, mut theta) = start.params();
    let mut best = start_value;
    let mut best_rot = start;
    let mut steps = [
        1.0 / grid.n as f64,
        TAU / grid.angle_samples as f64,
        TAU / grid.angle_samples as f64,
    ];
    for _ in 0..3 {
        for s in steps.iter_mut() {
            *s /= 2.0;
        }
        for coord in 0..3 {
            for dir in [1.0, -1.0] {
                let mut params = [z, mu, theta];
                params[coord] += dir * steps[coord];
                params[0] = params[0].clamp(0.0, 1.0);
                let rot = RotationSample::from_params(params[0], params[1], params[2]);
                let v = eval(&rot.matrix(), best);
                if v < best {
                    best = v;
                    best_rot = rot;
                    (z, mu, theta) = (params[0], params[1], params[2]);
                }
            }
        }
    }
    (best, best_rot)
}

/// Smallest offset of a rotated `p` into `q` over the grid, with the
/// minimizing rotation.
pub fn offset_min(
    p: &ConvexPolyhedron,
    q: &ConvexPolyhedron,
    grid: &RotationGrid,
) -> (f64, RotationSample) {
    offset_min_with(p, q, grid, SearchOptions::default())
}

pub fn offset_min_with(
    p: &ConvexPolyhedron,
    q: &ConvexPolyhedron,
    grid: &RotationGrid,
    opts: SearchOptions,
) -> (f64, RotationSample) {
    let mut pts: Vec<Vec3> = p.vertices().to_vec();
    minimize(grid, opts, |m, bound| {
        for (dst, &src) in pts.iter_mut().zip(p.vertices()) {
            *dst = m.apply(src);
        }
        offset_of_points_bounded(&pts, q, opts.offset_mode, bound, &mut 0)
    })
}

/// Smallest scale factor `s` with a rotated `p` inside `s·q`, over the grid.
pub fn scale_min(
    p: &ConvexPolyhedron,
    q: &ConvexPolyhedron,
    grid: &RotationGrid,
) -> (f64, RotationSample) {
    scale_min_with(p, q, grid, SearchOptions::default())
}

pub fn scale_min_with(
    p: &ConvexPolyhedron,
    q: &ConvexPolyhedron,
    grid: &RotationGrid,
    opts: SearchOptions,
) -> (f64, RotationSample) {
    let mut pts: Vec<Vec3> = p.vertices().to_vec();
    minimize(grid, opts, |m, bound| {
        for (dst, &src) in pts.iter_mut().zip(p.vertices()) {
            *dst = m.apply(src);
        }
        scale_of_points_bounded(&pts, q, bound, &mut 0)
    })
}

fn hausdorff_between_cells(
    p: &ConvexPolyhedron,
    q: &ConvexPolyhedron,
    grid: &RotationGrid,
    opts: SearchOptions,
) -> LatticeDistanceResult {
    let (fwd, rf) = offset_min_with(p, q, grid, opts);
    let (bwd, rb) = offset_min_with(q, p, grid, opts);
    LatticeDistanceResult {
        value: fwd.max(bwd),
        forward_term: fwd,
        backward_term: bwd,
        best_rotation_forward: rf,
        best_rotation_backward: rb,
    }
}

fn scale_between_cells(
    p: &ConvexPolyhedron,
    q: &ConvexPolyhedron,
    grid: &RotationGrid,
    opts: SearchOptions,
) -> LatticeDistanceResult {
    let (fwd, rf) = scale_min_with(p, q, grid, opts);
    let (bwd, rb) = scale_min_with(q, p, grid, opts);
    LatticeDistanceResult {
        value: math::ln(fwd.max(bwd)),
        forward_term: fwd,
        backward_term: bwd,
        best_rotation_forward: rf,
        best_rotation_backward: rb,
    }
}

/// Extended Hausdorff distance between two lattices.
pub fn extended_hausdorff(
    l: &LatticeBasis,
    m: &LatticeBasis,
    grid: &RotationGrid,
) -> Result<LatticeDistanceResult> {
    extended_hausdorff_with(l, m, grid, SearchOptions::default())
}

pub fn extended_hausdorff_with(
    l: &LatticeBasis,
    m: &LatticeBasis,
    grid: &RotationGrid,
    opts: SearchOptions,
) -> Result<LatticeDistanceResult> {
    let (p, q) = (compute_voronoi_cell(l)?, compute_voronoi_cell(m)?);
    Ok(hausdorff_between_cells(&p, &q, grid, opts))
}

/// Scale-invariant distance between two lattices (natural logarithm).
pub fn scale_distance(
    l: &LatticeBasis,
    m: &LatticeBasis,
    grid: &RotationGrid,
) -> Result<LatticeDistanceResult> {
    scale_distance_with(l, m, grid, SearchOptions::default())
}

pub fn scale_distance_with(
    l: &LatticeBasis,
    m: &LatticeBasis,
    grid: &RotationGrid,
    opts: SearchOptions,
) -> Result<LatticeDistanceResult> {
    let (p, q) = (compute_voronoi_cell(l)?, compute_voronoi_cell(m)?);
    Ok(scale_between_cells(&p, &q, grid, opts))
}
