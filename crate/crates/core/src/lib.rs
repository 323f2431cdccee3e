//! Lattice similarity distances built from Voronoi cells.
//!
//! A lattice is compared through the Voronoi cell of its origin. Two
//! distances are provided, both invariant under rotations and under the
//! choice of basis:
//!
//! * the extended Hausdorff distance [`extended_hausdorff`], measured in the
//!   length units of the input bases, and
//! * the scale-invariant distance [`scale_distance`], dimensionless.
//!
//! Both minimize over a finite sample of rotations ([`RotationGrid`]), so
//! computed values overestimate the exact distances by at most the sampling
//! error of the grid. In particular the triangle inequality holds for the
//! sampled values only up to that error.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled. All math goes through `libm`, so results are bit-identical
//! across platforms.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod error;
pub mod lattice;
mod math;
pub mod metrics;
pub mod rotation;
pub mod vec3;
pub mod voronoi;

pub use error::Error;
pub use lattice::{
    basis_from_cell_parameters, neighbor_shell, reduce_basis, unit_cell_volume, CellParameters,
    LatticeBasis, NeighborSet, DEFAULT_EXTENT,
};
pub use metrics::{
    hausdorff_static, offset_static, offset_static_with_mode, point_to_polyhedron_distance,
    scale_static, OffsetMode,
};
pub use rotation::{
    extended_hausdorff, extended_hausdorff_with, offset_min, offset_min_with, rodrigues_rotate,
    sample_rotations, scale_distance, scale_distance_with, scale_min, scale_min_with,
    LatticeDistanceResult, Metric, RotationGrid, RotationSample, SearchOptions,
};
pub use vec3::Vec3;
pub use voronoi::{
    cell_from_basis_shell, compute_voronoi_cell, compute_voronoi_cell_with_extent, inradius,
    mesh_volume, polyhedron_volume, validate_cell, ConvexPolyhedron, FacePlane, HalfSpace,
};

pub type Result<T> = core::result::Result<T, Error>;
