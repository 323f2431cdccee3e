//! Voronoi cell of a lattice at the origin, built as an explicit convex
//! polyhedron by clipping a bounding box with bisector half-spaces.
//!
//! The cell is the set of points at least as close to the origin as to any
//! other lattice point. For a reduced basis the bisectors of the neighbor
//! shell of extent 3 suffice; every computed cell is certified by
//! [`validate_cell`] against a shell one step larger.

use alloc::vec;
use alloc::vec::Vec;

use crate::lattice::{
    neighbor_shell, reduce_basis, unit_cell_volume, LatticeBasis, DEFAULT_EXTENT,
};
use crate::math;
use crate::vec3::{triple_product, Vec3};
use crate::{Error, Result};

/// Relative tolerance (times the cell size) for plane membership, vertex
/// welding and central symmetry.
pub const PLANE_TOL: f64 = 1e-9;

/// `{p : p·normal ≤ offset}`, the bisector between the origin and `generator`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfSpace {
    pub normal: Vec3,
    pub offset: f64,
    pub generator: Vec3,
}

/// Supporting plane of a polyhedron face.
pub type FacePlane = HalfSpace;

impl HalfSpace {
    /// Bisector of the segment from the origin to the nonzero vector `q`.
    pub fn bisector(q: Vec3) -> Self {
        let len = q.norm();
        HalfSpace {
            normal: q / len,
            offset: len / 2.0,
            generator: q,
        }
    }

    #[inline]
    pub fn signed_distance(&self, p: Vec3) -> f64 {
        p.dot(self.normal) - self.offset
    }
}

/// Convex polyhedron containing the origin in its interior.
///
/// Faces are vertex-index cycles, counterclockwise seen from outside, and
/// `planes[i]` is the supporting plane of `faces[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolyhedron {
    vertices: Vec<Vec3>,
    faces: Vec<Vec<usize>>,
    planes: Vec<FacePlane>,
}

impl ConvexPolyhedron {
    /// Assembles a polyhedron from parts, without checking convexity.
    pub fn from_parts(vertices: Vec<Vec3>, faces: Vec<Vec<usize>>, planes: Vec<FacePlane>) -> Self {
        assert_eq!(faces.len(), planes.len(), "one plane per face");
        ConvexPolyhedron {
            vertices,
            faces,
            planes,
        }
    }

    /// Axis-aligned cube `[-h, h]^3`, the Voronoi cell of the cubic lattice
    /// with spacing `2h`.
    pub fn cube(half_width: f64) -> Self {
        let halfspaces: Vec<HalfSpace> = [Vec3::X, Vec3::Y, Vec3::Z]
            .iter()
            .flat_map(|&a| [a, -a])
            .map(|a| HalfSpace::bisector(a * (2.0 * half_width)))
            .collect();
        clip_box(&halfspaces, 2.0 * half_width, PLANE_TOL * half_width)
            .expect("cube is bounded by its own faces")
    }

    #[inline]
    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    #[inline]
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    #[inline]
    pub fn face_planes(&self) -> &[FacePlane] {
        &self.planes
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// `V - E + F`; equals 2 for every closed convex polyhedron.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Largest distance between two vertices.
    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max(a.distance(*b));
            }
        }
        d
    }

    /// Whether `-v` is a vertex (within `tol`) for every vertex `v`.
    pub fn is_centrally_symmetric(&self, tol: f64) -> bool {
        self.vertices
            .iter()
            .all(|v| self.vertices.iter().any(|w| w.distance(-*v) <= tol))
    }

    /// Whether `p` satisfies every face inequality up to `tol`.
    pub fn contains(&self, p: Vec3, tol: f64) -> bool {
        self.planes.iter().all(|h| h.signed_distance(p) <= tol)
    }

    /// Image under a linear isometry (a rotation or reflection).
    pub fn map_isometry(&self, f: impl Fn(Vec3) -> Vec3) -> Self {
        ConvexPolyhedron {
            vertices: self.vertices.iter().map(|&v| f(v)).collect(),
            faces: self.faces.clone(),
            planes: self
                .planes
                .iter()
                .map(|h| HalfSpace {
                    normal: f(h.normal),
                    offset: h.offset,
                    generator: f(h.generator),
                })
                .collect(),
        }
    }

    /// Homothetic copy `s·P` for `s > 0`.
    pub fn scaled(&self, s: f64) -> Self {
        ConvexPolyhedron {
            vertices: self.vertices.iter().map(|&v| v * s).collect(),
            faces: self.faces.clone(),
            planes: self
                .planes
                .iter()
                .map(|h| HalfSpace {
                    normal: h.normal,
                    offset: h.offset * s,
                    generator: h.generator * s,
                })
                .collect(),
        }
    }
}

/// Voronoi cell of the lattice at the origin.
///
/// Uses the extent-3 shell of the reduced basis and falls back to extent 4
/// if the result does not validate.
pub fn compute_voronoi_cell(basis: &LatticeBasis) -> Result<ConvexPolyhedron> {
    let reduced = reduce_basis(basis);
    for extent in [DEFAULT_EXTENT, DEFAULT_EXTENT + 1] {
        if let Ok(cell) = cell_from_basis_shell(&reduced, extent) {
            if validate_cell_with_extent(&cell, &reduced, extent + 1) {
                return Ok(cell);
            }
        }
    }
    Err(Error::CellValidationFailed {
        extent: DEFAULT_EXTENT + 1,
    })
}

/// Voronoi cell from the shell of the reduced basis at a fixed extent,
/// validated against the shell at `extent + 1` with no fallback.
pub fn compute_voronoi_cell_with_extent(
    basis: &LatticeBasis,
    extent: u32,
) -> Result<ConvexPolyhedron> {
    let reduced = reduce_basis(basis);
    let cell = cell_from_basis_shell(&reduced, extent)?;
    if validate_cell_with_extent(&cell, &reduced, extent + 1) {
        Ok(cell)
    } else {
        Err(Error::CellValidationFailed { extent })
    }
}

/// Intersection of the bisectors of `neighbor_shell(basis, extent)`, taken
/// as given: the basis is not reduced and the result is not validated.
///
/// Fails when the shell does not bound the cell.
pub fn cell_from_basis_shell(basis: &LatticeBasis, extent: u32) -> Result<ConvexPolyhedron> {
    // Every point lies within half a parallelepiped diagonal of a lattice
    // point, so the cell fits in a ball of radius (|u|+|v|+|w|)/2.
    let size: f64 = basis.vectors().iter().map(|v| v.norm()).sum();
    let mut halfspaces: Vec<HalfSpace> = neighbor_shell(basis, extent)
        .points
        .into_iter()
        .map(HalfSpace::bisector)
        .collect();
    halfspaces.sort_by(|a, b| a.offset.total_cmp(&b.offset));
    clip_box(&halfspaces, size, PLANE_TOL * size).ok_or(Error::CellValidationFailed { extent })
}

/// Certificate that `cell` is the Voronoi cell of the lattice of `basis`.
///
/// Checks that every face lies on the bisector of a lattice vector, that no
/// bisector from a shell one step larger than the default cuts a vertex, and
/// that the cell volume equals the unit cell volume.
pub fn validate_cell(cell: &ConvexPolyhedron, basis: &LatticeBasis) -> bool {
    validate_cell_with_extent(cell, &reduce_basis(basis), DEFAULT_EXTENT + 1)
}

fn validate_cell_with_extent(cell: &ConvexPolyhedron, reduced: &LatticeBasis, extent: u32) -> bool {
    if cell.vertices.is_empty() || cell.faces.len() < 4 {
        return false;
    }
    let size: f64 = reduced.vectors().iter().map(|v| v.norm()).sum();
    let tol = 1e-8 * size;

    let [u, v, w] = reduced.vectors();
    let det = triple_product(u, v, w);
    let is_lattice_vector = |q: Vec3| {
        // Cramer's rule for the integer coordinates of q.
        let coords = [
            triple_product(q, v, w) / det,
            triple_product(u, q, w) / det,
            triple_product(u, v, q) / det,
        ];
        coords
            .iter()
            .all(|c| (c - math::round_half_even(*c)).abs() < 1e-6)
    };

    for (face, plane) in cell.faces.iter().zip(&cell.planes) {
        let q = plane.generator;
        let len = q.norm();
        if len == 0.0 || !is_lattice_vector(q) {
            return false;
        }
        if (plane.offset - len / 2.0).abs() > tol || plane.normal.distance(q / len) > 1e-9 {
            return false;
        }
        if face
            .iter()
            .any(|&i| plane.signed_distance(cell.vertices[i]).abs() > tol)
        {
            return false;
        }
    }

    let shell = neighbor_shell(reduced, extent);
    for q in &shell.points {
        let h = HalfSpace::bisector(*q);
        if cell.vertices.iter().any(|&p| h.signed_distance(p) > tol) {
            return false;
        }
    }

    let expected = unit_cell_volume(reduced);
    (polyhedron_volume(cell) - expected).abs() <= 1e-6 * expected
}

/// Volume by signed tetrahedra from the origin over fan-triangulated faces.
pub fn polyhedron_volume(cell: &ConvexPolyhedron) -> f64 {
    mesh_volume(&cell.vertices, &cell.faces)
}

/// Enclosed volume of a closed mesh with outward (counterclockwise) faces.
pub fn mesh_volume(vertices: &[Vec3], faces: &[Vec<usize>]) -> f64 {
    let mut six_vol = 0.0;
    for face in faces {
        let a = vertices[face[0]];
        for k in 1..face.len().saturating_sub(1) {
            six_vol += triple_product(a, vertices[face[k]], vertices[face[k + 1]]);
        }
    }
    six_vol / 6.0
}

/// Distance from the origin to the nearest face plane.
pub fn inradius(cell: &ConvexPolyhedron) -> f64 {
    cell.planes
        .iter()
        .map(|h| h.offset)
        .fold(f64::INFINITY, f64::min)
}

struct Face {
    plane: HalfSpace,
    polygon: Vec<Vec3>,
    bounding: bool,
}

/// Clips the cube `[-half_width, half_width]^3` by each half-space in turn.
/// Returns `None` if a face of the box survives.
fn clip_box(halfspaces: &[HalfSpace], half_width: f64, tol: f64) -> Option<ConvexPolyhedron> {
    let h = half_width;
    let corner = |sx: f64, sy: f64, sz: f64| Vec3::new(sx * h, sy * h, sz * h);
    // Counterclockwise seen from outside.
    let box_faces: [(Vec3, [Vec3; 4]); 6] = [
        (
            Vec3::X,
            [
                corner(1., -1., -1.),
                corner(1., 1., -1.),
                corner(1., 1., 1.),
                corner(1., -1., 1.),
            ],
        ),
        (
            -Vec3::X,
            [
                corner(-1., -1., -1.),
                corner(-1., -1., 1.),
                corner(-1., 1., 1.),
                corner(-1., 1., -1.),
            ],
        ),
        (
            Vec3::Y,
            [
                corner(-1., 1., -1.),
                corner(-1., 1., 1.),
                corner(1., 1., 1.),
                corner(1., 1., -1.),
            ],
        ),
        (
            -Vec3::Y,
            [
                corner(-1., -1., -1.),
                corner(1., -1., -1.),
                corner(1., -1., 1.),
                corner(-1., -1., 1.),
            ],
        ),
        (
            Vec3::Z,
            [
                corner(-1., -1., 1.),
                corner(1., -1., 1.),
                corner(1., 1., 1.),
                corner(-1., 1., 1.),
            ],
        ),
        (
            -Vec3::Z,
            [
                corner(-1., -1., -1.),
                corner(-1., 1., -1.),
                corner(1., 1., -1.),
                corner(1., -1., -1.),
            ],
        ),
    ];
    let mut faces: Vec<Face> = box_faces
        .iter()
        .map(|(n, poly)| Face {
            plane: HalfSpace {
                normal: *n,
                offset: h,
                generator: *n * (2.0 * h),
            },
            polygon: poly.to_vec(),
            bounding: true,
        })
        .collect();

    for hs in halfspaces {
        clip(&mut faces, hs, tol);
    }

    if faces.iter().any(|f| f.bounding) {
        return None;
    }
    Some(finalize(faces, tol))
}

fn clip(faces: &mut Vec<Face>, hs: &HalfSpace, tol: f64) {
    let cuts = faces
        .iter()
        .flat_map(|f| f.polygon.iter())
        .any(|&p| hs.signed_distance(p) > tol);
    if !cuts {
        return;
    }

    let mut cap: Vec<Vec3> = Vec::new();
    for face in faces.iter_mut() {
        let n = face.polygon.len();
        let dist: Vec<f64> = face
            .polygon
            .iter()
            .map(|&p| hs.signed_distance(p))
            .collect();
        let mut kept = Vec::with_capacity(n + 1);
        for i in 0..n {
            let (a, da) = (face.polygon[i], dist[i]);
            let (b, db) = (face.polygon[(i + 1) % n], dist[(i + 1) % n]);
            if da <= tol {
                kept.push(a);
                if da.abs() <= tol {
                    cap.push(a);
                }
            }
            if (da < -tol && db > tol) || (da > tol && db < -tol) {
                let x = a + (b - a) * (da / (da - db));
                kept.push(x);
                cap.push(x);
            }
        }
        face.polygon = kept;
    }
    faces.retain(|f| f.polygon.len() >= 3);

    let mut unique: Vec<Vec3> = Vec::with_capacity(cap.len());
    for p in cap {
        if !unique.iter().any(|q| q.distance(p) <= tol) {
            unique.push(p);
        }
    }
    if unique.len() >= 3 {
        faces.push(Face {
            plane: *hs,
            polygon: sort_around(unique, hs.normal),
            bounding: false,
        });
    }
}

/// Orders coplanar points of a convex polygon counterclockwise about `normal`.
fn sort_around(points: Vec<Vec3>, normal: Vec3) -> Vec<Vec3> {
    let centroid = points.iter().fold(Vec3::ZERO, |acc, &p| acc + p) / points.len() as f64;
    let e1 = normal.any_orthonormal();
    let e2 = normal.cross(e1);
    let mut keyed: Vec<(f64, Vec3)> = points
        .into_iter()
        .map(|p| {
            let d = p - centroid;
            (math::atan2(d.dot(e2), d.dot(e1)), p)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    keyed.into_iter().map(|(_, p)| p).collect()
}

/// Welds shared vertices, drops collinear polygon points and degenerate faces.
fn finalize(faces: Vec<Face>, tol: f64) -> ConvexPolyhedron {
    let mut vertices: Vec<Vec3> = Vec::new();
    let index_of = |p: Vec3, vertices: &mut Vec<Vec3>| -> usize {
        match vertices.iter().position(|q| q.distance(p) <= tol) {
            Some(i) => i,
            None => {
                vertices.push(p);
                vertices.len() - 1
            }
        }
    };

    let mut cycles: Vec<(Vec<usize>, HalfSpace)> = Vec::with_capacity(faces.len());
    for face in faces {
        let mut cycle: Vec<usize> = Vec::with_capacity(face.polygon.len());
        for p in face.polygon {
            let i = index_of(p, &mut vertices);
            if cycle.last() != Some(&i) {
                cycle.push(i);
            }
        }
        while cycle.len() > 1 && cycle.first() == cycle.last() {
            cycle.pop();
        }
        cycles.push((cycle, face.plane));
    }

    // A point in the middle of a polyhedron edge shows up in the two adjacent
    // faces; it is not a vertex.
    for (cycle, _) in cycles.iter_mut() {
        loop {
            let n = cycle.len();
            if n < 3 {
                break;
            }
            let redundant = (0..n).find(|&i| {
                let prev = vertices[cycle[(i + n - 1) % n]];
                let cur = vertices[cycle[i]];
                let next = vertices[cycle[(i + 1) % n]];
                let span = (next - prev).norm();
                span == 0.0 || (cur - prev).cross(next - prev).norm() / span <= tol
            });
            match redundant {
                Some(i) => {
                    cycle.remove(i);
                }
                None => break,
            }
        }
    }
    cycles.retain(|(c, _)| c.len() >= 3);

    let mut remap = vec![usize::MAX; vertices.len()];
    let mut used: Vec<Vec3> = Vec::new();
    let mut out_faces = Vec::with_capacity(cycles.len());
    let mut planes = Vec::with_capacity(cycles.len());
    for (cycle, plane) in cycles {
        let mut face: Vec<usize> = cycle
            .into_iter()
            .map(|i| {
                if remap[i] == usize::MAX {
                    remap[i] = used.len();
                    used.push(vertices[i]);
                }
                remap[i]
            })
            .collect();
        if newell_normal(&used, &face).dot(plane.normal) < 0.0 {
            face.reverse();
        }
        out_faces.push(face);
        planes.push(plane);
    }

    ConvexPolyhedron {
        vertices: used,
        faces: out_faces,
        planes,
    }
}

fn newell_normal(vertices: &[Vec3], face: &[usize]) -> Vec3 {
    let n = face.len();
    (0..n).fold(Vec3::ZERO, |acc, i| {
        acc + vertices[face[i]].cross(vertices[face[(i + 1) % n]])
    })
}
