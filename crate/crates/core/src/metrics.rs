//! Rotation-free comparisons of two origin-centered convex polyhedra.
//!
//! Every routine loops over the vertices of the first polyhedron and the
//! faces of the second, so the cost is `O(#vertices(P) · #faces(Q))`. The
//! `*_counted` variants report how many vertex/face evaluations were made.

use crate::vec3::Vec3;
use crate::voronoi::{ConvexPolyhedron, PLANE_TOL};

/// How the offset of a vertex outside the target polyhedron is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OffsetMode {
    /// Exact Euclidean distance to the polyhedron (faces, edges, vertices).
    #[default]
    Exact,
    /// Distance to the plane of the face crossed by the segment from the
    /// origin to the vertex. Never larger than the exact distance; kept for
    /// comparison studies.
    SegmentFace,
}

/// Scale factors within this distance of 1 are reported as exactly 1.
const UNIT_SCALE_SNAP: f64 = 1e-12;

#[inline]
fn containment_tol(q: &ConvexPolyhedron) -> f64 {
    let size = q.face_planes().iter().map(|h| h.offset).fold(0.0, f64::max);
    PLANE_TOL * size
}

/// Euclidean distance from `p` to `poly`; zero for points inside.
pub fn point_to_polyhedron_distance(p: Vec3, poly: &ConvexPolyhedron) -> f64 {
    distance_to(p, poly, containment_tol(poly), &mut 0)
}

fn distance_to(p: Vec3, poly: &ConvexPolyhedron, tol: f64, count: &mut u64) -> f64 {
    let mut best = f64::INFINITY;
    let mut outside = false;
    for (face, plane) in poly.faces().iter().zip(poly.face_planes()) {
        *count += 1;
        let d = plane.signed_distance(p);
        if d <= tol {
            continue;
        }
        // The nearest boundary point always lies on a face whose plane
        // separates p from the polyhedron.
        outside = true;
        best = best.min(distance_to_face(p, d, plane.normal, face, poly.vertices()));
    }
    if outside {
        best
    } else {
        0.0
    }
}

fn distance_to_face(p: Vec3, plane_dist: f64, normal: Vec3, face: &[usize], vs: &[Vec3]) -> f64 {
    let proj = p - normal * plane_dist;
    let n = face.len();
    let inside = (0..n).all(|i| {
        let a = vs[face[i]];
        let b = vs[face[(i + 1) % n]];
        (b - a).cross(proj - a).dot(normal) >= 0.0
    });
    if inside {
        return plane_dist;
    }
    (0..n)
        .map(|i| point_segment_distance(p, vs[face[i]], vs[face[(i + 1) % n]]))
        .fold(f64::INFINITY, f64::min)
}

fn point_segment_distance(p: Vec3, a: Vec3, b: Vec3) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    let t = if len2 > 0.0 {
        ((p - a).dot(ab) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    p.distance(a + ab * t)
}

/// Minimal `r` such that `P` lies in the `r`-neighborhood of `Q`.
///
/// The distance to a convex set is a convex function, so the maximum over
/// `P` is attained at a vertex.
pub fn offset_static(p: &ConvexPolyhedron, q: &ConvexPolyhedron) -> f64 {
    offset_of_points(p.vertices(), q, OffsetMode::Exact, &mut 0)
}

pub fn offset_static_with_mode(
    p: &ConvexPolyhedron,
    q: &ConvexPolyhedron,
    mode: OffsetMode,
) -> f64 {
    offset_of_points(p.vertices(), q, mode, &mut 0)
}

/// [`offset_static`] together with the number of vertex/face evaluations.
pub fn offset_static_counted(p: &ConvexPolyhedron, q: &ConvexPolyhedron) -> (f64, u64) {
    let mut count = 0;
    let r = offset_of_points(p.vertices(), q, OffsetMode::Exact, &mut count);
    (r, count)
}

pub(crate) fn offset_of_points(
    points: &[Vec3],
    q: &ConvexPolyhedron,
    mode: OffsetMode,
    count: &mut u64,
) -> f64 {
    offset_of_points_bounded(points, q, mode, f64::INFINITY, count)
}

/// Stops early once the running maximum reaches `bound`; the returned value
/// is then only known to be `>= bound`.
pub(crate) fn offset_of_points_bounded(
    points: &[Vec3],
    q: &ConvexPolyhedron,
    mode: OffsetMode,
    bound: f64,
    count: &mut u64,
) -> f64 {
    let tol = containment_tol(q);
    let mut r: f64 = 0.0;
    for &v in points {
        let d = match mode {
            OffsetMode::Exact => distance_to(v, q, tol, count),
            OffsetMode::SegmentFace => segment_face_distance(v, q, tol, count),
        };
        r = r.max(d);
        if r >= bound {
            break;
        }
    }
    r
}

fn segment_face_distance(v: Vec3, q: &ConvexPolyhedron, tol: f64, count: &mut u64) -> f64 {
    // The segment [0, v] leaves Q through the face with the largest gauge ratio.
    let mut best_ratio = f64::NEG_INFINITY;
    let mut dist = 0.0;
    for plane in q.face_planes() {
        *count += 1;
        let ratio = v.dot(plane.normal) / plane.offset;
        if ratio > best_ratio {
            best_ratio = ratio;
            dist = plane.signed_distance(v);
        }
    }
    if dist > tol {
        dist
    } else {
        0.0
    }
}

/// Minimal `s > 0` with `P ⊆ s·Q`: the largest ratio `|v| / |x_v|` over
/// vertices `v` of `P`, where `x_v` is where the ray through `v` leaves `Q`.
pub fn scale_static(p: &ConvexPolyhedron, q: &ConvexPolyhedron) -> f64 {
    scale_of_points(p.vertices(), q, &mut 0)
}

/// [`scale_static`] together with the number of vertex/face evaluations.
pub fn scale_static_counted(p: &ConvexPolyhedron, q: &ConvexPolyhedron) -> (f64, u64) {
    let mut count = 0;
    let s = scale_of_points(p.vertices(), q, &mut count);
    (s, count)
}

pub(crate) fn scale_of_points(points: &[Vec3], q: &ConvexPolyhedron, count: &mut u64) -> f64 {
    scale_of_points_bounded(points, q, f64::INFINITY, count)
}

pub(crate) fn scale_of_points_bounded(
    points: &[Vec3],
    q: &ConvexPolyhedron,
    bound: f64,
    count: &mut u64,
) -> f64 {
    let mut s: f64 = 0.0;
    for &v in points {
        // Gauge of Q at v: the ray t·v exits Q at t = 1/max_f(v·n_f / h_f).
        for plane in q.face_planes() {
            *count += 1;
            s = s.max(v.dot(plane.normal) / plane.offset);
        }
        if s >= bound {
            return s;
        }
    }
    if (s - 1.0).abs() <= UNIT_SCALE_SNAP {
        1.0
    } else {
        s
    }
}

/// Hausdorff distance between two origin-centered convex polyhedra.
pub fn hausdorff_static(p: &ConvexPolyhedron, q: &ConvexPolyhedron) -> f64 {
    offset_static(p, q).max(offset_static(q, p))
}
