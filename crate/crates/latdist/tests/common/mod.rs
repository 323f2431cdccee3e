#![allow(dead_code)]

use latdist_core::{ConvexPolyhedron, LatticeBasis, Vec3};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cubic() -> LatticeBasis {
    LatticeBasis::cubic(1.0)
}

pub fn bcc() -> LatticeBasis {
    LatticeBasis::from_rows([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.5, 0.5, 0.5]]).unwrap()
}

pub fn fcc() -> LatticeBasis {
    LatticeBasis::from_rows([[1.0, 0.0, 0.0], [0.5, 0.5, 0.0], [0.5, 0.0, 0.5]]).unwrap()
}

/// Entries uniform in [-2, 2], rejected while |det| < 0.1.
pub fn random_basis(rng: &mut impl Rng) -> LatticeBasis {
    loop {
        let mut rows = [[0.0; 3]; 3];
        for row in rows.iter_mut() {
            for x in row.iter_mut() {
                *x = rng.gen_range(-2.0..2.0);
            }
        }
        if let Ok(b) = LatticeBasis::from_rows(rows) {
            if b.determinant().abs() >= 0.1 {
                return b;
            }
        }
    }
}

/// Product of random elementary integer operations; determinant ±1.
pub fn random_unimodular(rng: &mut impl Rng, steps: usize) -> [[i64; 3]; 3] {
    let mut m = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..steps {
        let i = rng.gen_range(0..3);
        let mut j = rng.gen_range(0..3);
        while j == i {
            j = rng.gen_range(0..3);
        }
        let k: i64 = rng.gen_range(-2..=2);
        for c in 0..3 {
            m[i][c] += k * m[j][c];
        }
    }
    m
}

pub fn det3(m: [[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Rotation matrix about a unit axis, built independently of the library
/// (explicit axis-angle matrix entries).
pub fn rotation_matrix(axis: Vec3, angle: f64) -> [[f64; 3]; 3] {
    let (x, y, z) = (axis.x, axis.y, axis.z);
    let (s, c) = angle.sin_cos();
    let t = 1.0 - c;
    [
        [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
        [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
        [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
    ]
}

pub fn apply(m: &[[f64; 3]; 3], v: Vec3) -> Vec3 {
    Vec3::new(
        m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
        m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
        m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
    )
}

/// Vertices of `p` followed by `n` points uniform on its boundary (faces
/// chosen by area, then uniform in a fan triangle).
pub fn boundary_samples(p: &ConvexPolyhedron, n: usize, rng: &mut impl Rng) -> Vec<Vec3> {
    let vs = p.vertices();
    let mut tris = Vec::new();
    let mut areas = Vec::new();
    for f in p.faces() {
        for k in 1..f.len() - 1 {
            let (a, b, c) = (vs[f[0]], vs[f[k]], vs[f[k + 1]]);
            areas.push((b - a).cross(c - a).norm() / 2.0);
            tris.push((a, b, c));
        }
    }
    let total: f64 = areas.iter().sum();
    let mut out: Vec<Vec3> = vs.to_vec();
    for _ in 0..n {
        let mut r = rng.gen_range(0.0..total);
        let mut idx = 0;
        while idx + 1 < areas.len() && r >= areas[idx] {
            r -= areas[idx];
            idx += 1;
        }
        let (a, b, c) = tris[idx];
        let (mut s, mut t): (f64, f64) = (rng.gen(), rng.gen());
        if s + t > 1.0 {
            s = 1.0 - s;
            t = 1.0 - t;
        }
        out.push(a + (b - a) * s + (c - a) * t);
    }
    out
}

/// Euclidean projection onto `{x : x·n_i <= h_i}` by Dykstra's alternating
/// projections; returns the distance from `x` to the set.
pub fn dykstra_distance(x: Vec3, planes: &[(Vec3, f64)]) -> f64 {
    if planes.iter().all(|(n, h)| x.dot(*n) <= *h) {
        return 0.0;
    }
    let mut y = x;
    let mut incr = vec![Vec3::ZERO; planes.len()];
    for _ in 0..200_000 {
        let prev = y;
        for (i, (n, h)) in planes.iter().enumerate() {
            let z = y + incr[i];
            let excess = z.dot(*n) - h;
            let proj = if excess > 0.0 { z - *n * excess } else { z };
            incr[i] = z - proj;
            y = proj;
        }
        if (y - prev).norm() < 1e-13 {
            break;
        }
    }
    (x - y).norm()
}

pub fn planes_of(p: &ConvexPolyhedron) -> Vec<(Vec3, f64)> {
    p.face_planes()
        .iter()
        .map(|h| (h.normal, h.offset))
        .collect()
}

/// Brute-force offset: max over boundary samples of the Dykstra distance,
/// evaluated in order of a cheap upper bound (distance to the radial
/// boundary point) and pruned once no remaining sample can win.
pub fn offset_oracle(samples: &[Vec3], q: &ConvexPolyhedron) -> f64 {
    let planes = planes_of(q);
    let mut keyed: Vec<(f64, Vec3)> = samples
        .iter()
        .map(|&x| {
            let g = planes
                .iter()
                .map(|(n, h)| x.dot(*n) / h)
                .fold(0.0, f64::max);
            let ub = if g > 1.0 {
                x.norm() * (1.0 - 1.0 / g)
            } else {
                0.0
            };
            (ub, x)
        })
        .collect();
    keyed.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut best: f64 = 0.0;
    for (ub, x) in keyed {
        if ub <= best {
            break;
        }
        best = best.max(dykstra_distance(x, &planes));
    }
    best
}

/// Brute-force scale: max over samples of 1/t where t·x hits the boundary of
/// `q`, found by bisection on the half-space membership test.
pub fn scale_oracle(samples: &[Vec3], q: &ConvexPolyhedron) -> f64 {
    let planes = planes_of(q);
    let inside = |p: Vec3| planes.iter().all(|(n, h)| p.dot(*n) <= *h);
    samples
        .iter()
        .filter(|x| x.norm() > 0.0)
        .map(|&x| {
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            while inside(x * hi) {
                hi *= 2.0;
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if inside(x * mid) {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo <= 1e-16 * hi {
                    break;
                }
            }
            1.0 / (0.5 * (lo + hi))
        })
        .fold(0.0, f64::max)
}
