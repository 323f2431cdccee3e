//! Lattice bases, crystallographic cell parameters, basis reduction and
//! finite neighbor shells.

use alloc::vec::Vec;

use crate::math;
use crate::vec3::{triple_product, Vec3};
use crate::{Error, Result};

/// Neighbor shell extent used for Voronoi cells: all integer offsets in
/// `[-3, 3]^3` around the origin of a reduced basis.
pub const DEFAULT_EXTENT: u32 = 3;

/// Relative determinant threshold below which a basis is rejected.
const DEGENERACY_TOL: f64 = 1e-12;

/// Three vectors generating a lattice, stored with positive orientation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeBasis {
    vectors: [Vec3; 3],
}

impl LatticeBasis {
    /// Builds a basis, rejecting (numerically) dependent vectors.
    ///
    /// A left-handed triple is made right-handed by swapping `v` and `w`.
    pub fn new(u: Vec3, v: Vec3, w: Vec3) -> Result<Self> {
        let det = triple_product(u, v, w);
        let longest = u.norm().max(v.norm()).max(w.norm());
        if !det.is_finite() || det.abs() <= DEGENERACY_TOL * longest * longest * longest {
            return Err(Error::DegenerateBasis { determinant: det });
        }
        let vectors = if det < 0.0 { [u, w, v] } else { [u, v, w] };
        Ok(LatticeBasis { vectors })
    }

    pub fn from_rows(rows: [[f64; 3]; 3]) -> Result<Self> {
        LatticeBasis::new(
            Vec3::from_array(rows[0]),
            Vec3::from_array(rows[1]),
            Vec3::from_array(rows[2]),
        )
    }

    /// The cubic lattice with unit spacing.
    pub fn cubic(side: f64) -> Self {
        LatticeBasis::new(Vec3::X * side, Vec3::Y * side, Vec3::Z * side)
            .expect("cubic side must be positive")
    }

    #[inline]
    pub fn vectors(&self) -> [Vec3; 3] {
        self.vectors
    }

    #[inline]
    pub fn u(&self) -> Vec3 {
        self.vectors[0]
    }

    #[inline]
    pub fn v(&self) -> Vec3 {
        self.vectors[1]
    }

    #[inline]
    pub fn w(&self) -> Vec3 {
        self.vectors[2]
    }

    pub fn determinant(&self) -> f64 {
        triple_product(self.vectors[0], self.vectors[1], self.vectors[2])
    }

    pub fn longest_vector_length(&self) -> f64 {
        self.vectors.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Lattice point `x·u + y·v + z·w`.
    #[inline]
    pub fn point(&self, x: i64, y: i64, z: i64) -> Vec3 {
        self.vectors[0] * x as f64 + self.vectors[1] * y as f64 + self.vectors[2] * z as f64
    }

    /// Same lattice uniformly scaled by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let [u, v, w] = self.vectors;
        LatticeBasis::new(u * factor, v * factor, w * factor)
    }

    /// Basis with rows `m · (u, v, w)`. With a unimodular `m` this is another
    /// basis of the same lattice.
    pub fn transformed(&self, m: [[i64; 3]; 3]) -> Result<Self> {
        let row = |r: [i64; 3]| self.point(r[0], r[1], r[2]);
        LatticeBasis::new(row(m[0]), row(m[1]), row(m[2]))
    }

    /// Applies an arbitrary linear map to every basis vector.
    pub fn map(&self, f: impl Fn(Vec3) -> Vec3) -> Result<Self> {
        let [u, v, w] = self.vectors;
        LatticeBasis::new(f(u), f(v), f(w))
    }
}

/// Edge lengths and angles (degrees) of a unit cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellParameters {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl CellParameters {
    pub fn new(a: f64, b: f64, c: f64, alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        let p = CellParameters {
            a,
            b,
            c,
            alpha,
            beta,
            gamma,
        };
        p.check()?;
        Ok(p)
    }

    fn check(&self) -> Result<()> {
        let lengths_ok = [self.a, self.b, self.c]
            .iter()
            .all(|l| l.is_finite() && *l > 0.0);
        if !lengths_ok {
            return Err(Error::InvalidCellParameters("lengths must be positive"));
        }
        let angles_ok = [self.alpha, self.beta, self.gamma]
            .iter()
            .all(|t| t.is_finite() && *t > 0.0 && *t < 180.0);
        if !angles_ok {
            return Err(Error::InvalidCellParameters(
                "angles must lie strictly between 0 and 180 degrees",
            ));
        }
        Ok(())
    }

    /// Reads lengths and angles back from a basis.
    pub fn from_basis(basis: &LatticeBasis) -> Self {
        let [u, v, w] = basis.vectors();
        let angle = |p: Vec3, q: Vec3| {
            let c = (p.dot(q) / (p.norm() * q.norm())).clamp(-1.0, 1.0);
            libm::acos(c).to_degrees()
        };
        CellParameters {
            a: u.norm(),
            b: v.norm(),
            c: w.norm(),
            alpha: angle(v, w),
            beta: angle(u, w),
            gamma: angle(u, v),
        }
    }
}

/// Converts cell parameters to a basis with `u` along x and `v` in the xy-plane.
pub fn basis_from_cell_parameters(p: &CellParameters) -> Result<LatticeBasis> {
    p.check()?;
    let (ca, cb, cg) = (
        math::cos(p.alpha.to_radians()),
        math::cos(p.beta.to_radians()),
        math::cos(p.gamma.to_radians()),
    );
    let sg = math::sin(p.gamma.to_radians());
    let wy = (ca - cb * cg) / sg;
    let radicand = 1.0 - cb * cb - wy * wy;
    if radicand.is_nan() || radicand <= 0.0 {
        return Err(Error::NonPositiveDefinite);
    }
    let u = Vec3::new(p.a, 0.0, 0.0);
    let v = Vec3::new(p.b * cg, p.b * sg, 0.0);
    let w = Vec3::new(p.c * cb, p.c * wy, p.c * math::sqrt(radicand));
    LatticeBasis::new(u, v, w)
}

/// Volume of a primitive unit cell, `|det(u, v, w)|`.
pub fn unit_cell_volume(basis: &LatticeBasis) -> f64 {
    basis.determinant().abs()
}

/// A reduced basis together with the integer matrix expressing it in terms
/// of the input basis (`reduced[i] = Σ_j transform[i][j] · input[j]`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reduction {
    pub basis: LatticeBasis,
    pub transform: [[i64; 3]; 3],
}

/// Pairwise (Lagrange–Gauss style) reduction.
///
/// Repeatedly applies the single replacement `v_i -= k·v_j`,
/// `k = round(v_i·v_j / v_j·v_j)`, that shortens a vector the most, until no
/// such replacement shortens anything. Output vectors are sorted by length.
pub fn reduce_basis(basis: &LatticeBasis) -> LatticeBasis {
    reduce_basis_with_transform(basis).basis
}

pub fn reduce_basis_with_transform(basis: &LatticeBasis) -> Reduction {
    // Lengths strictly decrease over a discrete set of lattice vectors, so the
    // loop terminates; the cap only guards against non-finite input.
    const MAX_STEPS: usize = 100_000;
    const MIN_GAIN: f64 = 1e-12;

    let mut vs = basis.vectors();
    let mut t = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];

    for _ in 0..MAX_STEPS {
        let mut best: Option<(usize, usize, i64, f64)> = None;
        for i in 0..3 {
            let len_i = vs[i].norm_squared();
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let k = math::round_half_even(vs[i].dot(vs[j]) / vs[j].norm_squared());
                if k == 0.0 {
                    continue;
                }
                let gain = len_i - (vs[i] - vs[j] * k).norm_squared();
                if gain > MIN_GAIN * len_i && best.is_none_or(|b| gain > b.3) {
                    best = Some((i, j, k as i64, gain));
                }
            }
        }
        let Some((i, j, k, _)) = best else { break };
        vs[i] -= vs[j] * k as f64;
        let tj = t[j];
        for (ti, tj) in t[i].iter_mut().zip(tj) {
            *ti -= k * tj;
        }
    }

    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| vs[a].norm_squared().total_cmp(&vs[b].norm_squared()));
    let mut sorted = [vs[order[0]], vs[order[1]], vs[order[2]]];
    let mut transform = [t[order[0]], t[order[1]], t[order[2]]];
    if triple_product(sorted[0], sorted[1], sorted[2]) < 0.0 {
        sorted[2] = -sorted[2];
        transform[2] = transform[2].map(|x| -x);
    }
    Reduction {
        basis: LatticeBasis { vectors: sorted },
        transform,
    }
}

/// Nonzero lattice vectors with integer coordinates in `[-extent, extent]^3`.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborSet {
    pub points: Vec<Vec3>,
    pub extent: u32,
}

/// Enumerates the neighbor shell of the origin. The shell only covers the
/// Voronoi-relevant vectors when `basis` is reduced.
pub fn neighbor_shell(basis: &LatticeBasis, extent: u32) -> NeighborSet {
    let e = extent as i64;
    let side = (2 * extent as usize) + 1;
    let mut points = Vec::with_capacity(side * side * side - 1);
    for x in -e..=e {
        for y in -e..=e {
            for z in -e..=e {
                if (x, y, z) != (0, 0, 0) {
                    points.push(basis.point(x, y, z));
                }
            }
        }
    }
    NeighborSet { points, extent }
}
