//! Nested prismatoids and their lateral triangulated band.
//!
//! The band is found by a pivot walk: start on the lateral face through
//! B-edge 0 and repeatedly rotate the supporting plane about the trailing
//! lateral edge, advancing along B or along A, until the walk closes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geom::{ConvexPolygon, Point2, Point3, Tolerance};

/// Height used to derive the combinatorics of the flat (z = 0) band.
pub const REFERENCE_HEIGHT: f64 = 1.0;

/// Base `B` in the plane z = 0 and top `A` at height `z`, with every vertex of
/// `A` projecting strictly inside `B`.
#[derive(Debug, Clone, PartialEq)]
pub struct NestedPrismatoid {
    base: ConvexPolygon,
    top: ConvexPolygon,
    z: f64,
    tol: Tolerance,
}

impl NestedPrismatoid {
    /// Uses the default tolerance scaled by the diameter of `base`.
    pub fn new(base: ConvexPolygon, top: ConvexPolygon, z: f64) -> Result<Self> {
        let tol = Tolerance::for_diameter(base.diameter());
        Self::with_tolerance(base, top, z, tol)
    }

    pub fn with_tolerance(
        base: ConvexPolygon,
        top: ConvexPolygon,
        z: f64,
        tol: Tolerance,
    ) -> Result<Self> {
        if !(z >= 0.0 && z.is_finite()) {
            return Err(GeomError::DegenerateHeight(z));
        }
        if let Some(vertex) = top
            .vertices()
            .iter()
            .position(|&p| !crate::geom::point_strictly_inside(&base, p, tol))
        {
            return Err(GeomError::NestingViolation { vertex });
        }
        Ok(Self { base, top, z, tol })
    }

    pub fn base(&self) -> &ConvexPolygon {
        &self.base
    }

    pub fn top(&self) -> &ConvexPolygon {
        &self.top
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    /// Same shapes, different height.
    pub fn with_z(&self, z: f64) -> Result<Self> {
        if !(z >= 0.0 && z.is_finite()) {
            return Err(GeomError::DegenerateHeight(z));
        }
        Ok(Self { z, ..self.clone() })
    }

    pub fn base_point(&self, i: usize) -> Point3 {
        self.base.vertex(i).lift(0.0)
    }

    pub fn top_point(&self, j: usize) -> Point3 {
        self.top.vertex(j).lift(self.z)
    }

    pub fn point(&self, v: BandVertex) -> Point3 {
        match v {
            BandVertex::B(i) => self.base_point(i),
            BandVertex::A(j) => self.top_point(j),
        }
    }

    pub fn point2(&self, v: BandVertex) -> Point2 {
        match v {
            BandVertex::B(i) => self.base.vertex(i),
            BandVertex::A(j) => self.top.vertex(j),
        }
    }

    /// All vertices of the prismatoid in space.
    pub fn points(&self) -> Vec<Point3> {
        (0..self.base.len())
            .map(|i| self.base_point(i))
            .chain((0..self.top.len()).map(|j| self.top_point(j)))
            .collect()
    }
}

/// A vertex of the band: an index into B or into A.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BandVertex {
    B(usize),
    A(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TriangleKind {
    /// Base edge `b_edge -> b_edge + 1` of B, apex a vertex of A.
    BBased { edge: usize, apex: usize },
    /// Base edge `a_edge -> a_edge + 1` of A, apex a vertex of B.
    ABased { edge: usize, apex: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LateralTriangle {
    pub kind: TriangleKind,
    /// Half of a planar lateral quadrilateral (an edge of A parallel to an edge of B).
    pub coplanar: bool,
}

/// A lateral edge joining vertex `b` of B to vertex `a` of A.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LateralEdge {
    pub b: usize,
    pub a: usize,
}

/// The cyclic fan of lateral triangles. Triangle `k` lies between lateral
/// edges `k` and `k + 1` (mod the triangle count).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Band {
    triangles: Vec<LateralTriangle>,
    lateral_edges: Vec<LateralEdge>,
    n_b: usize,
    n_a: usize,
}

impl Band {
    pub fn triangles(&self) -> &[LateralTriangle] {
        &self.triangles
    }

    pub fn lateral_edges(&self) -> &[LateralEdge] {
        &self.lateral_edges
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    /// L_B as vertex indices of B, in ccw order.
    pub fn chain_b(&self) -> Vec<usize> {
        (0..self.n_b).collect()
    }

    /// L_A as vertex indices of A, in ccw order.
    pub fn chain_a(&self) -> Vec<usize> {
        (0..self.n_a).collect()
    }

    pub fn has_coplanar_pairs(&self) -> bool {
        self.triangles.iter().any(|t| t.coplanar)
    }

    /// Corners of triangle `k` as (start of lateral edge k on B, start on A,
    /// the vertex the triangle adds).
    pub fn corners(&self, k: usize) -> [BandVertex; 3] {
        let e = self.lateral_edges[k];
        let third = match self.triangles[k].kind {
            TriangleKind::BBased { edge, .. } => BandVertex::B((edge + 1) % self.n_b),
            TriangleKind::ABased { edge, .. } => BandVertex::A((edge + 1) % self.n_a),
        };
        [BandVertex::B(e.b), BandVertex::A(e.a), third]
    }

    /// Corners of triangle `k` in counterclockwise order seen from outside P.
    pub fn outward_corners(&self, k: usize) -> [BandVertex; 3] {
        match self.triangles[k].kind {
            TriangleKind::BBased { edge, apex } => [
                BandVertex::B(edge),
                BandVertex::B((edge + 1) % self.n_b),
                BandVertex::A(apex),
            ],
            TriangleKind::ABased { edge, apex } => [
                BandVertex::A((edge + 1) % self.n_a),
                BandVertex::A(edge),
                BandVertex::B(apex),
            ],
        }
    }

    /// Index of the triangle whose base is edge `i` of B.
    pub fn triangle_on_b_edge(&self, i: usize) -> usize {
        self.triangles
            .iter()
            .position(|t| matches!(t.kind, TriangleKind::BBased { edge, .. } if edge == i))
            .expect("every B edge is a triangle base")
    }

    /// Index of the triangle whose base is edge `j` of A.
    pub fn triangle_on_a_edge(&self, j: usize) -> usize {
        self.triangles
            .iter()
            .position(|t| matches!(t.kind, TriangleKind::ABased { edge, .. } if edge == j))
            .expect("every A edge is a triangle base")
    }

    /// Vertices of A joined to `b_i`, in ccw order.
    pub fn fan_at_b(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        let start = self
            .lateral_edges
            .iter()
            .position(|e| e.b == i)
            .expect("every B vertex is on a lateral edge");
        // walk backwards to the first lateral edge at b_i
        let n = self.len();
        let mut k = start;
        while self.lateral_edges[(k + n - 1) % n].b == i && (k + n - 1) % n != start {
            k = (k + n - 1) % n;
        }
        for step in 0..n {
            let e = self.lateral_edges[(k + step) % n];
            if e.b != i {
                break;
            }
            out.push(e.a);
        }
        out
    }

    /// Vertices of B joined to `a_j`, in ccw order.
    pub fn fan_at_a(&self, j: usize) -> Vec<usize> {
        let n = self.len();
        let start = self
            .lateral_edges
            .iter()
            .position(|e| e.a == j)
            .expect("every A vertex is on a lateral edge");
        let mut k = start;
        while self.lateral_edges[(k + n - 1) % n].a == j && (k + n - 1) % n != start {
            k = (k + n - 1) % n;
        }
        let mut out = Vec::new();
        for step in 0..n {
            let e = self.lateral_edges[(k + step) % n];
            if e.a != j {
                break;
            }
            out.push(e.b);
        }
        out
    }

    /// Lateral edge ids incident to `a_j`.
    pub fn lateral_edges_at_a(&self, j: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| self.lateral_edges[k].a == j)
            .collect()
    }
}

/// Builds the band of `p`. At z = 0 the combinatorics are taken from
/// [`REFERENCE_HEIGHT`] and the geometry is the flat doubly covered band.
pub fn build_band(p: &NestedPrismatoid) -> Result<Band> {
    if !(p.z() >= 0.0 && p.z().is_finite()) {
        return Err(GeomError::DegenerateHeight(p.z()));
    }
    let z = if p.z() == 0.0 {
        REFERENCE_HEIGHT
    } else {
        p.z()
    };
    let base: Vec<Point3> = p.base().vertices().iter().map(|v| v.lift(0.0)).collect();
    let top: Vec<Point3> = p.top().vertices().iter().map(|v| v.lift(z)).collect();
    Ok(pivot_walk(
        &base,
        &top,
        p.tolerance().eps / p.base().diameter(),
    ))
}

/// Sine of the angle below which an A edge counts as parallel to a B edge.
fn pivot_walk(base: &[Point3], top: &[Point3], sin_eps: f64) -> Band {
    let (n_b, n_a) = (base.len(), top.len());

    // Apex for B-edge 0: the A vertex farthest along the edge's outward normal;
    // among tied vertices take the first in ccw order.
    let e0 = base[1] - base[0];
    let normal = Point2::new(e0.y, -e0.x);
    let reach: Vec<f64> = top.iter().map(|a| normal.dot(a.xy())).collect();
    let mut j0 = (0..n_a)
        .max_by(|&x, &y| reach[x].total_cmp(&reach[y]))
        .unwrap();
    let parallel_to_e0 = |j: usize| {
        let d = top[(j + 1) % n_a].xy() - top[j].xy();
        let e = e0.xy();
        d.dot(e) > 0.0 && (e.cross(d) / (e.norm() * d.norm())).abs() <= sin_eps
    };
    if parallel_to_e0((j0 + n_a - 1) % n_a) {
        j0 = (j0 + n_a - 1) % n_a;
    }

    let mut triangles = Vec::with_capacity(n_b + n_a);
    let mut lateral_edges = Vec::with_capacity(n_b + n_a);
    let (mut i, mut j) = (0usize, j0);
    let (mut used_b, mut used_a) = (0usize, 0usize);
    let mut pending_coplanar = false;

    while used_b < n_b || used_a < n_a {
        lateral_edges.push(LateralEdge { b: i, a: j });
        let (bi, bn) = (base[i], base[(i + 1) % n_b]);
        let (aj, an) = (top[j], top[(j + 1) % n_a]);

        // Side of a_{j+1} relative to the plane of (b_i, b_{i+1}, a_j), outward positive.
        let choice = if used_b == n_b {
            Step::A
        } else if used_a == n_a {
            Step::B
        } else {
            let normal = (bn - bi).cross(aj - bi);
            let d = normal.dot(an - bi);
            let scale = (bn - bi).norm() * (an - aj).norm() * (aj.z - bi.z).abs();
            let sin = d / scale;
            if sin < -sin_eps {
                Step::B
            } else if sin > sin_eps {
                Step::A
            } else {
                Step::Coplanar
            }
        };

        let (kind, coplanar) = match choice {
            Step::B => (TriangleKind::BBased { edge: i, apex: j }, pending_coplanar),
            // quad b_i b_{i+1} a_{j+1} a_j: diagonal from b_i, A-based half first
            Step::A | Step::Coplanar => (
                TriangleKind::ABased { edge: j, apex: i },
                choice == Step::Coplanar || pending_coplanar,
            ),
        };
        pending_coplanar = choice == Step::Coplanar;
        triangles.push(LateralTriangle { kind, coplanar });
        match kind {
            TriangleKind::BBased { .. } => {
                i = (i + 1) % n_b;
                used_b += 1;
            }
            TriangleKind::ABased { .. } => {
                j = (j + 1) % n_a;
                used_a += 1;
            }
        }
    }
    if pending_coplanar {
        // the quad wrapped around to the first triangle
        triangles[0].coplanar = true;
    }
    Band {
        triangles,
        lateral_edges,
        n_b,
        n_a,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    B,
    A,
    Coplanar,
}

/// Cyclic sequence of base tags, rotated to start at the triangle on B-edge 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BandSignature {
    pub kinds: Vec<TriangleKind>,
    pub coplanar: Vec<bool>,
}

impl fmt::Display for BandSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in &self.kinds {
            let c = match k {
                TriangleKind::BBased { .. } => 'B',
                TriangleKind::ABased { .. } => 'A',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub fn band_signature(band: &Band) -> BandSignature {
    let start = band.triangle_on_b_edge(0);
    let n = band.len();
    let order = (0..n).map(|k| (start + k) % n);
    BandSignature {
        kinds: order.clone().map(|k| band.triangles[k].kind).collect(),
        coplanar: order.map(|k| band.triangles[k].coplanar).collect(),
    }
}

/// Rotation-normalized combinatorial signature of the band of `p`.
pub fn band_combinatorics(p: &NestedPrismatoid) -> Result<BandSignature> {
    Ok(band_signature(&build_band(p)?))
}

/// Lengths of all band edges with A at the height of `p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeLengths {
    /// Indexed by lateral edge id.
    pub lateral: Vec<f64>,
    /// Edge `i` of B.
    pub base: Vec<f64>,
    /// Edge `j` of A.
    pub top: Vec<f64>,
}

pub fn edge_lengths_3d(p: &NestedPrismatoid, band: &Band) -> EdgeLengths {
    EdgeLengths {
        lateral: band
            .lateral_edges
            .iter()
            .map(|e| p.base_point(e.b).distance(p.top_point(e.a)))
            .collect(),
        base: (0..p.base().len())
            .map(|i| p.base_point(i).distance(p.base_point(i + 1)))
            .collect(),
        top: (0..p.top().len())
            .map(|j| p.top_point(j).distance(p.top_point(j + 1)))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn ngon(n: usize, r: f64, phase: f64) -> ConvexPolygon {
        ConvexPolygon::new(
            (0..n)
                .map(|k| Point2::from_angle(phase + TAU * k as f64 / n as f64) * r)
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn triangle_over_rotated_triangle() {
        let p = NestedPrismatoid::new(ngon(3, 1.0, 0.0), ngon(3, 0.4, 0.5), 0.7).unwrap();
        let band = build_band(&p).unwrap();
        assert_eq!(band.len(), 6);
        let sig = band_signature(&band);
        assert_eq!(sig.to_string(), "BABABA");
        assert!(!band.has_coplanar_pairs());
    }

    #[test]
    fn square_prismoid_flags_every_triangle() {
        let p = NestedPrismatoid::new(ngon(4, 1.0, 0.3), ngon(4, 0.5, 0.3), 0.5).unwrap();
        let band = build_band(&p).unwrap();
        assert_eq!(band.len(), 8);
        assert!(band.triangles().iter().all(|t| t.coplanar));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            NestedPrismatoid::new(ngon(4, 1.0, 0.0), ngon(4, 1.5, 0.0), 1.0),
            Err(GeomError::NestingViolation { .. })
        ));
        assert!(matches!(
            NestedPrismatoid::new(ngon(4, 1.0, 0.0), ngon(4, 0.5, 0.0), -1.0),
            Err(GeomError::DegenerateHeight(_))
        ));
    }

    #[test]
    fn fans_cover_vertices() {
        let p = NestedPrismatoid::new(ngon(5, 1.0, 0.0), ngon(7, 0.3, 0.2), 0.3).unwrap();
        let band = build_band(&p).unwrap();
        let total: usize = (0..5).map(|i| band.fan_at_b(i).len()).sum();
        // each lateral edge counted once at its B end
        assert_eq!(total, band.len());
        let total: usize = (0..7).map(|j| band.fan_at_a(j).len()).sum();
        assert_eq!(total, band.len());
    }

    #[test]
    fn lateral_edge_length_example() {
        let base = ConvexPolygon::from_coords(&[[1., 0.], [-1., 1.], [-1., -1.]]).unwrap();
        let top = ConvexPolygon::from_coords(&[[0., 0.], [-0.1, 0.1], [-0.1, -0.1]]).unwrap();
        let p = NestedPrismatoid::new(base, top, 1.0).unwrap();
        assert!((p.base_point(0).distance(p.top_point(0)) - 2f64.sqrt()).abs() < 1e-15);
    }
}
