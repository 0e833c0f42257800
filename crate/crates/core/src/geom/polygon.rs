use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{orientation, predicates::ccw_angle, signed_area2, Orientation, Point2, Tolerance};
use crate::error::{GeomError, Result};

/// A strictly convex polygon with counterclockwise vertex order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point2>", into = "Vec<Point2>")]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl ConvexPolygon {
    /// Validates strict convexity, ccw orientation and a single winding.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeomError::InvalidPolygon(format!("{n} vertices")));
        }
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(GeomError::InvalidPolygon(format!(
                "vertex {i} is not finite"
            )));
        }
        let mut turning = 0.0;
        for i in 0..n {
            let (a, b, c) = (vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]);
            if a == b {
                return Err(GeomError::InvalidPolygon(format!("repeated vertex {i}")));
            }
            if orientation(a, b, c) != Orientation::CounterClockwise {
                return Err(GeomError::InvalidPolygon(format!(
                    "vertex {} is not a strict left turn",
                    (i + 1) % n
                )));
            }
            turning += PI - ccw_angle(c - b, a - b);
        }
        if (turning - TAU).abs() > 1e-6 {
            return Err(GeomError::InvalidPolygon(format!(
                "boundary winds {:.3} turns",
                turning / TAU
            )));
        }
        Ok(Self { vertices })
    }

    pub fn from_coords(coords: &[[f64; 2]]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| c.into()).collect())
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex with cyclic indexing.
    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> (Point2, Point2) {
        (self.vertex(i), self.vertex(i + 1))
    }

    /// Unit outward normal of edge `i`.
    pub fn edge_normal(&self, i: usize) -> Point2 {
        let (p, q) = self.edge(i);
        let d = q - p;
        Point2::new(d.y, -d.x) * (1.0 / d.norm())
    }

    /// Interior angle at vertex `i`, in (0, pi).
    pub fn interior_angle(&self, i: usize) -> f64 {
        let n = self.len();
        let prev = self.vertex(i + n - 1);
        let cur = self.vertex(i);
        let next = self.vertex(i + 1);
        ccw_angle(next - cur, prev - cur)
    }

    pub fn signed_area(&self) -> f64 {
        let o = self.vertices[0];
        (1..self.len() - 1)
            .map(|i| signed_area2(o, self.vertices[i], self.vertices[i + 1]))
            .sum::<f64>()
            * 0.5
    }

    pub fn perimeter(&self) -> f64 {
        (0..self.len())
            .map(|i| {
                let (p, q) = self.edge(i);
                p.distance(q)
            })
            .sum()
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, p) in self.vertices.iter().enumerate() {
            for q in &self.vertices[i + 1..] {
                d = d.max(p.distance(*q));
            }
        }
        d
    }

    /// Area centroid.
    pub fn centroid(&self) -> Point2 {
        let o = self.vertices[0];
        let mut acc = Point2::ORIGIN;
        let mut area = 0.0;
        for i in 1..self.len() - 1 {
            let (b, c) = (self.vertices[i], self.vertices[i + 1]);
            let a2 = signed_area2(o, b, c);
            acc += (o + b + c) * (a2 / 3.0);
            area += a2;
        }
        acc * (1.0 / area)
    }

    /// Signed distance from `p` to the line of edge `i`; positive inside.
    pub fn edge_clearance(&self, i: usize, p: Point2) -> f64 {
        let (a, b) = self.edge(i);
        signed_area2(a, b, p) / a.distance(b)
    }

    /// Smallest signed distance from `p` to any edge line; positive inside.
    pub fn clearance(&self, p: Point2) -> f64 {
        (0..self.len())
            .map(|i| self.edge_clearance(i, p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Applies `f` to every vertex; `f` must preserve orientation.
    pub fn map(&self, f: impl Fn(Point2) -> Point2) -> Result<Self> {
        Self::new(self.vertices.iter().map(|&p| f(p)).collect())
    }

    /// Applies `f` to every vertex, preserving strict convexity only if `f` is
    /// a similarity; panics-free variant for trusted callers.
    pub(crate) fn map_unchecked(&self, f: impl Fn(Point2) -> Point2) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&p| f(p)).collect(),
        }
    }

    pub fn translated(&self, t: Point2) -> Self {
        self.map_unchecked(|p| p + t)
    }

    pub fn scaled_about(&self, center: Point2, s: f64) -> Self {
        assert!(s > 0.0);
        self.map_unchecked(|p| center + (p - center) * s)
    }

    pub fn rotated_about(&self, center: Point2, angle: f64) -> Self {
        self.map_unchecked(|p| center + (p - center).rotated(angle))
    }

    /// Reverse-ordered vertex list starting at `i` (clockwise walk).
    pub fn cw_path(&self, from: usize, to: usize) -> Vec<Point2> {
        let n = self.len();
        let mut out = vec![self.vertex(from)];
        let mut i = from % n;
        while i != to % n {
            i = (i + n - 1) % n;
            out.push(self.vertices[i]);
        }
        out
    }

    /// Forward-ordered vertex list from `from` to `to` (counterclockwise walk).
    pub fn ccw_path(&self, from: usize, to: usize) -> Vec<Point2> {
        let n = self.len();
        let mut out = vec![self.vertex(from)];
        let mut i = from % n;
        while i != to % n {
            i = (i + 1) % n;
            out.push(self.vertices[i]);
        }
        out
    }
}

impl TryFrom<Vec<Point2>> for ConvexPolygon {
    type Error = GeomError;
    fn try_from(v: Vec<Point2>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ConvexPolygon> for Vec<Point2> {
    fn from(p: ConvexPolygon) -> Self {
        p.vertices
    }
}

/// True iff `p` lies inside `poly` with clearance greater than `tol.eps`
/// from every edge.
pub fn point_strictly_inside(poly: &ConvexPolygon, p: Point2, tol: Tolerance) -> bool {
    poly.clearance(p) > tol.eps
}
