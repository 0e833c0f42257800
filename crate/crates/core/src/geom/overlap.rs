use serde::{Deserialize, Serialize};

use super::{signed_area2, Point2, Tolerance};
use crate::error::{GeomError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle2 {
    pub a: Point2,
    pub b: Point2,
    pub c: Point2,
}

impl Triangle2 {
    pub fn new(a: Point2, b: Point2, c: Point2) -> Self {
        Self { a, b, c }
    }

    pub fn signed_area(&self) -> f64 {
        0.5 * signed_area2(self.a, self.b, self.c)
    }

    pub fn longest_edge(&self) -> f64 {
        self.a
            .distance(self.b)
            .max(self.b.distance(self.c))
            .max(self.c.distance(self.a))
    }

    /// Vertices in ccw order.
    pub fn ccw(&self) -> [Point2; 3] {
        if self.signed_area() >= 0.0 {
            [self.a, self.b, self.c]
        } else {
            [self.a, self.c, self.b]
        }
    }

    pub fn translated(&self, t: Point2) -> Self {
        Self::new(self.a + t, self.b + t, self.c + t)
    }
}

/// Area of a simple polygon given in either orientation.
pub fn polygon_area(poly: &[Point2]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let o = poly[0];
    let s: f64 = poly.windows(2).map(|w| (w[0] - o).cross(w[1] - o)).sum();
    0.5 * s.abs()
}

/// Clips `subject` (convex) by the convex ccw polygon `clip`.
pub fn clip_convex(subject: &[Point2], clip: &[Point2]) -> Vec<Point2> {
    let mut out = subject.to_vec();
    let m = clip.len();
    for i in 0..m {
        if out.is_empty() {
            break;
        }
        let (a, b) = (clip[i], clip[(i + 1) % m]);
        let input = std::mem::take(&mut out);
        let side = |p: Point2| signed_area2(a, b, p);
        for j in 0..input.len() {
            let cur = input[j];
            let prev = input[(j + input.len() - 1) % input.len()];
            let (sc, sp) = (side(cur), side(prev));
            if sc >= 0.0 {
                if sp < 0.0 {
                    out.push(prev + (cur - prev) * (sp / (sp - sc)));
                }
                out.push(cur);
            } else if sp >= 0.0 {
                out.push(prev + (cur - prev) * (sp / (sp - sc)));
            }
        }
    }
    out
}

fn bbox(poly: &[Point2]) -> (Point2, Point2) {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in poly {
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (lo, hi)
}

fn extent(poly: &[Point2]) -> f64 {
    let (lo, hi) = bbox(poly);
    (hi - lo).norm()
}

/// Area of the intersection of two convex ccw polygons.
pub fn convex_intersection_area(p: &[Point2], q: &[Point2]) -> f64 {
    let (plo, phi) = bbox(p);
    let (qlo, qhi) = bbox(q);
    if plo.x > qhi.x || qlo.x > phi.x || plo.y > qhi.y || qlo.y > phi.y {
        return 0.0;
    }
    polygon_area(&clip_convex(p, q))
}

/// Strict overlap of two convex ccw polygons: the shared region has area
/// above `tol.area(scale)`, with `scale` the larger of the two extents.
pub fn convex_polygons_overlap(p: &[Point2], q: &[Point2], tol: Tolerance) -> bool {
    overlap_margin(p, q, tol) > 0.0
}

/// Intersection area minus the contact threshold; positive means overlap.
pub fn overlap_margin(p: &[Point2], q: &[Point2], tol: Tolerance) -> f64 {
    let scale = extent(p).max(extent(q));
    convex_intersection_area(p, q) - tol.area(scale)
}

/// True iff the interiors of the triangles intersect in more than boundary
/// contact. Shared edges and shared vertices do not count.
pub fn triangles_overlap(t1: &Triangle2, t2: &Triangle2, tol: Tolerance) -> Result<bool> {
    for t in [t1, t2] {
        let area = t.signed_area().abs();
        if area <= tol.area(t.longest_edge()) {
            return Err(GeomError::DegenerateTriangle { area });
        }
    }
    Ok(convex_polygons_overlap(&t1.ccw(), &t2.ccw(), tol))
}
