use super::{Point2, Tolerance};

/// Sign of the signed area of a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    fn from_value(v: f64) -> Self {
        if v > 0.0 {
            Orientation::CounterClockwise
        } else if v < 0.0 {
            Orientation::Clockwise
        } else {
            Orientation::Collinear
        }
    }
}

/// Exact orientation of `r` relative to the directed line `p -> q`
/// (adaptive-precision determinant).
pub fn orientation(p: Point2, q: Point2, r: Point2) -> Orientation {
    let c = |p: Point2| robust::Coord { x: p.x, y: p.y };
    Orientation::from_value(robust::orient2d(c(p), c(q), c(r)))
}

/// Twice the signed area of `pqr` in plain floating point.
#[inline]
pub fn signed_area2(p: Point2, q: Point2, r: Point2) -> f64 {
    (q - p).cross(r - p)
}

/// Orientation with a collinearity band: `r` is collinear when its distance
/// to the line through `p` and `q` is at most `tol.eps`.
pub fn orientation_tol(p: Point2, q: Point2, r: Point2, tol: Tolerance) -> Orientation {
    let len = p.distance(q);
    if len == 0.0 {
        return Orientation::Collinear;
    }
    let d = signed_area2(p, q, r) / len;
    if d.abs() <= tol.eps {
        Orientation::Collinear
    } else {
        Orientation::from_value(d)
    }
}

/// Distance from `p` to the closed segment `ab`.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sq();
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

/// True when the closed segments share at least one point (exact predicates).
pub fn segments_intersect(p1: Point2, q1: Point2, p2: Point2, q2: Point2) -> bool {
    use Orientation::Collinear;
    let o1 = orientation(p1, q1, p2);
    let o2 = orientation(p1, q1, q2);
    let o3 = orientation(p2, q2, p1);
    let o4 = orientation(p2, q2, q1);
    if o1 != Collinear && o2 != Collinear && o3 != Collinear && o4 != Collinear {
        return o1 != o2 && o3 != o4;
    }
    let on = |a: Point2, b: Point2, p: Point2| {
        p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
    };
    (o1 == Collinear && on(p1, q1, p2))
        || (o2 == Collinear && on(p1, q1, q2))
        || (o3 == Collinear && on(p2, q2, p1))
        || (o4 == Collinear && on(p2, q2, q1))
}

/// Minimum distance between two closed segments.
pub fn segment_distance(p1: Point2, q1: Point2, p2: Point2, q2: Point2) -> f64 {
    if segments_intersect(p1, q1, p2, q2) {
        return 0.0;
    }
    point_segment_distance(p1, p2, q2)
        .min(point_segment_distance(q1, p2, q2))
        .min(point_segment_distance(p2, p1, q1))
        .min(point_segment_distance(q2, p1, q1))
}

/// Counterclockwise angle from direction `from` to direction `to`, in [0, 2pi).
pub fn ccw_angle(from: Point2, to: Point2) -> f64 {
    let a = from.cross(to).atan2(from.dot(to));
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

/// Unsigned angle in [0, pi] between two planar vectors.
pub fn unsigned_angle(u: Point2, v: Point2) -> f64 {
    u.cross(v).abs().atan2(u.dot(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(p(0., 0.), p(1., 0.), p(0., 1.)).sign(), 1);
        assert_eq!(orientation(p(0., 0.), p(1., 0.), p(2., 0.)).sign(), 0);
        assert_eq!(orientation(p(0., 0.), p(0., 1.), p(1., 0.)).sign(), -1);
    }

    #[test]
    fn orientation_is_exact_near_zero() {
        // Points on y = x with rounding-prone coordinates.
        let a = p(0.1, 0.1);
        let b = p(0.3, 0.3);
        let c = p(0.7, 0.7);
        assert_eq!(orientation(a, b, c), Orientation::Collinear);
        let nudged = p(0.7, 0.7f64.next_up());
        assert_eq!(orientation(a, b, nudged), Orientation::CounterClockwise);
    }

    #[test]
    fn orientation_tol_band() {
        let t = Tolerance::new(1e-6);
        assert_eq!(
            orientation_tol(p(0., 0.), p(1., 0.), p(0.5, 1e-7), t),
            Orientation::Collinear
        );
        assert_eq!(
            orientation_tol(p(0., 0.), p(1., 0.), p(0.5, -1e-5), t),
            Orientation::Clockwise
        );
    }

    #[test]
    fn segment_intersections() {
        assert!(segments_intersect(
            p(0., 0.),
            p(2., 2.),
            p(0., 2.),
            p(2., 0.)
        ));
        assert!(!segments_intersect(
            p(0., 0.),
            p(1., 0.),
            p(0., 1.),
            p(1., 1.)
        ));
        // touching at an endpoint
        assert!(segments_intersect(
            p(0., 0.),
            p(1., 0.),
            p(1., 0.),
            p(2., 5.)
        ));
        // collinear, disjoint
        assert!(!segments_intersect(
            p(0., 0.),
            p(1., 0.),
            p(2., 0.),
            p(3., 0.)
        ));
        // collinear, overlapping
        assert!(segments_intersect(
            p(0., 0.),
            p(2., 0.),
            p(1., 0.),
            p(3., 0.)
        ));
        assert_eq!(
            segment_distance(p(0., 0.), p(1., 0.), p(0., 1.), p(1., 1.)),
            1.0
        );
    }

    #[test]
    fn ccw_angle_range() {
        use std::f64::consts::PI;
        assert!((ccw_angle(p(1., 0.), p(0., 1.)) - PI / 2.0).abs() < 1e-15);
        assert!((ccw_angle(p(0., 1.), p(1., 0.)) - 1.5 * PI).abs() < 1e-15);
        assert_eq!(ccw_angle(p(1., 0.), p(2., 0.)), 0.0);
    }
}
