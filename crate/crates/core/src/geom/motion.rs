use serde::{Deserialize, Serialize};

use super::Point2;

/// A planar isometry `p -> R(angle) * F(p) + translation`, where `F` is the
/// reflection across the x-axis when `reflect` is set and the identity otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RigidMotion2 {
    cos: f64,
    sin: f64,
    pub translation: Point2,
    pub reflect: bool,
}

impl Default for RigidMotion2 {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl RigidMotion2 {
    pub const IDENTITY: RigidMotion2 = RigidMotion2 {
        cos: 1.0,
        sin: 0.0,
        translation: Point2::ORIGIN,
        reflect: false,
    };

    pub fn new(angle: f64, translation: Point2, reflect: bool) -> Self {
        let (sin, cos) = angle.sin_cos();
        Self {
            cos,
            sin,
            translation,
            reflect,
        }
    }

    pub fn rotation_about(center: Point2, angle: f64) -> Self {
        let (sin, cos) = angle.sin_cos();
        let t = center - center.rotated_cs(cos, sin);
        Self {
            cos,
            sin,
            translation: t,
            reflect: false,
        }
    }

    /// Rotation angle in (-pi, pi].
    pub fn angle(&self) -> f64 {
        self.sin.atan2(self.cos)
    }

    pub fn cos_sin(&self) -> (f64, f64) {
        (self.cos, self.sin)
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        let q = if self.reflect {
            Point2::new(p.x, -p.y)
        } else {
            p
        };
        q.rotated_cs(self.cos, self.sin) + self.translation
    }

    /// Linear part only.
    pub fn apply_vector(&self, v: Point2) -> Point2 {
        let q = if self.reflect {
            Point2::new(v.x, -v.y)
        } else {
            v
        };
        q.rotated_cs(self.cos, self.sin)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &RigidMotion2) -> RigidMotion2 {
        // R1 F1 (R2 F2 p + t2) + t1; F R(a) = R(-a) F.
        let (c2, s2) = if self.reflect {
            (other.cos, -other.sin)
        } else {
            (other.cos, other.sin)
        };
        RigidMotion2 {
            cos: self.cos * c2 - self.sin * s2,
            sin: self.sin * c2 + self.cos * s2,
            translation: self.apply(other.translation),
            reflect: self.reflect != other.reflect,
        }
    }

    pub fn inverse(&self) -> RigidMotion2 {
        // p = R F q + t  =>  q = F^-1 R^-1 (p - t)
        let inv_rot = RigidMotion2 {
            cos: self.cos,
            sin: -self.sin,
            translation: Point2::ORIGIN,
            reflect: false,
        };
        let flip = RigidMotion2 {
            reflect: self.reflect,
            ..RigidMotion2::IDENTITY
        };
        let shift = RigidMotion2 {
            translation: -self.translation,
            ..RigidMotion2::IDENTITY
        };
        flip.compose(&inv_rot).compose(&shift)
    }

    /// The motion taking segment `src_p src_q` onto the ray `dst_p -> dst_q`
    /// (exactly `src_p -> dst_p`), optionally mirrored across that ray.
    pub fn from_segments(
        src_p: Point2,
        src_q: Point2,
        dst_p: Point2,
        dst_q: Point2,
        reflect: bool,
    ) -> Option<RigidMotion2> {
        let s = (src_q - src_p).normalized()?;
        let d = (dst_q - dst_p).normalized()?;
        let s = if reflect { Point2::new(s.x, -s.y) } else { s };
        // rotation taking s to d
        let cos = s.dot(d);
        let sin = s.cross(d);
        let partial = RigidMotion2 {
            cos,
            sin,
            translation: Point2::ORIGIN,
            reflect,
        };
        let t = dst_p - partial.apply(src_p);
        Some(RigidMotion2 {
            translation: t,
            ..partial
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Point2, b: Point2) -> bool {
        a.distance(b) < 1e-12
    }

    #[test]
    fn compose_matches_sequential() {
        let m1 = RigidMotion2::new(0.7, Point2::new(1.0, -2.0), true);
        let m2 = RigidMotion2::new(-1.3, Point2::new(0.5, 0.25), false);
        let p = Point2::new(0.3, 0.9);
        assert!(close(m1.compose(&m2).apply(p), m1.apply(m2.apply(p))));
        assert!(close(m2.compose(&m1).apply(p), m2.apply(m1.apply(p))));
        let m3 = m1.compose(&m1);
        assert!(!m3.reflect);
        assert!(close(m3.apply(p), m1.apply(m1.apply(p))));
    }

    #[test]
    fn inverse_roundtrip() {
        for reflect in [false, true] {
            let m = RigidMotion2::new(2.1, Point2::new(-3.0, 4.0), reflect);
            let p = Point2::new(1.5, -0.5);
            assert!(close(m.inverse().apply(m.apply(p)), p));
            assert!(close(m.apply(m.inverse().apply(p)), p));
        }
    }

    #[test]
    fn preserves_distances() {
        let m = RigidMotion2::new(0.4, Point2::new(10.0, 1.0), true);
        let (p, q) = (Point2::new(0.1, 0.2), Point2::new(-3.0, 7.0));
        assert!((m.apply(p).distance(m.apply(q)) - p.distance(q)).abs() < 1e-12);
    }

    #[test]
    fn segment_mapping() {
        let (a, b) = (Point2::new(1.0, 1.0), Point2::new(2.0, 1.0));
        let (c, d) = (Point2::new(0.0, 0.0), Point2::new(0.0, 1.0));
        let m = RigidMotion2::from_segments(a, b, c, d, false).unwrap();
        assert!(close(m.apply(a), c));
        assert!(close(m.apply(b), d));
        // a point left of a->b stays left of c->d
        let l = m.apply(Point2::new(1.5, 2.0));
        assert!((d - c).cross(l - c) > 0.0);
        let r = RigidMotion2::from_segments(a, b, c, d, true).unwrap();
        assert!(close(r.apply(b), d));
        let l = r.apply(Point2::new(1.5, 2.0));
        assert!((d - c).cross(l - c) < 0.0);
    }

    #[test]
    fn rotation_about_fixes_center() {
        let c = Point2::new(2.0, -1.0);
        let m = RigidMotion2::rotation_about(c, 1.1);
        assert!(close(m.apply(c), c));
    }
}
