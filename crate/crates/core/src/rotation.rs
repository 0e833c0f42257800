//! Composition of planar rotations and the location of the composed centre.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geom::predicates::point_segment_distance;
use crate::geom::{convex_hull_2d, Point2, RigidMotion2, Tolerance, Vector2};

/// Residual total angle (mod 2 pi) below which a composition is a translation.
const TRANSLATION_ANGLE_EPS: f64 = 1e-12;

/// Counterclockwise rotation by `angle` about `center`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanarRotation {
    pub center: Point2,
    pub angle: f64,
}

impl PlanarRotation {
    pub fn new(center: Point2, angle: f64) -> Result<Self> {
        if !center.is_finite() || !angle.is_finite() {
            return Err(GeomError::DegenerateInput("non-finite rotation".into()));
        }
        Ok(Self { center, angle })
    }

    pub fn motion(&self) -> RigidMotion2 {
        RigidMotion2::rotation_about(self.center, self.angle)
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        self.motion().apply(p)
    }
}

/// Result of composing rotations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Composition {
    Rotation(PlanarRotation),
    Translation(Vector2),
}

impl Composition {
    pub fn apply(&self, p: Point2) -> Point2 {
        match self {
            Composition::Rotation(r) => r.apply(p),
            Composition::Translation(t) => p + *t,
        }
    }

    pub fn center(&self) -> Option<Point2> {
        match self {
            Composition::Rotation(r) => Some(r.center),
            Composition::Translation(_) => None,
        }
    }
}

/// Composes `rotations`, applying the first one first.
///
/// The total angle is the plain sum of the angles; when it is a multiple of
/// `2 pi` the result is a translation.
pub fn compose(rotations: &[PlanarRotation]) -> Result<Composition> {
    if rotations.is_empty() {
        return Err(GeomError::PreconditionViolation(
            "compose needs at least one rotation".into(),
        ));
    }
    if let [only] = rotations {
        return Ok(Composition::Rotation(*only));
    }
    let motion = rotations
        .iter()
        .fold(RigidMotion2::IDENTITY, |acc, r| r.motion().compose(&acc));
    let total: f64 = rotations.iter().map(|r| r.angle).sum();
    let residual = total - TAU * (total / TAU).round();
    if residual.abs() <= TRANSLATION_ANGLE_EPS {
        return Ok(Composition::Translation(motion.translation));
    }
    // fixed point: (I - R) p = t
    let (c, s) = motion.cos_sin();
    let t = motion.translation;
    let (a11, a12, a21, a22) = (1.0 - c, s, -s, 1.0 - c);
    let det = a11 * a22 - a12 * a21;
    let p = Point2::new((t.x * a22 - a12 * t.y) / det, (a11 * t.y - a21 * t.x) / det);
    Ok(Composition::Rotation(PlanarRotation {
        center: p,
        angle: total,
    }))
}

fn check_hypothesis(rotations: &[PlanarRotation]) -> Result<f64> {
    if rotations.is_empty() {
        return Err(GeomError::HypothesisViolation("no rotations".into()));
    }
    if let Some(r) = rotations.iter().find(|r| !(r.angle >= 0.0)) {
        return Err(GeomError::HypothesisViolation(format!(
            "negative angle {}",
            r.angle
        )));
    }
    let total: f64 = rotations.iter().map(|r| r.angle).sum();
    if !(total > 0.0 && total <= PI) {
        return Err(GeomError::HypothesisViolation(format!(
            "total angle {total} outside (0, pi]"
        )));
    }
    Ok(total)
}

/// Euclidean distance from `p` to the convex hull of `points`; zero inside.
pub fn distance_to_hull(points: &[Point2], p: Point2) -> f64 {
    if let Ok(hull) = convex_hull_2d(points) {
        if hull.clearance(p) >= 0.0 {
            return 0.0;
        }
    }
    let mut best = f64::INFINITY;
    for (i, &a) in points.iter().enumerate() {
        best = best.min(a.distance(p));
        for &b in &points[i + 1..] {
            if a != b {
                best = best.min(point_segment_distance(p, a, b));
            }
        }
    }
    best
}

/// Distance from the composed centre to the convex hull of the centres.
pub fn hull_distance(rotations: &[PlanarRotation]) -> Result<f64> {
    check_hypothesis(rotations)?;
    let centers: Vec<Point2> = rotations.iter().map(|r| r.center).collect();
    match compose(rotations)? {
        Composition::Rotation(r) => Ok(distance_to_hull(&centers, r.center)),
        Composition::Translation(_) => unreachable!("total angle is in (0, pi]"),
    }
}

fn centers_tolerance(rotations: &[PlanarRotation]) -> Tolerance {
    let mut diameter: f64 = 0.0;
    for (i, a) in rotations.iter().enumerate() {
        for b in &rotations[i + 1..] {
            diameter = diameter.max(a.center.distance(b.center));
        }
    }
    Tolerance::for_diameter(if diameter > 0.0 { diameter } else { 1.0 })
}

/// True iff the composed centre lies in the convex hull of the centres,
/// within the centres' tolerance.
pub fn hull_membership_check(rotations: &[PlanarRotation]) -> Result<bool> {
    let d = hull_distance(rotations)?;
    Ok(d <= centers_tolerance(rotations).eps)
}

/// Distance from the composed centre to the angle-weighted mean of the centres.
pub fn weighted_center_discrepancy(rotations: &[PlanarRotation]) -> Result<f64> {
    let total = check_hypothesis(rotations)?;
    let mean = rotations
        .iter()
        .fold(Point2::ORIGIN, |acc, r| acc + r.center * (r.angle / total));
    match compose(rotations)? {
        Composition::Rotation(r) => Ok(r.center.distance(mean)),
        Composition::Translation(_) => unreachable!("total angle is in (0, pi]"),
    }
}
