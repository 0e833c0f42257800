//! How lifting one boundary chain of a band opens the angles of the other.
//!
//! A hinge `b` with planar neighbours `a` and `c` (left turn, angle
//! `theta <= pi`) is joined to lifted points `v_1..v_k` at a common height.
//! The lifted angle `phi` is the sum of the 3D angles at `b` along
//! `a, v_1, ..., v_k, c`, which is also the length of the corresponding path
//! of arcs on the unit sphere of directions at `b`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::band::{Band, NestedPrismatoid};
use crate::error::{GeomError, Result};
use crate::geom::{orientation, Curl, Orientation, Point2, Point3, PolyChain};

/// Arguments of `acos` this far outside [-1, 1] are clamped; further is an error.
pub const ACOS_CLAMP: f64 = 1e-12;
/// Finite-difference step for monotonicity checks.
pub const FD_STEP: f64 = 1e-4;
/// Allowed negative slack for monotonicity checks.
pub const MONOTONE_SLACK: f64 = 1e-8;
/// Triple-product slack for the fan cone convexity test.
const CONE_EPS: f64 = 1e-12;

fn acos_checked(x: f64) -> Result<f64> {
    if x.is_nan() || x.abs() > 1.0 + ACOS_CLAMP {
        return Err(GeomError::DomainError(x));
    }
    Ok(x.clamp(-1.0, 1.0).acos())
}

/// The lifted angle for `a = (-1,0,0)`, `b = 0`, `c = (-cos t, sin t, 0)` and
/// `v = (x, y, z)`:
///
/// `phi = acos(-x / r) + acos((-x cos t + y sin t) / r)`, `r = |v|`.
pub fn phi_closed_form(theta: f64, x: f64, y: f64, z: f64) -> Result<f64> {
    let r = (x * x + y * y + z * z).sqrt();
    if r == 0.0 || !r.is_finite() {
        return Err(GeomError::DegenerateVector(format!(
            "v = ({x}, {y}, {z}) coincides with the hinge"
        )));
    }
    let first = acos_checked(-x / r)?;
    let second = acos_checked((-x * theta.cos() + y * theta.sin()) / r)?;
    Ok(first + second)
}

/// The z-derivative exactly as it is usually printed alongside the closed
/// form. It lacks a positive `1 / r^3` factor, so only its sign is meaningful.
pub fn phi_derivative_printed(theta: f64, x: f64, y: f64, z: f64) -> f64 {
    let r2 = x * x + y * y + z * z;
    let w = -x * theta.cos() + y * theta.sin();
    z * (-x / (1.0 - x * x / r2).sqrt() + w / (1.0 - w * w / r2).sqrt())
}

/// Analytic z-derivative of [`phi_closed_form`].
pub fn phi_derivative(theta: f64, x: f64, y: f64, z: f64) -> f64 {
    let r2 = x * x + y * y + z * z;
    phi_derivative_printed(theta, x, y, z) / (r2 * r2.sqrt())
}

/// A hinge `b` in the plane with neighbours `a`, `c` and a fan of points
/// lifted to a common height.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexOpeningConfig {
    pub a: Point2,
    pub b: Point2,
    pub c: Point2,
    /// Projections of the lifted points, in fan order from `a` to `c`.
    pub fan: Vec<Point2>,
    pub z: f64,
}

impl VertexOpeningConfig {
    /// Checks that the planar angle is in (0, pi] and the height is
    /// non-negative. Fan convexity is checked separately by
    /// [`VertexOpeningConfig::validate_fan`].
    pub fn new(a: Point2, b: Point2, c: Point2, fan: Vec<Point2>, z: f64) -> Result<Self> {
        if fan.is_empty() {
            return Err(GeomError::PreconditionViolation("empty fan".into()));
        }
        if !(z >= 0.0 && z.is_finite()) {
            return Err(GeomError::DegenerateHeight(z));
        }
        let cfg = Self { a, b, c, fan, z };
        let theta = cfg.theta()?;
        if !(theta > 0.0 && theta <= PI + 1e-12) {
            return Err(GeomError::ConvexityViolation(format!(
                "planar angle {theta} is not in (0, pi]"
            )));
        }
        Ok(cfg)
    }

    /// Builds from lifted points, which must share one height.
    pub fn from_lifted(a: Point2, b: Point2, c: Point2, lifted: &[Point3]) -> Result<Self> {
        let z = lifted
            .first()
            .ok_or_else(|| GeomError::PreconditionViolation("empty fan".into()))?
            .z;
        if lifted
            .iter()
            .any(|v| (v.z - z).abs() > 1e-12 * z.abs().max(1.0))
        {
            return Err(GeomError::PreconditionViolation(
                "lifted points must share one height".into(),
            ));
        }
        Self::new(a, b, c, lifted.iter().map(|v| v.xy()).collect(), z)
    }

    /// Standard coordinates for a single lifted point: `a = (-1, 0)`, `b` at the
    /// origin, `c` at angle `theta` from `a`.
    pub fn canonical(theta: f64, x: f64, y: f64, z: f64) -> Result<Self> {
        Self::new(
            Point2::new(-1.0, 0.0),
            Point2::ORIGIN,
            Point2::new(-theta.cos(), theta.sin()),
            vec![Point2::new(x, y)],
            z,
        )
    }

    /// Planar angle at `b` on the left of `a -> b -> c`.
    pub fn theta(&self) -> Result<f64> {
        PolyChain::new(vec![self.a, self.b, self.c])?.angle_at(1)
    }

    pub fn lifted(&self) -> Vec<Point3> {
        self.fan.iter().map(|v| v.lift(self.z)).collect()
    }

    /// Direction vectors from the hinge along the path `a, v_1..v_k, c`.
    fn path_vectors(&self) -> Result<Vec<Point3>> {
        let hinge = self.b.lift(0.0);
        let mut out = Vec::with_capacity(self.fan.len() + 2);
        out.push(self.a.lift(0.0) - hinge);
        out.extend(self.lifted().into_iter().map(|v| v - hinge));
        out.push(self.c.lift(0.0) - hinge);
        let scale = out.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if let Some(i) = out.iter().position(|v| v.norm() <= 1e-12 * scale) {
            return Err(GeomError::DegenerateVector(format!(
                "path vector {i} has zero length"
            )));
        }
        Ok(out)
    }

    /// Fan projections lie in the closed wedge of `a, b, c` in clockwise
    /// angular order from `a` to `c`, and the lifted fan lies on the convex
    /// hull together with `a`, `b`, `c`.
    pub fn validate_fan(&self) -> Result<()> {
        let scale = self.a.distance(self.b).max(self.c.distance(self.b));
        let at_hinge = |v: Point2| v.distance(self.b) <= 1e-12 * scale;
        let theta = self.theta()?;
        for (i, &v) in self.fan.iter().enumerate() {
            if at_hinge(v) {
                continue;
            }
            let left_of_ab = orientation(self.a, self.b, v) != Orientation::Clockwise;
            let left_of_bc = orientation(self.b, self.c, v) != Orientation::Clockwise;
            let inside = if theta < PI {
                left_of_ab && left_of_bc
            } else {
                left_of_ab
            };
            if !inside {
                return Err(GeomError::ConvexityViolation(format!(
                    "fan point {i} projects outside the convex side"
                )));
            }
        }
        let dirs: Vec<Point2> = std::iter::once(self.a)
            .chain(self.fan.iter().copied().filter(|&v| !at_hinge(v)))
            .chain(std::iter::once(self.c))
            .map(|p| p - self.b)
            .collect();
        for w in dirs.windows(2) {
            if w[0].cross(w[1]) > 1e-12 * w[0].norm() * w[1].norm() {
                return Err(GeomError::ConvexityViolation(
                    "fan is not in angular order from a to c".into(),
                ));
            }
        }
        // the cone from the hinge over a, v_1..v_k, c must be convex
        let hinge = self.b.lift(0.0);
        let mut dirs: Vec<Point3> = std::iter::once(self.a.lift(0.0))
            .chain(self.lifted().into_iter().filter(|v| !at_hinge(v.xy())))
            .chain(std::iter::once(self.c.lift(0.0)))
            .map(|p| p - hinge)
            .filter_map(|v| v.normalized())
            .collect();
        dirs.dedup();
        let m = dirs.len();
        if m >= 3 {
            let dets: Vec<f64> = (0..m)
                .map(|i| dirs[i].cross(dirs[(i + 1) % m]).dot(dirs[(i + 2) % m]))
                .collect();
            let pos = dets.iter().any(|&d| d > CONE_EPS);
            let neg = dets.iter().any(|&d| d < -CONE_EPS);
            if pos && neg {
                return Err(GeomError::ConvexityViolation(
                    "fan does not lie on the convex hull with a, b, c".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Sum of the 3D angles at the hinge along `a, v_1, ..., v_k, c`.
pub fn phi_from_geometry(cfg: &VertexOpeningConfig) -> Result<f64> {
    let vs = cfg.path_vectors()?;
    Ok(vs.windows(2).map(|w| w[0].angle_to(w[1])).sum())
}

/// Length of the arc path through the normalized path vectors and of the
/// geodesic arc from `a` to `c`, both measured on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereArcs {
    pub path: f64,
    pub geodesic: f64,
}

pub fn sphere_arcs(cfg: &VertexOpeningConfig) -> Result<SphereArcs> {
    let units: Vec<Point3> = cfg
        .path_vectors()?
        .into_iter()
        .map(|v| v.normalized().expect("nonzero"))
        .collect();
    let arc = |u: Point3, w: Point3| acos_checked(u.dot(w).clamp(-1.0, 1.0));
    let mut path = 0.0;
    for w in units.windows(2) {
        path += arc(w[0], w[1])?;
    }
    Ok(SphereArcs {
        path,
        geodesic: arc(units[0], *units.last().unwrap())?,
    })
}

/// True iff the lifted angle strictly opens the planar one and stays within
/// pi, and the arc path on the sphere is longer than the geodesic.
pub fn check_opening(cfg: &VertexOpeningConfig) -> Result<bool> {
    cfg.validate_fan()?;
    let theta = cfg.theta()?;
    let phi = phi_from_geometry(cfg)?;
    let arcs = sphere_arcs(cfg)?;
    Ok(theta < phi && phi <= PI + 1e-12 && arcs.path > arcs.geodesic)
}

/// Reflects every fan point through the hinge (same height) and returns the
/// lifted angles on the convex side and on the reflex side, `(phi, phi')`.
/// For a single lifted point `phi + phi' = 2 pi`.
pub fn reflection_identity(cfg: &VertexOpeningConfig) -> Result<(f64, f64)> {
    let phi = phi_from_geometry(cfg)?;
    // Reflected points are met in reverse angular order going around the reflex side.
    let reflected: Vec<Point2> = cfg.fan.iter().rev().map(|&v| cfg.b * 2.0 - v).collect();
    let mirror = VertexOpeningConfig {
        fan: reflected,
        ..cfg.clone()
    };
    let phi_prime = phi_from_geometry(&mirror)?;
    Ok((phi, phi_prime))
}

/// Summary of a monotonicity scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub monotone: bool,
    pub min_step: f64,
    pub min_slope: f64,
    /// Samples where the printed derivative and the finite difference have
    /// opposite signs (both beyond slack).
    pub printed_sign_mismatches: usize,
}

pub fn monotonicity_report(
    theta: f64,
    x: f64,
    y: f64,
    z_samples: &[f64],
) -> Result<MonotonicityReport> {
    if z_samples.iter().any(|z| !(*z >= 0.0 && z.is_finite())) {
        return Err(GeomError::PreconditionViolation(
            "z samples must be finite and non-negative".into(),
        ));
    }
    if z_samples.windows(2).any(|w| w[1] <= w[0]) {
        return Err(GeomError::PreconditionViolation(
            "z samples must be strictly increasing".into(),
        ));
    }
    let phi = |z: f64| phi_closed_form(theta, x, y, z);
    let values = z_samples
        .iter()
        .map(|&z| phi(z))
        .collect::<Result<Vec<_>>>()?;
    let min_step = values
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    let mut min_slope = f64::INFINITY;
    let mut mismatches = 0;
    for &z in z_samples {
        let slope = if z >= FD_STEP {
            (phi(z + FD_STEP)? - phi(z - FD_STEP)?) / (2.0 * FD_STEP)
        } else {
            (phi(z + FD_STEP)? - phi(z)?) / FD_STEP
        };
        min_slope = min_slope.min(slope);
        let printed = phi_derivative_printed(theta, x, y, z);
        if (printed < -MONOTONE_SLACK && slope > MONOTONE_SLACK)
            || (printed > MONOTONE_SLACK && slope < -MONOTONE_SLACK)
        {
            mismatches += 1;
        }
    }
    Ok(MonotonicityReport {
        monotone: min_step >= -MONOTONE_SLACK && min_slope >= -MONOTONE_SLACK,
        min_step,
        min_slope,
        printed_sign_mismatches: mismatches,
    })
}

/// True iff `phi(z)` is nondecreasing over the samples and every
/// finite-difference slope is at least `-MONOTONE_SLACK`.
pub fn check_monotonic(theta: f64, x: f64, y: f64, z_samples: &[f64]) -> Result<bool> {
    Ok(monotonicity_report(theta, x, y, z_samples)?.monotone)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BandSide {
    /// L_B, opened from its convex side.
    B,
    /// L_A, opened from its reflex side.
    A,
}

/// Opening of one chain vertex: planar angle, lifted angle, and their difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VertexOpening {
    pub vertex: usize,
    pub theta: f64,
    pub phi: f64,
    pub omega: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpeningReport {
    pub side: BandSide,
    pub z: f64,
    pub records: Vec<VertexOpening>,
}

impl OpeningReport {
    pub fn min_omega(&self) -> f64 {
        self.records
            .iter()
            .map(|r| r.omega)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_phi(&self) -> f64 {
        self.records
            .iter()
            .map(|r| r.phi)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Hinge configuration at vertex `i` of B: neighbours along B and the fan of
/// A vertices joined to it.
pub fn b_vertex_config(p: &NestedPrismatoid, band: &Band, i: usize) -> Result<VertexOpeningConfig> {
    let n = p.base().len();
    let fan = band
        .fan_at_b(i)
        .into_iter()
        .map(|j| p.top().vertex(j))
        .collect();
    VertexOpeningConfig::new(
        p.base().vertex(i + n - 1),
        p.base().vertex(i),
        p.base().vertex(i + 1),
        fan,
        p.z(),
    )
}

/// Sum of the band's face angles at vertex `j` of A, with A at the height of `p`.
pub fn band_angle_at_a(p: &NestedPrismatoid, band: &Band, j: usize) -> Result<f64> {
    let n = p.top().len();
    let hinge = p.top_point(j);
    let mut path = vec![p.top_point(j + n - 1) - hinge];
    path.extend(
        band.fan_at_a(j)
            .into_iter()
            .map(|i| p.base_point(i) - hinge),
    );
    path.push(p.top_point(j + 1) - hinge);
    Ok(path.windows(2).map(|w| w[0].angle_to(w[1])).sum())
}

/// Per-vertex opening of L_B or L_A when A sits at the height of `p`.
///
/// On L_B the planar angle is B's interior angle and the lifted angle is the
/// band angle. On L_A the band lies on the reflex side; the reported lifted
/// angle is `2 pi` minus the band angle, so both sides read as openings of a
/// convex angle.
pub fn open_band_report(
    p: &NestedPrismatoid,
    band: &Band,
    side: BandSide,
) -> Result<OpeningReport> {
    let records = match side {
        BandSide::B => (0..p.base().len())
            .map(|i| {
                let cfg = b_vertex_config(p, band, i)?;
                let theta = p.base().interior_angle(i);
                let phi = phi_from_geometry(&cfg)?;
                Ok(VertexOpening {
                    vertex: i,
                    theta,
                    phi,
                    omega: phi - theta,
                })
            })
            .collect::<Result<Vec<_>>>()?,
        BandSide::A => (0..p.top().len())
            .map(|j| {
                let theta = p.top().interior_angle(j);
                let phi = TAU - band_angle_at_a(p, band, j)?;
                Ok(VertexOpening {
                    vertex: j,
                    theta,
                    phi,
                    omega: phi - theta,
                })
            })
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(OpeningReport {
        side,
        z: p.z(),
        records,
    })
}

/// Which way the chain of fan projections bends, if it is convex.
pub fn fan_curl(cfg: &VertexOpeningConfig) -> Option<Curl> {
    if cfg.fan.len() < 3 {
        return Some(Curl::Straight);
    }
    PolyChain::new(cfg.fan.clone()).ok()?.curl(1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEG120: f64 = 2.0 * PI / 3.0;

    #[test]
    fn closed_form_examples() {
        let phi0 = phi_closed_form(DEG120, 0.0, 1.0, 0.0).unwrap();
        assert!((phi0 - 2.0943951023931957).abs() < 1e-12);
        let far = phi_closed_form(DEG120, 0.0, 1.0, 1e6).unwrap();
        assert!((far - PI).abs() < 1e-5);
        let at1 = phi_closed_form(DEG120, 0.0, 1.0, 1.0).unwrap();
        let expected = PI / 2.0 + ((DEG120.sin()) / 2f64.sqrt()).acos();
        assert!((at1 - expected).abs() < 1e-14);
        assert!((at1 - 2.4826).abs() < 1e-4);
    }

    #[test]
    fn closed_form_rejects_origin() {
        assert!(phi_closed_form(1.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn geometry_matches_closed_form() {
        let cfg = VertexOpeningConfig::canonical(DEG120, 0.0, 1.0, 1.0).unwrap();
        let g = phi_from_geometry(&cfg).unwrap();
        let c = phi_closed_form(DEG120, 0.0, 1.0, 1.0).unwrap();
        assert!((g - c).abs() < 1e-12);
    }

    #[test]
    fn above_hinge_is_pi() {
        let cfg = VertexOpeningConfig::canonical(1.0, 0.0, 0.0, 0.5).unwrap();
        assert!((phi_from_geometry(&cfg).unwrap() - PI).abs() < 1e-14);
        let (phi, phi_prime) = reflection_identity(&cfg).unwrap();
        assert!((phi - PI).abs() < 1e-14 && (phi_prime - PI).abs() < 1e-14);
    }

    #[test]
    fn flat_fan_is_additive() {
        let cfg = VertexOpeningConfig::canonical(DEG120, 0.1, 0.7, 0.0).unwrap();
        let theta = cfg.theta().unwrap();
        assert!((phi_from_geometry(&cfg).unwrap() - theta).abs() < 1e-14);
        assert!(!check_opening(&cfg).unwrap());
        let (phi, phi_prime) = reflection_identity(&cfg).unwrap();
        assert!((phi - theta).abs() < 1e-14);
        assert!((phi_prime - (TAU - theta)).abs() < 1e-14);
    }

    #[test]
    fn reflection_sums_to_two_pi() {
        let cfg = VertexOpeningConfig::canonical(DEG120, 0.0, 1.0, 1.0).unwrap();
        let (phi, phi_prime) = reflection_identity(&cfg).unwrap();
        assert!((phi + phi_prime - TAU).abs() < 1e-12);
    }

    #[test]
    fn zigzag_fan_rejected() {
        let fan = [(80f64, 1.0), (60., 0.3), (40., 1.0), (20., 0.3)]
            .iter()
            .map(|&(deg, r)| Point2::from_angle(deg.to_radians()) * r)
            .collect();
        let cfg = VertexOpeningConfig::new(
            Point2::new(0.0, 2.0),
            Point2::ORIGIN,
            Point2::new(2.0, 0.0),
            fan,
            0.5,
        )
        .unwrap();
        assert!(matches!(
            check_opening(&cfg),
            Err(GeomError::ConvexityViolation(_))
        ));
    }

    #[test]
    fn monotone_reference_curve() {
        let zs: Vec<f64> = (0..=50).map(|k| k as f64 * 0.1).collect();
        let report = monotonicity_report(DEG120, 0.0, 1.0, &zs).unwrap();
        assert!(report.monotone);
        assert_eq!(report.printed_sign_mismatches, 0);
        let rev: Vec<f64> = zs.iter().rev().copied().collect();
        assert!(matches!(
            check_monotonic(DEG120, 0.0, 1.0, &rev),
            Err(GeomError::PreconditionViolation(_))
        ));
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let (t, x, y, z) = (1.9, 0.2, 0.8, 0.6);
        let h = 1e-6;
        let fd = (phi_closed_form(t, x, y, z + h).unwrap()
            - phi_closed_form(t, x, y, z - h).unwrap())
            / (2.0 * h);
        assert!((phi_derivative(t, x, y, z) - fd).abs() < 1e-7);
    }
}
