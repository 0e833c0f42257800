//! Instance generators: random convex polygons, nested prismatoids and
//! prismoids, regular polygons, and a hexagon without the RM-property.

use std::f64::consts::{PI, TAU};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::band::{build_band, NestedPrismatoid};
use crate::error::{GeomError, Result};
use crate::geom::{convex_hull_2d, ConvexPolygon, Point2, PolyChain};
use crate::opening::VertexOpeningConfig;
use crate::rm::{find_rm_property, RmWitness};
use crate::unfold::{assemble, default_attach_b, find_safe_cuts, overlap_verdict, CutPlan, FaceId};

/// Clearance of A inside B, as a fraction of B's diameter.
pub const NESTING_MARGIN: f64 = 0.02;
/// Placement attempts per base polygon.
pub const MAX_PLACEMENT_ATTEMPTS: usize = 1000;
/// Fresh base polygons tried before giving up on a nested pair.
pub const MAX_BASE_ROUNDS: usize = 10;
/// Default sharpness of [`spiked_hexagon`].
pub const DEFAULT_SPIKE_SHARPNESS: f64 = 0.8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub n_b: usize,
    pub n_a: usize,
    pub z: f64,
    pub seed: u64,
    /// Range for the ratio of A's diameter to B's.
    pub scale: (f64, f64),
    pub margin: f64,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            n_b: 14,
            n_a: 16,
            z: 0.2,
            seed: 0,
            scale: (0.25, 0.6),
            margin: NESTING_MARGIN,
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_b < 3 || self.n_a < 3 {
            return Err(GeomError::InvalidParameter(format!(
                "vertex counts ({}, {}) below 3",
                self.n_b, self.n_a
            )));
        }
        let (lo, hi) = self.scale;
        if !(lo > 0.0 && lo <= hi && hi < 1.0) {
            return Err(GeomError::InvalidParameter(format!(
                "nesting scale range ({lo}, {hi}) not inside (0, 1)"
            )));
        }
        if !(self.z >= 0.0 && self.z.is_finite()) {
            return Err(GeomError::DegenerateHeight(self.z));
        }
        if !(self.margin >= 0.0) {
            return Err(GeomError::InvalidParameter(format!(
                "margin {}",
                self.margin
            )));
        }
        Ok(())
    }
}

fn disk_point(rng: &mut impl Rng) -> Point2 {
    let r = rng.gen::<f64>().sqrt();
    Point2::from_angle(rng.gen_range(0.0..TAU)) * r
}

fn normalized(poly: &ConvexPolygon) -> ConvexPolygon {
    let c = poly.centroid();
    let s = 1.0 / poly.diameter();
    poly.translated(Point2::ORIGIN - c)
        .scaled_about(Point2::ORIGIN, s)
}

/// Random strictly convex ccw `n`-gon of diameter 1 centred on its centroid.
///
/// The vertices are a random subset of the hull of uniform disk points; the
/// point count doubles until the hull is large enough.
pub fn convex_polygon_from(rng: &mut impl Rng, n: usize) -> Result<ConvexPolygon> {
    if n < 3 {
        return Err(GeomError::InvalidParameter(format!("{n} vertices")));
    }
    let mut m = (4 * n).max(16);
    loop {
        let pts: Vec<Point2> = (0..m).map(|_| disk_point(rng)).collect();
        let hull = convex_hull_2d(&pts)?;
        if hull.len() >= n {
            let mut keep = sample(rng, hull.len(), n).into_vec();
            keep.sort_unstable();
            let poly = ConvexPolygon::new(keep.into_iter().map(|k| hull.vertex(k)).collect())?;
            return Ok(normalized(&poly));
        }
        m *= 2;
    }
}

pub fn random_convex_polygon(n: usize, seed: u64) -> Result<ConvexPolygon> {
    convex_polygon_from(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

fn place_inside(
    rng: &mut impl Rng,
    base: &ConvexPolygon,
    shape: &ConvexPolygon,
    cfg: &GenConfig,
) -> Result<ConvexPolygon> {
    let margin = cfg.margin * base.diameter();
    let (lo, hi) = base.vertices().iter().fold(
        (
            Point2::new(f64::INFINITY, f64::INFINITY),
            Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        ),
        |(lo, hi), p| {
            (
                Point2::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point2::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        },
    );
    for _ in 0..MAX_PLACEMENT_ATTEMPTS {
        let s = if cfg.scale.0 == cfg.scale.1 {
            cfg.scale.0
        } else {
            rng.gen_range(cfg.scale.0..cfg.scale.1)
        };
        let turn = rng.gen_range(0.0..TAU);
        let at = Point2::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        let c = shape.centroid();
        let k = s * base.diameter() / shape.diameter();
        let top = shape.map(|v| at + (v - c).rotated(turn) * k)?;
        if top.vertices().iter().all(|&v| base.clearance(v) >= margin) {
            return Ok(top);
        }
    }
    Err(GeomError::PlacementFailure {
        attempts: MAX_PLACEMENT_ATTEMPTS,
    })
}

pub fn nested_prismatoid_from_config(cfg: &GenConfig) -> Result<NestedPrismatoid> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..MAX_BASE_ROUNDS {
        let base = convex_polygon_from(&mut rng, cfg.n_b)?;
        let shape = convex_polygon_from(&mut rng, cfg.n_a)?;
        match place_inside(&mut rng, &base, &shape, cfg) {
            Ok(top) => return NestedPrismatoid::new(base, top, cfg.z),
            Err(GeomError::PlacementFailure { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(GeomError::PlacementFailure {
        attempts: MAX_BASE_ROUNDS * MAX_PLACEMENT_ATTEMPTS,
    })
}

/// Random B of diameter 1 with a random smaller A placed at least
/// [`NESTING_MARGIN`] inside it.
pub fn random_nested_prismatoid(
    n_b: usize,
    n_a: usize,
    z: f64,
    seed: u64,
) -> Result<NestedPrismatoid> {
    nested_prismatoid_from_config(&GenConfig {
        n_b,
        n_a,
        z,
        seed,
        ..GenConfig::default()
    })
}

fn line_intersection(n1: Point2, h1: f64, n2: Point2, h2: f64) -> Option<Point2> {
    let det = n1.cross(n2);
    if det.abs() < 1e-15 {
        return None;
    }
    Some(Point2::new(
        (h1 * n2.y - h2 * n1.y) / det,
        (n1.x * h2 - n2.x * h1) / det,
    ))
}

/// Random nested prismoid: A has B's edge directions with independently
/// drawn support values, so every lateral face is a trapezoid.
pub fn random_prismoid(n: usize, z: f64, seed: u64) -> Result<NestedPrismatoid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_BASE_ROUNDS {
        let base = convex_polygon_from(&mut rng, n)?;
        if let Some(top) = prismoid_top(&mut rng, &base) {
            return NestedPrismatoid::new(base, top, z);
        }
    }
    Err(GeomError::PlacementFailure {
        attempts: MAX_BASE_ROUNDS * MAX_PLACEMENT_ATTEMPTS,
    })
}

fn prismoid_top(rng: &mut impl Rng, base: &ConvexPolygon) -> Option<ConvexPolygon> {
    let n = base.len();
    let normals: Vec<Point2> = (0..n).map(|i| base.edge_normal(i) * -1.0).collect();
    let support: Vec<f64> = (0..n).map(|i| normals[i].dot(base.vertex(i))).collect();
    let margin = NESTING_MARGIN * base.diameter();
    for _ in 0..MAX_PLACEMENT_ATTEMPTS {
        let s = rng.gen_range(0.25..0.6);
        let shift = disk_point(rng) * 0.1;
        let h: Vec<f64> = (0..n)
            .map(|i| s * support[i] + normals[i].dot(shift) + rng.gen_range(-0.02..0.02) * s)
            .collect();
        let verts: Option<Vec<Point2>> = (0..n)
            .map(|i| {
                let k = (i + n - 1) % n;
                line_intersection(normals[k], h[k], normals[i], h[i])
            })
            .collect();
        let Some(verts) = verts else { continue };
        let Ok(top) = ConvexPolygon::new(verts) else {
            continue;
        };
        // every edge must survive with B's direction
        let parallel = (0..n).all(|i| {
            let (a, b) = top.edge(i);
            let (c, d) = base.edge(i);
            (b - a).dot(d - c) > 0.0
        });
        if parallel && top.vertices().iter().all(|&v| base.clearance(v) >= margin) {
            return Some(top);
        }
    }
    None
}

/// Unit-circumradius regular `n`-gon with a vertex at (1, 0).
pub fn regular_polygon(n: usize) -> Result<ConvexPolygon> {
    if n < 3 {
        return Err(GeomError::InvalidParameter(format!("{n} vertices")));
    }
    ConvexPolygon::new(
        (0..n)
            .map(|k| Point2::from_angle(TAU * k as f64 / n as f64))
            .collect(),
    )
}

/// Convex hexagon with three acute corners and shallow vertices between
/// them. `sharpness` in (0, 1): at 1 the hexagon degenerates to an
/// equilateral triangle, toward 0 it relaxes to a near-regular hexagon.
pub fn spiked_hexagon(sharpness: f64) -> Result<ConvexPolygon> {
    if !(sharpness > 0.0 && sharpness < 1.0) {
        return Err(GeomError::InvalidParameter(format!(
            "sharpness {sharpness} outside (0, 1)"
        )));
    }
    let push = 0.5 * (1.0 - sharpness);
    let corner = |k: usize| Point2::from_angle(PI / 2.0 + TAU * k as f64 / 3.0);
    let mut v = Vec::with_capacity(6);
    for k in 0..3 {
        let (a, b) = (corner(k), corner(k + 1));
        let mid = a.lerp(b, 0.5);
        v.push(a);
        v.push(mid + mid * (push / mid.norm()));
    }
    ConvexPolygon::new(v)
}

/// Every chain of every (edge, apex) split of `poly` has an internal angle
/// below a right angle.
pub fn all_splits_have_acute_angle(poly: &ConvexPolygon) -> bool {
    let n = poly.len();
    (0..n).all(|a| {
        let b = (a + 1) % n;
        (0..n).filter(|&c| c != a && c != b).all(|apex| {
            let w = RmWitness { a, b, apex };
            let acute = |chain: crate::geom::PolyChain| {
                (1..chain.len() - 1).any(|i| chain.convex_angle(i).is_ok_and(|t| t < PI / 2.0))
            };
            acute(w.a_chain(poly)) || acute(w.b_chain(poly))
        })
    })
}

/// Smallest sharpness (to `tol`) at which [`spiked_hexagon`] loses the
/// RM-property, by bisection over `(lo, hi)`; `lo` must have the property
/// and `hi` must not.
pub fn rm_threshold_sharpness(mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let has = |s: f64| spiked_hexagon(s).map(|p| !find_rm_property(&p).is_empty());
    if !has(lo)? || has(hi)? {
        return Err(GeomError::InvalidParameter(format!(
            "bracket ({lo}, {hi}) does not straddle the threshold"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if has(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// A band-unfolding that overlaps, and the search effort spent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapDemo {
    pub base: ConvexPolygon,
    pub top: ConvexPolygon,
    pub z: f64,
    pub plan: CutPlan,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlapSearchReport {
    pub demo: Option<OverlapDemo>,
    /// Unfoldings examined.
    pub trials: usize,
    /// Unfoldings in which A overlapped something.
    pub overlapping: usize,
}

/// Heights tried by [`find_overlap_demo`].
pub const DEMO_HEIGHTS: [f64; 7] = [0.01, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0];

/// Searches random bases around `top` and every height in [`DEMO_HEIGHTS`],
/// safe cut and A edge for an unfolding in which A overlaps another face.
/// `budget` caps the number of unfoldings examined.
pub fn find_overlap_demo(
    top: &ConvexPolygon,
    budget: usize,
    seed: u64,
) -> Result<OverlapSearchReport> {
    if !find_rm_property(top).is_empty() {
        return Err(GeomError::PreconditionViolation(
            "top has the RM-property".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = OverlapSearchReport {
        demo: None,
        trials: 0,
        overlapping: 0,
    };
    let d = top.diameter();
    let center = top.centroid();
    while report.trials < budget {
        let n = rng.gen_range(5..=12);
        let shape = convex_polygon_from(&mut rng, n)?;
        let k = d * rng.gen_range(2.0..4.0);
        let base = shape.map(|v| center + v * k)?;
        if top
            .vertices()
            .iter()
            .any(|&v| base.clearance(v) < NESTING_MARGIN * base.diameter())
        {
            continue;
        }
        for &z in &DEMO_HEIGHTS {
            let p = NestedPrismatoid::new(base.clone(), top.clone(), z * base.diameter())?;
            let band = build_band(&p)?;
            for cut in find_safe_cuts(&p, &band) {
                let attach_b = default_attach_b(&band, cut);
                for attach_a in 0..top.len() {
                    if report.trials >= budget {
                        return Ok(report);
                    }
                    report.trials += 1;
                    let layout = assemble(&p, &band, cut, attach_b, attach_a)?;
                    let v = overlap_verdict(&layout);
                    let Some((f, g)) = v.pair else { continue };
                    if f != FaceId::Top && g != FaceId::Top {
                        continue;
                    }
                    report.overlapping += 1;
                    if report.demo.is_none() {
                        report.demo = Some(OverlapDemo {
                            base: base.clone(),
                            top: top.clone(),
                            z: p.z(),
                            plan: CutPlan {
                                cut,
                                attach_b,
                                attach_a,
                                witness: None,
                            },
                        });
                        return Ok(report);
                    }
                }
            }
        }
    }
    Ok(report)
}

/// RM-property witnesses of `count` random polygons with vertex counts
/// drawn from `n_range`.
pub fn rm_property_survey(
    count: usize,
    n_range: (usize, usize),
    seed: u64,
) -> Result<Vec<(ConvexPolygon, Vec<RmWitness>)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(n_range.0..=n_range.1);
            let poly = convex_polygon_from(&mut rng, n)?;
            let ws = find_rm_property(&poly);
            Ok((poly, ws))
        })
        .collect()
}

/// Random hinge configuration: planar angle in (0, pi), height in (0, 5]
/// and `1..=max_fan` fan points, in clockwise order from `a` to `c`, taken
/// from the near side of a circle inside the wedge. Multi-point fans are
/// resampled until they lie on the convex hull with the hinge.
pub fn random_vertex_config(rng: &mut impl Rng, max_fan: usize) -> Result<VertexOpeningConfig> {
    let theta = rng.gen_range(0.05..PI - 0.01);
    let (lo, hi) = (PI - theta, PI);
    let make = |fan: Vec<Point2>, z: f64| {
        VertexOpeningConfig::new(
            Point2::new(-1.0, 0.0),
            Point2::ORIGIN,
            Point2::new(-theta.cos(), theta.sin()),
            fan,
            z,
        )
    };
    let z = rng.gen_range(0.01..5.0);
    let k = rng.gen_range(1..=max_fan.max(1));
    if k > 1 {
        for _ in 0..100 {
            let dir = rng.gen_range(lo..hi);
            let dist = rng.gen_range(0.3..2.0);
            let radius = dist * rng.gen_range(0.1..0.9);
            let centre = Point2::from_angle(dir) * dist;
            // arc of the circle facing the hinge
            let half = (radius / dist).acos();
            let back = (Point2::ORIGIN - centre).angle();
            let mut ts: Vec<f64> = (0..k).map(|_| rng.gen_range(-half..half)).collect();
            ts.sort_by(|x, y| x.total_cmp(y));
            let fan: Vec<Point2> = ts
                .iter()
                .map(|&t| centre + Point2::from_angle(back + t) * radius)
                .collect();
            let inside = fan.iter().all(|v| {
                let a = v.angle().rem_euclid(TAU);
                a > lo + 1e-3 && a < hi - 1e-3
            });
            if !inside {
                continue;
            }
            for fan in [fan.clone(), fan.into_iter().rev().collect()] {
                let cfg = make(fan, z)?;
                if cfg.validate_fan().is_ok() {
                    return Ok(cfg);
                }
            }
        }
    }
    let r = rng.gen_range(0.05..2.0);
    make(vec![Point2::from_angle(rng.gen_range(lo..hi)) * r], z)
}

/// Clockwise-curling convex chain of `m` vertices whose turns sum to at
/// most `max_turning`.
pub fn random_convex_chain(rng: &mut impl Rng, m: usize, max_turning: f64) -> Result<PolyChain> {
    if m < 2 {
        return Err(GeomError::InvalidParameter(format!("{m} chain vertices")));
    }
    let internal = m - 2;
    let total = rng.gen_range(0.0..max_turning);
    let weights: Vec<f64> = (0..internal).map(|_| rng.gen_range(0.05..1.0)).collect();
    let wsum: f64 = weights.iter().sum::<f64>().max(f64::MIN_POSITIVE);
    let mut heading = rng.gen_range(0.0..TAU);
    let mut pts = vec![Point2::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    )];
    for k in 0..m - 1 {
        if k > 0 {
            // keep each turn below pi so the chain stays convex
            heading -= (total * weights[k - 1] / wsum).min(PI - 0.01);
        }
        let len = rng.gen_range(0.2..1.0);
        let last = *pts.last().unwrap();
        pts.push(last + Point2::from_angle(heading) * len);
    }
    PolyChain::new(pts)
}

/// Convex chain with one internal angle replaced by an acute one.
pub fn random_acute_chain(rng: &mut impl Rng, m: usize) -> Result<PolyChain> {
    let m = m.max(3);
    let base = random_convex_chain(rng, m, PI / 2.0)?;
    let at = rng.gen_range(1..m - 1);
    let acute = rng.gen_range(0.02..PI / 2.0 - 1e-3);
    let pts = base.vertices();
    let mut out = pts[..=at].to_vec();
    let incoming = (pts[at] - pts[at - 1]).angle();
    let mut heading = incoming - (PI - acute);
    for k in at..m - 1 {
        if k > at {
            heading += base.turn_at(k)?;
        }
        let len = pts[k].distance(pts[k + 1]);
        let last = *out.last().unwrap();
        out.push(last + Point2::from_angle(heading) * len);
    }
    PolyChain::new(out)
}
