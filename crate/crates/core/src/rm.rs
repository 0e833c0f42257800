//! Radial monotonicity of polygonal chains, the RM-property of convex
//! polygons, chain openings and involutes.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::geom::{segment_distance, ConvexPolygon, Curl, Point2, PolyChain};

/// Sine threshold below which a chain turn counts as straight.
const CURL_EPS: f64 = 1e-12;
/// Slack on the `alpha + omega <= pi` bound.
const OPENING_SLACK: f64 = 1e-12;

/// True iff the distance from vertex `start` increases along the chain
/// beyond it: every circle about `v_start` meets that suffix once.
///
/// Per segment `(p, q)` this is `dot(q - p, p - v) >= 0`.
pub fn is_rm_from(chain: &PolyChain, start: usize) -> bool {
    rm_violation_from(chain, start).is_none()
}

/// First segment (by its start vertex) that moves back toward `v_start`.
pub fn rm_violation_from(chain: &PolyChain, start: usize) -> Option<usize> {
    let v = chain.vertex(start);
    let pts = chain.vertices();
    (start + 1..pts.len() - 1).find(|&k| (pts[k + 1] - pts[k]).dot(pts[k] - v) < 0.0)
}

/// Radially monotone with respect to every vertex.
pub fn is_rm(chain: &PolyChain) -> bool {
    (0..chain.len() - 1).all(|i| is_rm_from(chain, i))
}

/// An edge `(a, b)` with `b = a + 1` and an apex `c` such that the clockwise
/// path `a -> c` and the counterclockwise path `b -> c` are both RM.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RmWitness {
    pub a: usize,
    pub b: usize,
    pub apex: usize,
}

impl RmWitness {
    pub fn new(poly: &ConvexPolygon, edge: usize, apex: usize) -> Result<Self> {
        let n = poly.len();
        let w = Self {
            a: edge % n,
            b: (edge + 1) % n,
            apex,
        };
        w.verify(poly)?;
        Ok(w)
    }

    pub fn edge(&self) -> usize {
        self.a
    }

    /// Clockwise boundary path from `a` to the apex.
    pub fn a_chain(&self, poly: &ConvexPolygon) -> PolyChain {
        PolyChain::new(poly.cw_path(self.a, self.apex)).expect("polygon vertices are distinct")
    }

    /// Counterclockwise boundary path from `b` to the apex.
    pub fn b_chain(&self, poly: &ConvexPolygon) -> PolyChain {
        PolyChain::new(poly.ccw_path(self.b, self.apex)).expect("polygon vertices are distinct")
    }

    pub fn verify(&self, poly: &ConvexPolygon) -> Result<()> {
        let n = poly.len();
        if self.a >= n || self.apex >= n || self.b != (self.a + 1) % n {
            return Err(GeomError::UnverifiedWitness(format!(
                "({}, {}) / {} is not an edge and vertex of an {n}-gon",
                self.a, self.b, self.apex
            )));
        }
        if self.apex == self.a || self.apex == self.b {
            return Err(GeomError::UnverifiedWitness(
                "apex must differ from the edge endpoints".into(),
            ));
        }
        if !is_rm(&self.a_chain(poly)) {
            return Err(GeomError::UnverifiedWitness(format!(
                "cw path {} -> {} is not RM",
                self.a, self.apex
            )));
        }
        if !is_rm(&self.b_chain(poly)) {
            return Err(GeomError::UnverifiedWitness(format!(
                "ccw path {} -> {} is not RM",
                self.b, self.apex
            )));
        }
        Ok(())
    }
}

/// Every RM-property witness of `poly`, by exhaustive search over edges and
/// apex vertices. Empty when the polygon lacks the property.
pub fn find_rm_property(poly: &ConvexPolygon) -> Vec<RmWitness> {
    let n = poly.len();
    let mut out = Vec::new();
    for a in 0..n {
        let b = (a + 1) % n;
        for apex in (0..n).filter(|&c| c != a && c != b) {
            let w = RmWitness { a, b, apex };
            if is_rm(&w.a_chain(poly)) && is_rm(&w.b_chain(poly)) {
                out.push(w);
            }
        }
    }
    out
}

/// Nonnegative opening amounts for the internal vertices of a chain;
/// entry `k` belongs to vertex `k + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpeningVector(Vec<f64>);

impl OpeningVector {
    pub fn new(omegas: Vec<f64>) -> Result<Self> {
        if let Some(k) = omegas.iter().position(|w| !(*w >= 0.0 && w.is_finite())) {
            return Err(GeomError::InvalidOpening {
                vertex: k + 1,
                angle: omegas[k],
            });
        }
        Ok(Self(omegas))
    }

    pub fn zeros(chain: &PolyChain) -> Self {
        Self(vec![0.0; chain.len().saturating_sub(2)])
    }

    /// Opening at internal vertex `vertex` (1-based along the chain).
    pub fn at(&self, vertex: usize) -> f64 {
        self.0[vertex - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// First internal vertex with a positive opening.
    pub fn first_open(&self) -> Option<usize> {
        self.0.iter().position(|&w| w > 0.0).map(|k| k + 1)
    }
}

fn checked_curl(chain: &PolyChain) -> Result<Curl> {
    chain
        .curl(CURL_EPS)
        .ok_or_else(|| GeomError::ConvexityViolation("chain is not convex".into()))
}

fn validate_opening(chain: &PolyChain, omegas: &OpeningVector) -> Result<Curl> {
    let curl = checked_curl(chain)?;
    if omegas.0.len() != chain.len().saturating_sub(2) {
        return Err(GeomError::PreconditionViolation(format!(
            "{} openings for {} internal vertices",
            omegas.0.len(),
            chain.len().saturating_sub(2)
        )));
    }
    for i in 1..chain.len() - 1 {
        let angle = chain.convex_angle(i)? + omegas.at(i);
        if angle > PI + OPENING_SLACK {
            return Err(GeomError::InvalidOpening { vertex: i, angle });
        }
    }
    Ok(curl)
}

/// Opens each internal angle by its amount, keeping segment lengths and the
/// first segment fixed. Each opening rotates the suffix beyond its vertex
/// away from the convex side.
pub fn open_chain(chain: &PolyChain, omegas: &OpeningVector) -> Result<PolyChain> {
    let curl = validate_opening(chain, omegas)?;
    let sense = match curl {
        Curl::Clockwise => 1.0,
        Curl::CounterClockwise => -1.0,
        Curl::Straight => {
            if omegas.0.iter().any(|&w| w > 0.0) {
                // a straight chain cannot open further
                let k = omegas.first_open().unwrap();
                return Err(GeomError::InvalidOpening {
                    vertex: k,
                    angle: PI + omegas.at(k),
                });
            }
            return Ok(chain.clone());
        }
    };
    let pts = chain.vertices();
    let mut out = Vec::with_capacity(pts.len());
    out.push(pts[0]);
    let mut rotation = 0.0;
    for k in 0..pts.len() - 1 {
        if k >= 1 {
            rotation += sense * omegas.at(k);
        }
        if rotation == 0.0 {
            // unopened prefix stays bit-identical
            out.push(pts[k + 1]);
            continue;
        }
        let last = *out.last().unwrap();
        out.push(last + (pts[k + 1] - pts[k]).rotated(rotation));
    }
    PolyChain::new(out)
}

/// True iff the chain and its opening meet only at the first opened vertex
/// (the shared prefix before it is ignored).
pub fn check_noncrossing(chain: &PolyChain, omegas: &OpeningVector) -> Result<bool> {
    let opened = open_chain(chain, omegas)?;
    let Some(first) = omegas.first_open() else {
        return Ok(true);
    };
    let scale = chain.total_length();
    let tol = 1e-9 * scale;
    let orig = &chain.vertices()[first..];
    let moved = &opened.vertices()[first..];
    for s in 0..orig.len() - 1 {
        for t in 0..moved.len() - 1 {
            if s == 0 && t == 0 {
                // both leave the shared vertex; the rotation separates them
                continue;
            }
            let d = segment_distance(orig[s], orig[s + 1], moved[t], moved[t + 1]);
            if d <= tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Searches for an opening concentrated at one internal vertex that makes
/// the opened chain cross the original, trying `steps` evenly spaced amounts
/// in `(0, pi - alpha]` at each vertex.
pub fn find_crossing_opening(chain: &PolyChain, steps: usize) -> Result<Option<OpeningVector>> {
    checked_curl(chain)?;
    let m = chain.len();
    for i in 1..m.saturating_sub(1) {
        let room = PI - chain.convex_angle(i)?;
        for s in 1..=steps {
            let mut w = vec![0.0; m - 2];
            w[i - 1] = room * s as f64 / steps as f64;
            let omegas = OpeningVector(w);
            if !check_noncrossing(chain, &omegas)? {
                return Ok(Some(omegas));
            }
        }
    }
    Ok(None)
}

/// A circular arc swept from `start_angle` by the signed `sweep`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvoluteArc {
    pub center: Point2,
    pub radius: f64,
    pub start_angle: f64,
    pub sweep: f64,
}

impl InvoluteArc {
    pub fn point_at(&self, t: f64) -> Point2 {
        self.center + Point2::from_angle(self.start_angle + t * self.sweep) * self.radius
    }

    pub fn start(&self) -> Point2 {
        self.point_at(0.0)
    }

    pub fn end(&self) -> Point2 {
        self.point_at(1.0)
    }
}

/// The path of the chain's far endpoint as the chain is unwound from its far
/// end. Arc `k` is centred on internal vertex `k + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Involute {
    pub arcs: Vec<InvoluteArc>,
}

pub fn involute_of(chain: &PolyChain) -> Result<Involute> {
    if chain.segment_count() < 2 {
        return Err(GeomError::PreconditionViolation(
            "involute needs at least two segments".into(),
        ));
    }
    checked_curl(chain)?;
    let pts = chain.vertices();
    let lengths = chain.segment_lengths();
    let mut suffix = vec![0.0; pts.len()];
    for k in (0..pts.len() - 1).rev() {
        suffix[k] = suffix[k + 1] + lengths[k];
    }
    let arcs = (1..pts.len() - 1)
        .map(|k| {
            let out_dir = pts[k + 1] - pts[k];
            let in_dir = pts[k] - pts[k - 1];
            // signed turn from the incoming to the outgoing direction
            let turn = in_dir.cross(out_dir).atan2(in_dir.dot(out_dir));
            InvoluteArc {
                center: pts[k],
                radius: suffix[k],
                start_angle: out_dir.angle(),
                sweep: -turn,
            }
        })
        .collect();
    Ok(Involute { arcs })
}
