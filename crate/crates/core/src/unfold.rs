//! Band-unfoldings: develop the lateral band into the plane, attach B and A,
//! and decide overlap.

use serde::{Deserialize, Serialize};

use crate::band::{build_band, Band, BandVertex, NestedPrismatoid};
use crate::error::{GeomError, Result};
use crate::geom::predicates::ccw_angle;
use crate::geom::{
    clip_convex, convex_intersection_area, polygon_area, segment_distance, ConvexPolygon, Point2,
    Point3, RigidMotion2, Tolerance,
};
use crate::rm::{find_rm_property, RmWitness};

/// Intersection areas within this factor of the contact threshold, either
/// way, are flagged marginal.
pub const MARGINAL_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FaceId {
    /// Lateral triangle by band index.
    Band(usize),
    Base,
    Top,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacedFace {
    pub id: FaceId,
    /// Source vertex of each placed corner.
    pub corners: Vec<BandVertex>,
    pub polygon: Vec<Point2>,
    /// Takes the face's intrinsic coordinates to the plane.
    pub motion: RigidMotion2,
}

impl PlacedFace {
    /// Placed vertices in counterclockwise order.
    pub fn ccw_polygon(&self) -> Vec<Point2> {
        if polygon_signed_area(&self.polygon) < 0.0 {
            self.polygon.iter().rev().copied().collect()
        } else {
            self.polygon.clone()
        }
    }

    pub fn position_of(&self, v: BandVertex) -> Option<Point2> {
        self.corners
            .iter()
            .position(|&c| c == v)
            .map(|k| self.polygon[k])
    }
}

fn polygon_signed_area(poly: &[Point2]) -> f64 {
    let n = poly.len();
    0.5 * (0..n)
        .map(|k| poly[k].cross(poly[(k + 1) % n]))
        .sum::<f64>()
}

/// Face `child` is glued to face `parent` along the edge `edge`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    pub child: usize,
    pub parent: usize,
    pub edge: (BandVertex, BandVertex),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layout {
    pub faces: Vec<PlacedFace>,
    pub tree: Vec<Attachment>,
    pub eps: f64,
}

impl Layout {
    pub fn tolerance(&self) -> Tolerance {
        Tolerance::new(self.eps)
    }

    pub fn face(&self, id: FaceId) -> Option<&PlacedFace> {
        self.faces.iter().find(|f| f.id == id)
    }

    pub fn band_faces(&self) -> impl Iterator<Item = &PlacedFace> {
        self.faces
            .iter()
            .filter(|f| matches!(f.id, FaceId::Band(_)))
    }

    /// Layout holding only the band faces.
    pub fn band_only(&self) -> Layout {
        let faces: Vec<PlacedFace> = self.band_faces().cloned().collect();
        let n = faces.len();
        Layout {
            faces,
            tree: self
                .tree
                .iter()
                .filter(|a| a.child < n && a.parent < n)
                .copied()
                .collect(),
            eps: self.eps,
        }
    }
}

/// Which faces are to be cut off and where B and A stay attached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutPlan {
    /// The cut lateral edge.
    pub cut: usize,
    /// The uncut edge of B.
    pub attach_b: usize,
    /// The uncut edge of A.
    pub attach_a: usize,
    pub witness: Option<RmWitness>,
}

/// Intrinsic coordinates of a triangle: first corner at the origin, second
/// on the positive x-axis, third above.
fn intrinsic_triangle(p: Point3, q: Point3, r: Point3) -> [Point2; 3] {
    let d = p.distance(q);
    let (x, h) = foot(p, q, r);
    [Point2::ORIGIN, Point2::new(d, 0.0), Point2::new(x, h)]
}

/// Position of `r` along and away from the line `p q`.
fn foot(p: Point3, q: Point3, r: Point3) -> (f64, f64) {
    let u = q - p;
    let w = r - p;
    let d = u.norm();
    (u.dot(w) / d, u.cross(w).norm() / d)
}

/// Places `r` to the right of the directed placed edge `pp -> qp`.
fn place_right(pp: Point2, qp: Point2, p: Point3, q: Point3, r: Point3) -> Point2 {
    let (x, h) = foot(p, q, r);
    let u = (qp - pp) * (1.0 / pp.distance(qp));
    pp + u * x + Point2::new(u.y, -u.x) * h
}

fn band_face(p: &NestedPrismatoid, band: &Band, k: usize, placed: [Point2; 3]) -> PlacedFace {
    let corners = band.outward_corners(k);
    let [c0, c1, c2] = corners.map(|v| p.point(v));
    let intrinsic = intrinsic_triangle(c0, c1, c2);
    let motion =
        RigidMotion2::from_segments(intrinsic[0], intrinsic[1], placed[0], placed[1], false)
            .expect("lateral edges have positive length");
    PlacedFace {
        id: FaceId::Band(k),
        corners: corners.to_vec(),
        polygon: placed.to_vec(),
        motion,
    }
}

/// Develops the band cut open at lateral edge `cut`.
///
/// The cut edge's triangle goes down first with the edge from the origin
/// (B end) along the positive x-axis; each following triangle is unfolded
/// across the lateral edge it shares with its predecessor.
pub fn develop_band(p: &NestedPrismatoid, band: &Band, cut: usize) -> Result<Layout> {
    let n = band.len();
    if cut >= n {
        return Err(GeomError::InvalidCutEdge(cut));
    }
    let mut faces = Vec::with_capacity(n);
    let mut tree = Vec::with_capacity(n - 1);
    let e = band.lateral_edges()[cut];
    let (mut pb, mut pa) = (
        Point2::ORIGIN,
        Point2::new(p.base_point(e.b).distance(p.top_point(e.a)), 0.0),
    );
    for s in 0..n {
        let k = (cut + s) % n;
        let [vb, va, third] = band.corners(k);
        let (b3, a3, t3) = (p.point(vb), p.point(va), p.point(third));
        let pt = place_right(pb, pa, b3, a3, t3);
        // outward order: B-based (b_i, b_{i+1}, a_j), A-based (a_{j+1}, a_j, b_i)
        let placed = match third {
            BandVertex::B(_) => [pb, pt, pa],
            BandVertex::A(_) => [pt, pa, pb],
        };
        faces.push(band_face(p, band, k, placed));
        if s > 0 {
            tree.push(Attachment {
                child: s,
                parent: s - 1,
                edge: (vb, va),
            });
        }
        match third {
            BandVertex::B(_) => pb = pt,
            BandVertex::A(_) => pa = pt,
        }
    }
    Ok(Layout {
        faces,
        tree,
        eps: p.tolerance().eps,
    })
}

fn attach_polygon(
    poly: &ConvexPolygon,
    edge: usize,
    dst_p: Point2,
    dst_q: Point2,
    reflect: bool,
) -> (Vec<Point2>, RigidMotion2) {
    let (sp, sq) = poly.edge(edge);
    let motion = RigidMotion2::from_segments(sp, sq, dst_p, dst_q, reflect)
        .expect("polygon edges have positive length");
    let n = poly.len();
    let mut placed: Vec<Point2> = poly.vertices().iter().map(|&v| motion.apply(v)).collect();
    // the glued edge coincides exactly
    placed[edge] = dst_p;
    placed[(edge + 1) % n] = dst_q;
    (placed, motion)
}

/// Band development plus B glued across `attach_b` and A across `attach_a`,
/// without any witness check.
pub fn assemble(
    p: &NestedPrismatoid,
    band: &Band,
    cut: usize,
    attach_b: usize,
    attach_a: usize,
) -> Result<Layout> {
    if attach_b >= p.base().len() {
        return Err(GeomError::IndexOutOfRange {
            index: attach_b,
            valid: format!("0..{}", p.base().len()),
        });
    }
    if attach_a >= p.top().len() {
        return Err(GeomError::IndexOutOfRange {
            index: attach_a,
            valid: format!("0..{}", p.top().len()),
        });
    }
    let mut layout = develop_band(p, band, cut)?;
    let n = band.len();
    let slot = |k: usize| (k + n - cut) % n;

    // B is seen from below, so it is mirrored onto the far side of its edge.
    let tb = slot(band.triangle_on_b_edge(attach_b));
    let (nb, na) = (p.base().len(), p.top().len());
    let fb = &layout.faces[tb];
    let q0 = fb.position_of(BandVertex::B(attach_b)).unwrap();
    let q1 = fb.position_of(BandVertex::B((attach_b + 1) % nb)).unwrap();
    let (poly_b, motion_b) = attach_polygon(p.base(), attach_b, q0, q1, true);

    let ta = slot(band.triangle_on_a_edge(attach_a));
    let fa = &layout.faces[ta];
    let r0 = fa.position_of(BandVertex::A(attach_a)).unwrap();
    let r1 = fa.position_of(BandVertex::A((attach_a + 1) % na)).unwrap();
    let (poly_a, motion_a) = attach_polygon(p.top(), attach_a, r0, r1, false);

    let ib = layout.faces.len();
    layout.faces.push(PlacedFace {
        id: FaceId::Base,
        corners: (0..nb).map(BandVertex::B).collect(),
        polygon: poly_b,
        motion: motion_b,
    });
    layout.tree.push(Attachment {
        child: ib,
        parent: tb,
        edge: (BandVertex::B(attach_b), BandVertex::B((attach_b + 1) % nb)),
    });
    layout.faces.push(PlacedFace {
        id: FaceId::Top,
        corners: (0..na).map(BandVertex::A).collect(),
        polygon: poly_a,
        motion: motion_a,
    });
    layout.tree.push(Attachment {
        child: ib + 1,
        parent: ta,
        edge: (BandVertex::A(attach_a), BandVertex::A((attach_a + 1) % na)),
    });
    Ok(layout)
}

/// Full unfolding for a plan whose A edge carries an RM witness.
pub fn unfold(p: &NestedPrismatoid, plan: &CutPlan) -> Result<Layout> {
    let band = build_band(p)?;
    unfold_with_band(p, &band, plan)
}

pub fn unfold_with_band(p: &NestedPrismatoid, band: &Band, plan: &CutPlan) -> Result<Layout> {
    let w = plan
        .witness
        .ok_or_else(|| GeomError::UnverifiedWitness("plan has no witness".into()))?;
    w.verify(p.top())?;
    if w.a != plan.attach_a {
        return Err(GeomError::UnverifiedWitness(format!(
            "witness edge {} differs from the attachment edge {}",
            w.a, plan.attach_a
        )));
    }
    if plan.cut >= band.len() {
        return Err(GeomError::InvalidCutEdge(plan.cut));
    }
    assemble(p, band, plan.cut, plan.attach_b, plan.attach_a)
}

/// Outcome of an overlap test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OverlapVerdict {
    /// First overlapping pair in face order.
    pub pair: Option<(FaceId, FaceId)>,
    /// Largest intersection area minus its contact threshold, over all pairs.
    pub worst_margin: f64,
    /// Some pair came within the marginal band around its threshold.
    pub marginal: bool,
}

impl OverlapVerdict {
    pub fn overlaps(&self) -> bool {
        self.pair.is_some()
    }
}

fn bbox(poly: &[Point2]) -> (Point2, Point2) {
    poly.iter().fold(
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
    )
}

pub fn overlap_verdict(layout: &Layout) -> OverlapVerdict {
    let tol = layout.tolerance();
    let polys: Vec<Vec<Point2>> = layout.faces.iter().map(|f| f.ccw_polygon()).collect();
    let boxes: Vec<_> = polys.iter().map(|p| bbox(p)).collect();
    let mut verdict = OverlapVerdict {
        pair: None,
        worst_margin: f64::NEG_INFINITY,
        marginal: false,
    };
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let ((lo1, hi1), (lo2, hi2)) = (boxes[i], boxes[j]);
            if lo1.x > hi2.x || lo2.x > hi1.x || lo1.y > hi2.y || lo2.y > hi1.y {
                continue;
            }
            let scale = (hi1 - lo1).norm().max((hi2 - lo2).norm());
            let threshold = tol.area(scale);
            let area = convex_intersection_area(&polys[i], &polys[j]);
            let margin = area - threshold;
            verdict.worst_margin = verdict.worst_margin.max(margin);
            if area > threshold / MARGINAL_FACTOR && area < threshold * MARGINAL_FACTOR {
                verdict.marginal = true;
            }
            if margin > 0.0 && verdict.pair.is_none() {
                verdict.pair = Some((layout.faces[i].id, layout.faces[j].id));
            }
        }
    }
    verdict
}

/// First pair of faces sharing interior points, if any.
pub fn layout_overlaps(layout: &Layout) -> Option<(FaceId, FaceId)> {
    overlap_verdict(layout).pair
}

/// Lateral edges whose band-only development does not overlap itself.
pub fn find_safe_cuts(p: &NestedPrismatoid, band: &Band) -> Vec<usize> {
    (0..band.len())
        .filter(|&k| {
            develop_band(p, band, k)
                .map(|l| layout_overlaps(&l).is_none())
                .unwrap_or(false)
        })
        .collect()
}

/// The B edge whose triangle lies farthest along the band from the cut.
pub fn default_attach_b(band: &Band, cut: usize) -> usize {
    let n = band.len();
    (0..band.n_b())
        .max_by_key(|&i| {
            let t = band.triangle_on_b_edge(i);
            let from_start = (t + n - cut) % n;
            let to_end = n - 1 - from_start;
            // prefer the lowest index on ties
            (from_start.min(to_end), std::cmp::Reverse(i))
        })
        .expect("B has edges")
}

/// Smallest distance from the placed A to band faces that do not touch the
/// ends of A's glued edge in the source.
pub fn top_clearance(layout: &Layout) -> f64 {
    let Some(top) = layout.face(FaceId::Top) else {
        return f64::INFINITY;
    };
    let glued = layout
        .tree
        .iter()
        .find(|a| layout.faces[a.child].id == FaceId::Top)
        .map(|a| a.edge);
    let top_poly = top.ccw_polygon();
    layout
        .band_faces()
        .filter(|f| match glued {
            Some((u, v)) => !f.corners.contains(&u) && !f.corners.contains(&v),
            None => true,
        })
        .map(|f| polygon_distance(&top_poly, &f.ccw_polygon()))
        .fold(f64::INFINITY, f64::min)
}

fn polygon_distance(p: &[Point2], q: &[Point2]) -> f64 {
    if !clip_convex(p, q).is_empty() && polygon_area(&clip_convex(p, q)) > 0.0 {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for i in 0..p.len() {
        for j in 0..q.len() {
            best = best.min(segment_distance(
                p[i],
                p[(i + 1) % p.len()],
                q[j],
                q[(j + 1) % q.len()],
            ));
        }
    }
    best
}

/// A plan for `witness`: the first safe lateral edge at the apex, B attached
/// by default rule. `None` when no apex edge is safe.
pub fn plan_for_witness(
    p: &NestedPrismatoid,
    band: &Band,
    witness: RmWitness,
    attach_b: Option<usize>,
) -> Result<Option<CutPlan>> {
    witness.verify(p.top())?;
    for cut in band.lateral_edges_at_a(witness.apex) {
        let layout = develop_band(p, band, cut)?;
        if layout_overlaps(&layout).is_none() {
            return Ok(Some(CutPlan {
                cut,
                attach_b: attach_b.unwrap_or_else(|| default_attach_b(band, cut)),
                attach_a: witness.a,
                witness: Some(witness),
            }));
        }
    }
    Ok(None)
}

/// Best plan at the height of `p`: over all RM witnesses with a safe
/// apex cut, the one whose attached A keeps the largest clearance from the
/// band; ties go to the lowest edge index.
pub fn choose_plan(p: &NestedPrismatoid, band: &Band) -> Result<Option<CutPlan>> {
    let mut best: Option<(f64, CutPlan)> = None;
    for w in find_rm_property(p.top()) {
        let Some(plan) = plan_for_witness(p, band, w, None)? else {
            continue;
        };
        let layout = unfold_with_band(p, band, &plan)?;
        let score = top_clearance(&layout);
        if best.as_ref().is_none_or(|(s, _)| score > *s) {
            best = Some((score, plan));
        }
    }
    Ok(best.map(|(_, plan)| plan))
}

/// Like [`choose_plan`], but the cut must be safe for the band alone at
/// every height in `zs`, and clearance is scored at the first height.
pub fn choose_sweep_plan(
    base: &ConvexPolygon,
    top: &ConvexPolygon,
    zs: &[f64],
) -> Result<Option<CutPlan>> {
    let Some(&z0) = zs.first() else {
        return Ok(None);
    };
    let instances = zs
        .iter()
        .map(|&z| {
            let p = NestedPrismatoid::new(base.clone(), top.clone(), z)?;
            let band = build_band(&p)?;
            Ok((p, band))
        })
        .collect::<Result<Vec<_>>>()?;
    if instances
        .windows(2)
        .any(|w| w[0].1.lateral_edges() != w[1].1.lateral_edges())
    {
        return Err(GeomError::PreconditionViolation(
            "band combinatorics change across the sweep".into(),
        ));
    }
    let safe_everywhere = |cut: usize| {
        instances.iter().all(|(p, band)| {
            develop_band(p, band, cut).is_ok_and(|l| layout_overlaps(&l).is_none())
        })
    };
    let (p0, band0) = &instances[0];
    debug_assert_eq!(p0.z(), z0);
    let mut best: Option<(f64, CutPlan)> = None;
    for w in find_rm_property(top) {
        let Some(cut) = band0
            .lateral_edges_at_a(w.apex)
            .into_iter()
            .find(|&c| safe_everywhere(c))
        else {
            continue;
        };
        let plan = CutPlan {
            cut,
            attach_b: default_attach_b(band0, cut),
            attach_a: w.a,
            witness: Some(w),
        };
        let score = top_clearance(&unfold_with_band(p0, band0, &plan)?);
        if best.as_ref().is_none_or(|(s, _)| score > *s) {
            best = Some((score, plan));
        }
    }
    Ok(best.map(|(_, plan)| plan))
}

/// Verdict for one height of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepVerdict {
    pub z: f64,
    /// The plan's cut is safe for the band alone at this height.
    pub cut_safe: bool,
    pub verdict: OverlapVerdict,
}

impl SweepVerdict {
    pub fn nonoverlapping(&self) -> bool {
        !self.verdict.overlaps()
    }
}

/// Unfolds the same (B, A) under `plan` at each height in `zs`.
pub fn z_sweep(
    base: &ConvexPolygon,
    top: &ConvexPolygon,
    plan: &CutPlan,
    zs: &[f64],
) -> Result<Vec<SweepVerdict>> {
    let mut reference: Option<Band> = None;
    let mut out = Vec::with_capacity(zs.len());
    for &z in zs {
        let p = NestedPrismatoid::new(base.clone(), top.clone(), z)?;
        let band = build_band(&p)?;
        match &reference {
            Some(r) if r.lateral_edges() != band.lateral_edges() => {
                return Err(GeomError::PreconditionViolation(format!(
                    "band combinatorics change at z = {z}"
                )));
            }
            Some(_) => {}
            None => reference = Some(band.clone()),
        }
        let layout = unfold_with_band(&p, &band, plan)?;
        let cut_safe = layout_overlaps(&layout.band_only()).is_none();
        out.push(SweepVerdict {
            z,
            cut_safe,
            verdict: overlap_verdict(&layout),
        });
    }
    Ok(out)
}

/// Largest relative deviation between placed and source edge lengths.
pub fn isometry_error(p: &NestedPrismatoid, layout: &Layout) -> f64 {
    let mut worst: f64 = 0.0;
    for f in &layout.faces {
        let m = f.corners.len();
        for k in 0..m {
            let (u, v) = (f.corners[k], f.corners[(k + 1) % m]);
            let src = p.point(u).distance(p.point(v));
            let dst = f.polygon[k].distance(f.polygon[(k + 1) % m]);
            worst = worst.max((src - dst).abs() / src);
        }
    }
    worst
}

/// Every glued edge has identical endpoints in child and parent.
pub fn glued_edges_coincide(layout: &Layout) -> bool {
    layout.tree.iter().all(|a| {
        let (c, q) = (&layout.faces[a.child], &layout.faces[a.parent]);
        [a.edge.0, a.edge.1]
            .iter()
            .all(|&v| c.position_of(v).is_some() && c.position_of(v) == q.position_of(v))
    })
}

/// Band-side angle sums read off a band development, for the vertices of
/// L_B and L_A not split by the cut. Entries are `(vertex, angle)`; on L_A
/// the angle is `2 pi` minus the band angle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DevelopedChainAngles {
    pub b: Vec<(usize, f64)>,
    pub a: Vec<(usize, f64)>,
}

pub fn developed_chain_angles(layout: &Layout, band: &Band) -> DevelopedChainAngles {
    let (nb, na) = (band.n_b(), band.n_a());
    let face = |k: usize| layout.face(FaceId::Band(k)).expect("band face is placed");
    let at = |k: usize, v: BandVertex| face(k).position_of(v).expect("corner of face");
    let b = (0..nb)
        .filter_map(|i| {
            let (before, after) = (
                band.triangle_on_b_edge((i + nb - 1) % nb),
                band.triangle_on_b_edge(i),
            );
            let v = at(after, BandVertex::B(i));
            // split by the cut
            (at(before, BandVertex::B(i)) == v).then(|| {
                let prev = at(before, BandVertex::B((i + nb - 1) % nb));
                let next = at(after, BandVertex::B((i + 1) % nb));
                (i, ccw_angle(next - v, prev - v))
            })
        })
        .collect();
    let a = (0..na)
        .filter_map(|j| {
            let (before, after) = (
                band.triangle_on_a_edge((j + na - 1) % na),
                band.triangle_on_a_edge(j),
            );
            let v = at(after, BandVertex::A(j));
            (at(before, BandVertex::A(j)) == v).then(|| {
                let prev = at(before, BandVertex::A((j + na - 1) % na));
                let next = at(after, BandVertex::A((j + 1) % na));
                (j, std::f64::consts::TAU - ccw_angle(prev - v, next - v))
            })
        })
        .collect();
    DevelopedChainAngles { b, a }
}
