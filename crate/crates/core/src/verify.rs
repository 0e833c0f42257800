//! Randomized property suites over every module, with replayable seeds.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::band::{band_combinatorics, build_band, NestedPrismatoid, TriangleKind};
use crate::generate::{
    convex_polygon_from, random_acute_chain, random_convex_chain, random_nested_prismatoid,
    random_prismoid, random_vertex_config, rm_property_survey,
};
use crate::geom::{
    convex_hull_2d, orientation, triangles_overlap, ConvexPolygon, Orientation, Point2, Tolerance,
    Triangle2,
};
use crate::io::PrismatoidDocument;
use crate::opening::{
    check_monotonic, check_opening, phi_closed_form, phi_from_geometry, reflection_identity,
    sphere_arcs, VertexOpeningConfig,
};
use crate::rm::{
    check_noncrossing, find_rm_property, is_rm, is_rm_from, open_chain, OpeningVector,
};
use crate::rotation::{
    compose, hull_distance, hull_membership_check, weighted_center_discrepancy, PlanarRotation,
};
use crate::unfold::{
    choose_sweep_plan, develop_band, find_safe_cuts, isometry_error, layout_overlaps,
    overlap_verdict, unfold, FaceId,
};

/// Heights of the end-to-end sweep.
pub const SWEEP_HEIGHTS: [f64; 7] = [0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SuiteKind {
    /// Every trial must pass.
    Asserted,
    /// The quantity is recorded; trials fail only on errors.
    Measured,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    /// Replays the trial through [`run_trial`].
    pub seed: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub kind: SuiteKind,
    pub trials: usize,
    /// Trials whose input fell outside the property's hypothesis.
    pub skipped: usize,
    pub failures: Vec<Failure>,
    /// Smallest margin seen for asserted suites, largest value for measured ones.
    pub worst_margin: f64,
    pub elapsed_ms: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.suites
            .iter()
            .filter(|s| !s.passed())
            .map(|s| s.name.as_str())
            .collect()
    }
}

/// Outcome of one trial.
enum Trial {
    /// Property held (margin >= 0) or failed (margin < 0).
    Margin(f64),
    Skip,
}

type TrialFn = fn(&mut ChaCha8Rng) -> Result<Trial, String>;

struct Suite {
    name: &'static str,
    kind: SuiteKind,
    /// Upper bound on trials regardless of the requested count.
    cap: usize,
    run: TrialFn,
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn pass_if(ok: bool) -> Result<Trial, String> {
    Ok(Trial::Margin(if ok { 0.0 } else { -1.0 }))
}

fn within(err: f64, tol: f64) -> Result<Trial, String> {
    Ok(Trial::Margin(tol - err))
}

fn random_point(rng: &mut ChaCha8Rng) -> Point2 {
    Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_instance(rng: &mut ChaCha8Rng) -> Result<NestedPrismatoid, String> {
    let nb = rng.gen_range(4..=16);
    let na = rng.gen_range(3..=16);
    let z = rng.gen_range(0.02..3.0);
    random_nested_prismatoid(nb, na, z, rng.gen()).map_err(err)
}

fn random_triangle(rng: &mut ChaCha8Rng) -> Triangle2 {
    loop {
        let t = Triangle2::new(random_point(rng), random_point(rng), random_point(rng));
        if t.signed_area().abs() > 1e-3 {
            return t;
        }
    }
}

// geom-core

fn orientation_antisymmetry(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let (p, q) = (random_point(rng), random_point(rng));
    // near-collinear third point half the time
    let r = if rng.gen_bool(0.5) {
        p.lerp(q, rng.gen_range(-1.0..2.0)) + Point2::new(rng.gen_range(-1e-15..1e-15), 0.0)
    } else {
        random_point(rng)
    };
    let o = orientation(p, q, r).sign();
    pass_if(o == -orientation(q, p, r).sign() && o == -orientation(p, r, q).sign())
}

fn brute_force_hull(pts: &[Point2]) -> Vec<Point2> {
    let n = pts.len();
    let inside = |p: Point2, a: Point2, b: Point2, c: Point2| {
        let o = orientation(a, b, c);
        if o == Orientation::Collinear {
            return false;
        }
        let s = o.sign();
        [(a, b), (b, c), (c, a)]
            .iter()
            .all(|&(u, v)| orientation(u, v, p).sign() * s >= 0)
    };
    let mut out: Vec<Point2> = Vec::new();
    'outer: for i in 0..n {
        let p = pts[i];
        if out.contains(&p) {
            continue;
        }
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let (u, v, w) = (pts[a], pts[b], pts[c]);
                    if [u, v, w].contains(&p) {
                        continue;
                    }
                    if inside(p, u, v, w) {
                        continue 'outer;
                    }
                }
            }
        }
        out.push(p);
    }
    out
}

fn hull_brute_force(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let n = rng.gen_range(10..=50);
    let pts: Vec<Point2> = (0..n).map(|_| random_point(rng)).collect();
    let hull = convex_hull_2d(&pts).map_err(err)?;
    let mut want = brute_force_hull(&pts);
    let mut got = hull.vertices().to_vec();
    let key = |p: &Point2| (p.x.to_bits(), p.y.to_bits());
    want.sort_by_key(key);
    got.sort_by_key(key);
    pass_if(want == got)
}

fn triangle_overlap_symmetry(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let tol = Tolerance::default();
    let (t1, t2) = (random_triangle(rng), random_triangle(rng));
    let ab = triangles_overlap(&t1, &t2, tol).map_err(err)?;
    let ba = triangles_overlap(&t2, &t1, tol).map_err(err)?;
    let same = triangles_overlap(&t1, &t1, tol).map_err(err)?;
    let shift = Point2::new(rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0));
    let moved =
        triangles_overlap(&t1.translated(shift), &t2.translated(shift), tol).map_err(err)?;
    pass_if(ab == ba && same && moved == ab)
}

fn polygon_angle_sum(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let n = rng.gen_range(3..=30);
    let poly = convex_polygon_from(rng, n).map_err(err)?;
    let sum: f64 = (0..n).map(|i| poly.interior_angle(i)).sum();
    within((sum - (n as f64 - 2.0) * PI).abs(), 1e-9)
}

// band-builder

fn band_z_invariance(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let p = random_instance(rng)?;
    let sigs = [0.01, 0.1, 1.0, 10.0]
        .iter()
        .map(|&z| band_combinatorics(&p.with_z(z).map_err(err)?).map_err(err))
        .collect::<Result<Vec<_>, _>>()?;
    pass_if(sigs.windows(2).all(|w| w[0] == w[1]))
}

fn band_face_count(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let p = random_instance(rng)?;
    let band = build_band(&p).map_err(err)?;
    let (nb, na) = (p.base().len(), p.top().len());
    let mut b_seen = vec![0; nb];
    let mut a_seen = vec![0; na];
    for t in band.triangles() {
        match t.kind {
            TriangleKind::BBased { edge, .. } => b_seen[edge] += 1,
            TriangleKind::ABased { edge, .. } => a_seen[edge] += 1,
        }
    }
    pass_if(band.len() == nb + na && b_seen.iter().chain(&a_seen).all(|&c| c == 1))
}

fn band_hull_validity(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let p = random_instance(rng)?;
    let band = build_band(&p).map_err(err)?;
    let pts = p.points();
    let eps = p.tolerance().eps;
    let mut margin = f64::INFINITY;
    for k in 0..band.len() {
        let [u, v, w] = band.outward_corners(k).map(|c| p.point(c));
        let n = (v - u).cross(w - u);
        let unit = n * (1.0 / n.norm());
        for &q in &pts {
            margin = margin.min(eps - unit.dot(q - u));
        }
    }
    Ok(Trial::Margin(margin))
}

fn band_chains_convex(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let p = random_instance(rng)?;
    let band = build_band(&p).map_err(err)?;
    // chains as met walking the lateral edges, with repeats collapsed
    let mut bs: Vec<usize> = Vec::new();
    let mut as_: Vec<usize> = Vec::new();
    for e in band.lateral_edges() {
        if bs.last() != Some(&e.b) {
            bs.push(e.b);
        }
        if as_.last() != Some(&e.a) {
            as_.push(e.a);
        }
    }
    if bs.len() > 1 && bs.first() == bs.last() {
        bs.pop();
    }
    if as_.len() > 1 && as_.first() == as_.last() {
        as_.pop();
    }
    let ccw_cycle =
        |idx: &[usize], n: usize| idx.len() == n && idx.windows(2).all(|w| w[1] == (w[0] + 1) % n);
    let convex = |idx: &[usize], poly: &ConvexPolygon| {
        ConvexPolygon::new(idx.iter().map(|&i| poly.vertex(i)).collect()).is_ok()
    };
    pass_if(
        ccw_cycle(&bs, p.base().len())
            && ccw_cycle(&as_, p.top().len())
            && convex(&bs, p.base())
            && convex(&as_, p.top()),
    )
}

// opening-analysis

fn single_config(rng: &mut ChaCha8Rng) -> Result<(f64, f64, f64, f64), String> {
    let cfg = random_vertex_config(rng, 1).map_err(err)?;
    let theta = cfg.theta().map_err(err)?;
    Ok((theta, cfg.fan[0].x, cfg.fan[0].y, cfg.z))
}

fn phi_closed_vs_geometry(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let (theta, x, y, z) = single_config(rng)?;
    let closed = phi_closed_form(theta, x, y, z).map_err(err)?;
    let cfg = VertexOpeningConfig::canonical(theta, x, y, z).map_err(err)?;
    let geo = phi_from_geometry(&cfg).map_err(err)?;
    within((closed - geo).abs(), 1e-10)
}

fn opening_bounds(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let cfg = random_vertex_config(rng, 6).map_err(err)?;
    pass_if(check_opening(&cfg).map_err(err)?)
}

fn reflection(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let cfg = random_vertex_config(rng, 1).map_err(err)?;
    let (phi, phi_r) = reflection_identity(&cfg).map_err(err)?;
    within((phi + phi_r - 2.0 * PI).abs(), 1e-10)
}

fn phi_monotone(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let (theta, x, y, _) = single_config(rng)?;
    let top = rng.gen_range(0.5..10.0);
    let zs: Vec<f64> = (0..50).map(|k| top * k as f64 / 49.0).collect();
    pass_if(check_monotonic(theta, x, y, &zs).map_err(err)?)
}

fn sphere_inequality(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let cfg = random_vertex_config(rng, 6).map_err(err)?;
    let arcs = sphere_arcs(&cfg).map_err(err)?;
    Ok(Trial::Margin(arcs.path - arcs.geodesic))
}

// radial-monotone

fn rm_acute(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let m = rng.gen_range(3..=10);
    let chain = random_acute_chain(rng, m).map_err(err)?;
    pass_if(!is_rm(&chain))
}

fn rm_from_first(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let m = rng.gen_range(3..=12);
    let chain = random_convex_chain(rng, m, 1.9 * PI).map_err(err)?;
    pass_if(is_rm_from(&chain, 0) == is_rm(&chain))
}

fn random_rm_chain(rng: &mut ChaCha8Rng) -> Result<Option<crate::geom::PolyChain>, String> {
    for _ in 0..50 {
        let m = rng.gen_range(3..=10);
        let chain = random_convex_chain(rng, m, PI).map_err(err)?;
        if is_rm(&chain) && chain.curl(1e-12).is_some() {
            return Ok(Some(chain));
        }
    }
    Ok(None)
}

fn random_opening(
    rng: &mut ChaCha8Rng,
    chain: &crate::geom::PolyChain,
) -> Result<OpeningVector, String> {
    let w = (1..chain.len() - 1)
        .map(|i| {
            let room = PI - chain.convex_angle(i).map_err(err)?;
            Ok(if rng.gen_bool(0.3) {
                0.0
            } else {
                room * rng.gen::<f64>()
            })
        })
        .collect::<Result<Vec<f64>, String>>()?;
    OpeningVector::new(w).map_err(err)
}

fn rm_noncrossing(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let Some(chain) = random_rm_chain(rng)? else {
        return Ok(Trial::Skip);
    };
    let w = random_opening(rng, &chain)?;
    pass_if(check_noncrossing(&chain, &w).map_err(err)?)
}

fn rm_opening_preserves(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let Some(chain) = random_rm_chain(rng)? else {
        return Ok(Trial::Skip);
    };
    let w = random_opening(rng, &chain)?;
    pass_if(is_rm(&open_chain(&chain, &w).map_err(err)?))
}

fn rm_witness_reverify(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let n = rng.gen_range(3..=14);
    let poly = convex_polygon_from(rng, n).map_err(err)?;
    pass_if(
        find_rm_property(&poly).iter().all(|w| {
            is_rm(&w.a_chain(&poly)) && is_rm(&w.b_chain(&poly)) && w.verify(&poly).is_ok()
        }),
    )
}

// rotation-compose

fn random_rotations(rng: &mut ChaCha8Rng, total: f64) -> Vec<PlanarRotation> {
    let n = rng.gen_range(1..=8);
    let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..1.0)).collect();
    let s: f64 = w.iter().sum();
    w.iter()
        .map(|&x| PlanarRotation {
            center: random_point(rng),
            angle: total * x / s,
        })
        .collect()
}

fn rotation_compose(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let total = rng.gen_range(0.01..3.0 * PI);
    let rs = random_rotations(rng, total);
    let c = compose(&rs).map_err(err)?;
    let mut worst: f64 = 0.0;
    for _ in 0..4 {
        let p = random_point(rng);
        let seq = rs.iter().fold(p, |q, r| r.apply(q));
        worst = worst.max(seq.distance(c.apply(p)));
    }
    within(worst, 1e-10)
}

fn rotation_hull(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let total = rng.gen_range(0.01..=PI);
    let rs = random_rotations(rng, total);
    if hull_membership_check(&rs).map_err(err)? {
        return pass_if(true);
    }
    // negative distance of the composed centre from the hull
    Ok(Trial::Margin(-hull_distance(&rs).map_err(err)?))
}

fn rotation_weighted(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let total = rng.gen_range(0.01..=PI);
    let rs = random_rotations(rng, total);
    Ok(Trial::Margin(
        weighted_center_discrepancy(&rs).map_err(err)?,
    ))
}

// unfolder

fn development_isometry(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let p = random_instance(rng)?;
    let band = build_band(&p).map_err(err)?;
    let cut = rng.gen_range(0..band.len());
    let layout = develop_band(&p, &band, cut).map_err(err)?;
    within(isometry_error(&p, &layout), 1e-9)
}

fn safe_cut_soundness(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let p = random_instance(rng)?;
    let band = build_band(&p).map_err(err)?;
    let safe = find_safe_cuts(&p, &band);
    for k in 0..band.len() {
        let overlap = layout_overlaps(&develop_band(&p, &band, k).map_err(err)?);
        if safe.contains(&k) == overlap.is_some() {
            return pass_if(false);
        }
    }
    pass_if(true)
}

fn witnessed_unfolding(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let p = random_instance(rng)?;
    let Some(plan) = choose_sweep_plan(p.base(), p.top(), &SWEEP_HEIGHTS).map_err(err)? else {
        return Ok(Trial::Skip);
    };
    let mut margin = f64::INFINITY;
    for &z in &SWEEP_HEIGHTS {
        let layout = unfold(&p.with_z(z).map_err(err)?, &plan).map_err(err)?;
        let v = overlap_verdict(&layout);
        margin = margin.min(-v.worst_margin);
        if v.overlaps() {
            return Ok(Trial::Margin(-1.0));
        }
    }
    Ok(Trial::Margin(margin))
}

fn b_attachment(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let p = random_instance(rng)?;
    let Some(plan) = choose_sweep_plan(p.base(), p.top(), &[p.z()]).map_err(err)? else {
        return Ok(Trial::Skip);
    };
    let layout = unfold(&p, &plan).map_err(err)?;
    let base = layout
        .face(FaceId::Base)
        .expect("B is placed")
        .ccw_polygon();
    let tol = layout.tolerance();
    let hit = layout
        .band_faces()
        .any(|f| crate::geom::convex_polygons_overlap(&base, &f.ccw_polygon(), tol));
    pass_if(!hit)
}

fn la_correspondence(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let p = random_instance(rng)?;
    let band = build_band(&p).map_err(err)?;
    let cut = rng.gen_range(0..band.len());
    let layout = develop_band(&p, &band, cut).map_err(err)?;
    let na = p.top().len();
    let mut count = 0;
    let mut worst: f64 = 0.0;
    for f in layout.band_faces() {
        let FaceId::Band(k) = f.id else { continue };
        if let TriangleKind::ABased { edge, .. } = band.triangles()[k].kind {
            count += 1;
            // outward corners start (a_{j+1}, a_j)
            let placed = f.polygon[0].distance(f.polygon[1]);
            let src = p.top_point(edge).distance(p.top_point(edge + 1));
            worst = worst.max((placed - src).abs() / src);
        }
    }
    if count != na {
        return pass_if(false);
    }
    within(worst, 1e-9)
}

// generator

fn generator_determinism(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let seed: u64 = rng.gen();
    let (nb, na) = (rng.gen_range(3..=16), rng.gen_range(3..=16));
    let p = random_nested_prismatoid(nb, na, 0.5, seed).map_err(err)?;
    let q = random_nested_prismatoid(nb, na, 0.5, seed).map_err(err)?;
    let bits = |p: &NestedPrismatoid| {
        p.base()
            .vertices()
            .iter()
            .chain(p.top().vertices())
            .flat_map(|v| [v.x.to_bits(), v.y.to_bits()])
            .collect::<Vec<u64>>()
    };
    pass_if(bits(&p) == bits(&q))
}

fn generator_invariants(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let p = random_instance(rng)?;
    let margin = p
        .top()
        .vertices()
        .iter()
        .map(|&v| p.base().clearance(v))
        .fold(f64::INFINITY, f64::min);
    let n = rng.gen_range(3..=12);
    let prismoid = random_prismoid(n, 0.5, rng.gen()).map_err(err)?;
    let band = build_band(&prismoid).map_err(err)?;
    if !band.triangles().iter().all(|t| t.coplanar) {
        return pass_if(false);
    }
    let d = (p.base().diameter() - 1.0).abs();
    Ok(Trial::Margin(
        (margin - crate::generate::NESTING_MARGIN + 1e-12).min(1e-12 - d),
    ))
}

fn rm_frequency(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let survey = rm_property_survey(40, (8, 12), rng.gen()).map_err(err)?;
    let with = survey.iter().filter(|(_, w)| !w.is_empty()).count();
    Ok(Trial::Margin(with as f64 / 40.0))
}

// cli-io

fn document_round_trip(rng: &mut ChaCha8Rng) -> Result<Trial, String> {
    let p = random_instance(rng)?;
    let doc = PrismatoidDocument::from_prismatoid(&p, None);
    let back = PrismatoidDocument::parse_prismatoid(&doc.to_json()).map_err(err)?;
    let worst = p
        .base()
        .vertices()
        .iter()
        .zip(back.base().vertices())
        .chain(p.top().vertices().iter().zip(back.top().vertices()))
        .map(|(u, v)| u.distance(*v))
        .fold((p.z() - back.z()).abs(), f64::max);
    within(worst, 1e-12)
}

const SUITES: &[Suite] = &[
    Suite {
        name: "orientation-antisymmetry",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: orientation_antisymmetry,
    },
    Suite {
        name: "hull-brute-force",
        kind: SuiteKind::Asserted,
        cap: 1000,
        run: hull_brute_force,
    },
    Suite {
        name: "triangle-overlap-symmetry",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: triangle_overlap_symmetry,
    },
    Suite {
        name: "polygon-angle-sum",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: polygon_angle_sum,
    },
    Suite {
        name: "band-z-invariance",
        kind: SuiteKind::Asserted,
        cap: 100,
        run: band_z_invariance,
    },
    Suite {
        name: "band-face-count",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: band_face_count,
    },
    Suite {
        name: "band-hull-validity",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: band_hull_validity,
    },
    Suite {
        name: "band-chains-convex",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: band_chains_convex,
    },
    Suite {
        name: "phi-closed-vs-geometry",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: phi_closed_vs_geometry,
    },
    Suite {
        name: "opening-bounds",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: opening_bounds,
    },
    Suite {
        name: "reflection-identity",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: reflection,
    },
    Suite {
        name: "phi-monotone",
        kind: SuiteKind::Asserted,
        cap: 1000,
        run: phi_monotone,
    },
    Suite {
        name: "sphere-triangle-inequality",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: sphere_inequality,
    },
    Suite {
        name: "rm-acute",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: rm_acute,
    },
    Suite {
        name: "rm-from-first",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: rm_from_first,
    },
    Suite {
        name: "rm-noncrossing",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: rm_noncrossing,
    },
    Suite {
        name: "rm-opening-preserves",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: rm_opening_preserves,
    },
    Suite {
        name: "rm-witness-reverify",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: rm_witness_reverify,
    },
    Suite {
        name: "rotation-compose",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: rotation_compose,
    },
    Suite {
        name: "rotation-hull",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: rotation_hull,
    },
    Suite {
        name: "rotation-weighted-center",
        kind: SuiteKind::Measured,
        cap: usize::MAX,
        run: rotation_weighted,
    },
    Suite {
        name: "development-isometry",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: development_isometry,
    },
    Suite {
        name: "safe-cut-soundness",
        kind: SuiteKind::Asserted,
        cap: 200,
        run: safe_cut_soundness,
    },
    Suite {
        name: "witnessed-unfoldings",
        kind: SuiteKind::Asserted,
        cap: 200,
        run: witnessed_unfolding,
    },
    Suite {
        name: "b-attachment",
        kind: SuiteKind::Asserted,
        cap: 200,
        run: b_attachment,
    },
    Suite {
        name: "la-correspondence",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: la_correspondence,
    },
    Suite {
        name: "generator-determinism",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: generator_determinism,
    },
    Suite {
        name: "generator-invariants",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: generator_invariants,
    },
    Suite {
        name: "rm-frequency",
        kind: SuiteKind::Measured,
        cap: 1,
        run: rm_frequency,
    },
    Suite {
        name: "document-round-trip",
        kind: SuiteKind::Asserted,
        cap: usize::MAX,
        run: document_round_trip,
    },
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

fn name_hash(name: &str) -> u64 {
    // FNV-1a
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

fn trial_seed(seed: u64, suite: &str, trial: usize) -> u64 {
    seed ^ name_hash(suite).wrapping_add(trial as u64)
}

/// Reruns a single trial of `suite` from the seed recorded in a failure.
/// Returns the margin, or `None` when the trial is outside the hypothesis.
pub fn run_trial(suite: &str, seed: u64) -> Result<Option<f64>, String> {
    let s = SUITES
        .iter()
        .find(|s| s.name == suite)
        .ok_or_else(|| format!("unknown suite {suite}"))?;
    match (s.run)(&mut ChaCha8Rng::seed_from_u64(seed))? {
        Trial::Margin(m) => Ok(Some(m)),
        Trial::Skip => Ok(None),
    }
}

fn run_suite(s: &Suite, trials: usize, seed: u64) -> SuiteResult {
    let start = Instant::now();
    let n = trials.min(s.cap);
    let mut result = SuiteResult {
        name: s.name.to_string(),
        kind: s.kind,
        trials: n,
        skipped: 0,
        failures: Vec::new(),
        worst_margin: match s.kind {
            SuiteKind::Asserted => f64::INFINITY,
            SuiteKind::Measured => f64::NEG_INFINITY,
        },
        elapsed_ms: 0.0,
    };
    for t in 0..n {
        let ts = trial_seed(seed, s.name, t);
        match (s.run)(&mut ChaCha8Rng::seed_from_u64(ts)) {
            Ok(Trial::Skip) => result.skipped += 1,
            Ok(Trial::Margin(m)) => match s.kind {
                SuiteKind::Asserted => {
                    result.worst_margin = result.worst_margin.min(m);
                    if !(m >= 0.0) {
                        result.failures.push(Failure {
                            seed: ts,
                            detail: format!("margin {m:e}"),
                        });
                    }
                }
                SuiteKind::Measured => result.worst_margin = result.worst_margin.max(m),
            },
            Err(e) => result.failures.push(Failure {
                seed: ts,
                detail: e,
            }),
        }
    }
    result.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    result
}

/// Runs every suite with up to `trials` trials each.
pub fn run_verify(trials: usize, seed: u64) -> VerificationReport {
    VerificationReport {
        seed,
        suites: SUITES.iter().map(|s| run_suite(s, trials, seed)).collect(),
    }
}

/// Runs only the named suites; unknown names are an error.
pub fn run_selected(
    names: &[&str],
    trials: usize,
    seed: u64,
) -> Result<VerificationReport, String> {
    let suites = names
        .iter()
        .map(|n| {
            SUITES
                .iter()
                .find(|s| s.name == *n)
                .map(|s| run_suite(s, trials, seed))
                .ok_or_else(|| format!("unknown suite {n}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(VerificationReport { seed, suites })
}
