//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use band_unfold::band::{build_band, NestedPrismatoid};
use band_unfold::generate::{
    all_splits_have_acute_angle, find_overlap_demo, nested_prismatoid_from_config,
    random_acute_chain, random_convex_chain, random_nested_prismatoid, random_prismoid,
    random_vertex_config, regular_polygon, rm_property_survey, spiked_hexagon, GenConfig,
    DEFAULT_SPIKE_SHARPNESS,
};
use band_unfold::geom::{Point2, Point3, PolyChain};
use band_unfold::opening::{
    check_monotonic, check_opening, open_band_report, phi_closed_form, phi_from_geometry,
    reflection_identity, BandSide, VertexOpeningConfig,
};
use band_unfold::rm::{
    check_noncrossing, find_rm_property, is_rm, is_rm_from, open_chain, OpeningVector,
};
use band_unfold::rotation::{compose, hull_membership_check, PlanarRotation};
use band_unfold::unfold::{
    assemble, choose_plan, choose_sweep_plan, develop_band, developed_chain_angles, find_safe_cuts,
    overlap_verdict, unfold, Layout,
};
use band_unfold::verify::SWEEP_HEIGHTS;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

// oracles

fn angle3(u: Point3, v: Point3) -> f64 {
    u.cross(v).norm().atan2(u.dot(v))
}

/// Lifted angle summed straight from the 3D vectors.
fn phi_oracle(cfg: &VertexOpeningConfig) -> f64 {
    let h = Point3::new(cfg.b.x, cfg.b.y, 0.0);
    let mut path = vec![Point3::new(cfg.a.x, cfg.a.y, 0.0) - h];
    path.extend(cfg.fan.iter().map(|v| Point3::new(v.x, v.y, cfg.z) - h));
    path.push(Point3::new(cfg.c.x, cfg.c.y, 0.0) - h);
    path.windows(2).map(|w| angle3(w[0], w[1])).sum()
}

fn planar_angle(cfg: &VertexOpeningConfig) -> f64 {
    let (u, v) = (cfg.a - cfg.b, cfg.c - cfg.b);
    u.cross(v).abs().atan2(u.dot(v))
}

/// Distance from the first vertex sampled densely along every later segment
/// never decreases.
/// Parameters along a segment, geometrically refined towards its start.
fn samples() -> impl Iterator<Item = f64> {
    std::iter::once(0.0)
        .chain((1..=40).rev().map(|k| 0.5f64.powi(k)))
        .chain((17..=32).map(|k| k as f64 / 32.0))
}

fn rm_dense(chain: &PolyChain, start: usize) -> bool {
    let v = chain.vertices();
    let o = v[start];
    let mut last = 0.0;
    for s in start..v.len() - 1 {
        for t in samples() {
            let d = o.distance(v[s].lerp(v[s + 1], t));
            if d < last - 1e-12 {
                return false;
            }
            last = d;
        }
    }
    true
}

fn rm_dense_all(chain: &PolyChain) -> bool {
    (0..chain.len()).all(|s| rm_dense(chain, s))
}

fn seg_point(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let t = ((p - a).dot(ab) / ab.dot(ab)).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

fn seg_seg(p: Point2, q: Point2, r: Point2, s: Point2) -> f64 {
    let side = |a: Point2, b: Point2, c: Point2| (b - a).cross(c - a);
    let (d1, d2) = (side(p, q, r), side(p, q, s));
    let (d3, d4) = (side(r, s, p), side(r, s, q));
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        return 0.0;
    }
    seg_point(p, r, s)
        .min(seg_point(q, r, s))
        .min(seg_point(r, p, q))
        .min(seg_point(s, p, q))
}

/// Opened and original chains stay apart beyond the first opened vertex.
fn noncrossing_oracle(orig: &PolyChain, opened: &PolyChain, first: usize) -> bool {
    let tol = 1e-9 * orig.total_length();
    let (a, b) = (&orig.vertices()[first..], &opened.vertices()[first..]);
    for s in 0..a.len() - 1 {
        for t in 0..b.len() - 1 {
            if (s, t) != (0, 0) && seg_seg(a[s], a[s + 1], b[t], b[t + 1]) <= tol {
                return false;
            }
        }
    }
    true
}

type Mat3 = [[f64; 3]; 3];

fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    m
}

fn rotation_matrix(r: &PlanarRotation) -> Mat3 {
    let (s, c) = r.angle.sin_cos();
    let (x, y) = (r.center.x, r.center.y);
    [
        [c, -s, x - c * x + s * y],
        [s, c, y - s * x - c * y],
        [0.0, 0.0, 1.0],
    ]
}

fn composed_matrix(rs: &[PlanarRotation]) -> Mat3 {
    rs.iter().fold(
        [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        |m, r| mat_mul(&rotation_matrix(r), &m),
    )
}

fn mat_apply(m: &Mat3, p: Point2) -> Point2 {
    Point2::new(
        m[0][0] * p.x + m[0][1] * p.y + m[0][2],
        m[1][0] * p.x + m[1][1] * p.y + m[1][2],
    )
}

/// Fixed point of the composed matrix by Cramer's rule.
fn matrix_center(m: &Mat3) -> Option<Point2> {
    let (a, b, c, d) = (1.0 - m[0][0], -m[0][1], -m[1][0], 1.0 - m[1][1]);
    let det = a * d - b * c;
    (det.abs() > 1e-12).then(|| {
        Point2::new(
            (m[0][2] * d - b * m[1][2]) / det,
            (a * m[1][2] - c * m[0][2]) / det,
        )
    })
}

/// Distance from `p` to the convex hull of `pts`: zero inside, otherwise
/// the distance to the nearest segment between two points.
fn hull_distance_oracle(pts: &[Point2], p: Point2) -> f64 {
    let n = pts.len();
    if n >= 3 {
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (pts[i], pts[j], pts[k]);
                    let s = [
                        (b - a).cross(p - a),
                        (c - b).cross(p - b),
                        (a - c).cross(p - c),
                    ];
                    if s.iter().all(|&x| x >= 0.0) || s.iter().all(|&x| x <= 0.0) {
                        return 0.0;
                    }
                }
            }
        }
    }
    let mut best = pts
        .iter()
        .map(|&q| q.distance(p))
        .fold(f64::INFINITY, f64::min);
    for i in 0..n {
        for j in i + 1..n {
            best = best.min(seg_point(p, pts[i], pts[j]));
        }
    }
    best
}

/// Largest penetration depth over all face pairs by separating axes.
fn max_penetration(layout: &Layout) -> f64 {
    let polys: Vec<Vec<Point2>> = layout.faces.iter().map(|f| f.polygon.clone()).collect();
    let mut worst: f64 = 0.0;
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let (p, q) = (&polys[i], &polys[j]);
            let mut depth = f64::INFINITY;
            for poly in [p, q] {
                for k in 0..poly.len() {
                    let e = poly[(k + 1) % poly.len()] - poly[k];
                    let Some(axis) = Point2::new(-e.y, e.x).normalized() else {
                        continue;
                    };
                    let range = |s: &[Point2]| {
                        s.iter()
                            .map(|v| v.dot(axis))
                            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
                                (lo.min(x), hi.max(x))
                            })
                    };
                    let ((a0, a1), (b0, b1)) = (range(p), range(q));
                    depth = depth.min(a1.min(b1) - a0.max(b0));
                }
            }
            worst = worst.max(depth);
        }
    }
    worst
}

fn isometry_oracle(p: &NestedPrismatoid, layout: &Layout) -> f64 {
    let mut worst: f64 = 0.0;
    for f in &layout.faces {
        let m = f.corners.len();
        for i in 0..m {
            for j in i + 1..m {
                let src = p.point(f.corners[i]).distance(p.point(f.corners[j]));
                let dst = f.polygon[i].distance(f.polygon[j]);
                worst = worst.max((src - dst).abs() / src);
            }
        }
    }
    worst
}

fn canonical_config(rng: &mut ChaCha8Rng) -> (f64, f64, f64, f64) {
    let cfg = random_vertex_config(rng, 1).expect("config");
    (planar_angle(&cfg), cfg.fan[0].x, cfg.fan[0].y, cfg.z)
}

// criteria

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let fixed = phi_closed_form(120f64.to_radians(), 0.0, 1.0, 0.0).unwrap();
    let fixed_err = (fixed - 2.094395).abs();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    let mut worst_oracle: f64 = 0.0;
    for _ in 0..10_000 {
        let (theta, x, y, z) = canonical_config(&mut rng);
        let closed = phi_closed_form(theta, x, y, z).unwrap();
        let cfg = VertexOpeningConfig::canonical(theta, x, y, z).unwrap();
        worst = worst.max((closed - phi_from_geometry(&cfg).unwrap()).abs());
        worst_oracle = worst_oracle.max((closed - phi_oracle(&cfg)).abs());
    }
    let elapsed = start.elapsed();
    outcome(
        fixed_err <= 1e-6 && worst <= 1e-10 && worst_oracle <= 1e-10 && elapsed < Duration::from_secs(5),
        format!(
            "phi(120deg,0,1,0) = {fixed:.9}; max |closed - geometry| = {worst:.2e}, vs oracle {worst_oracle:.2e}; {elapsed:.2?}"
        ),
    )
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut bound_failures = 0;
    let mut min_gap = f64::INFINITY;
    let mut max_phi: f64 = 0.0;
    for _ in 0..10_000 {
        let cfg = random_vertex_config(&mut rng, 6).unwrap();
        let (theta, phi) = (planar_angle(&cfg), phi_oracle(&cfg));
        min_gap = min_gap.min(phi - theta);
        max_phi = max_phi.max(phi);
        if !(theta < phi && phi <= PI + 1e-12) || !check_opening(&cfg).unwrap() {
            bound_failures += 1;
        }
    }
    let mut reflect_err: f64 = 0.0;
    for _ in 0..10_000 {
        let cfg = random_vertex_config(&mut rng, 1).unwrap();
        let (phi, phi_r) = reflection_identity(&cfg).unwrap();
        let mirror = VertexOpeningConfig {
            fan: vec![cfg.b * 2.0 - cfg.fan[0]],
            ..cfg.clone()
        };
        reflect_err = reflect_err
            .max((phi + phi_r - TAU).abs())
            .max((phi_oracle(&cfg) + phi_oracle(&mirror) - TAU).abs());
    }
    let mut monotone_failures = 0;
    for _ in 0..1_000 {
        let (theta, x, y, _) = canonical_config(&mut rng);
        let top = rng.gen_range(0.5..10.0);
        let zs: Vec<f64> = (0..50).map(|k| top * k as f64 / 49.0).collect();
        let phis: Vec<f64> = zs
            .iter()
            .map(|&z| phi_oracle(&VertexOpeningConfig::canonical(theta, x, y, z).unwrap()))
            .collect();
        let oracle_ok = phis.windows(2).all(|w| w[1] >= w[0] - 1e-8);
        if !oracle_ok || !check_monotonic(theta, x, y, &zs).unwrap() {
            monotone_failures += 1;
        }
    }
    outcome(
        bound_failures == 0 && reflect_err <= 1e-10 && monotone_failures == 0,
        format!(
            "bounds: {bound_failures}/10000 failures (min phi-theta {min_gap:.2e}, max phi {max_phi:.6}); reflection max err {reflect_err:.2e}; monotone: {monotone_failures}/1000 failures"
        ),
    )
}

fn random_rm_chain(rng: &mut ChaCha8Rng) -> PolyChain {
    loop {
        let m = rng.gen_range(3..=10);
        let chain = random_convex_chain(rng, m, PI).unwrap();
        if is_rm(&chain) && chain.curl(1e-12).is_some() {
            return chain;
        }
    }
}

fn random_opening(rng: &mut ChaCha8Rng, chain: &PolyChain) -> OpeningVector {
    let w = (1..chain.len() - 1)
        .map(|i| {
            let room = PI - chain.convex_angle(i).unwrap();
            if rng.gen_bool(0.3) {
                0.0
            } else {
                room * rng.gen::<f64>()
            }
        })
        .collect();
    OpeningVector::new(w).unwrap()
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut acute = 0;
    for _ in 0..1_000 {
        let m = rng.gen_range(3..=10);
        let chain = random_acute_chain(&mut rng, m).unwrap();
        if is_rm(&chain) || rm_dense_all(&chain) {
            acute += 1;
        }
    }
    let mut from_first = 0;
    for _ in 0..1_000 {
        let m = rng.gen_range(3..=12);
        let chain = random_convex_chain(&mut rng, m, 1.9 * PI).unwrap();
        let lib = is_rm_from(&chain, 0);
        if lib != is_rm(&chain)
            || lib != rm_dense(&chain, 0)
            || is_rm(&chain) != rm_dense_all(&chain)
        {
            from_first += 1;
        }
    }
    let mut crossing = 0;
    let mut stays_rm = 0;
    for _ in 0..1_000 {
        let chain = random_rm_chain(&mut rng);
        let w = random_opening(&mut rng, &chain);
        let opened = open_chain(&chain, &w).unwrap();
        let apart = w
            .first_open()
            .is_none_or(|f| noncrossing_oracle(&chain, &opened, f));
        if !apart || !check_noncrossing(&chain, &w).unwrap() {
            crossing += 1;
        }
        if !is_rm(&opened) || !rm_dense_all(&opened) {
            stays_rm += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        acute + from_first + crossing + stays_rm == 0 && elapsed < Duration::from_secs(60),
        format!(
            "failures: acute {acute}, rm-from-first {from_first}, noncrossing {crossing}, opened-stays-rm {stays_rm} (1000 each); {elapsed:.2?}"
        ),
    )
}

fn criterion_4() -> Outcome {
    let missing: Vec<usize> = (3..=20)
        .filter(|&n| {
            let poly = regular_polygon(n).unwrap();
            let ws = find_rm_property(&poly);
            ws.is_empty() || ws.iter().any(|w| w.verify(&poly).is_err())
        })
        .collect();
    let survey = rm_property_survey(40, (8, 12), 40).unwrap();
    let with = survey.iter().filter(|(_, w)| !w.is_empty()).count();
    outcome(
        missing.is_empty(),
        format!(
            "regular n=3..20 without witness: {missing:?}; random 8-12-gons with RM-property: {with}/40 ({:.0}%)",
            100.0 * with as f64 / 40.0
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let random_point =
        |rng: &mut ChaCha8Rng| Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let mut outside = 0;
    let mut oracle_outside = 0;
    let mut worst_dist: f64 = 0.0;
    let mut compose_err: f64 = 0.0;
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=8);
        let total = rng.gen_range(0.01..=PI);
        let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..1.0)).collect();
        let sum: f64 = w.iter().sum();
        let rs: Vec<PlanarRotation> = w
            .iter()
            .map(|&x| PlanarRotation::new(random_point(&mut rng), total * x / sum).unwrap())
            .collect();
        let composed = compose(&rs).unwrap();
        let m = composed_matrix(&rs);
        for _ in 0..4 {
            let p = random_point(&mut rng);
            let seq = rs.iter().fold(p, |q, r| r.apply(q));
            compose_err = compose_err
                .max(seq.distance(composed.apply(p)))
                .max(mat_apply(&m, p).distance(composed.apply(p)));
        }
        if !hull_membership_check(&rs).unwrap() {
            outside += 1;
        }
        let centers: Vec<Point2> = rs.iter().map(|r| r.center).collect();
        let diam = centers
            .iter()
            .flat_map(|a| centers.iter().map(move |b| a.distance(*b)))
            .fold(0.0, f64::max);
        let c = matrix_center(&m).expect("total angle in (0, pi]");
        let d = hull_distance_oracle(&centers, c);
        worst_dist = worst_dist.max(d);
        if d > 1e-9 * diam.max(1.0) {
            oracle_outside += 1;
        }
    }
    outcome(
        outside == 0 && oracle_outside == 0 && compose_err <= 1e-10,
        format!(
            "composed center outside hull in {outside}/10000 (oracle {oracle_outside}, max distance {worst_dist:.3}); compose max err {compose_err:.2e}"
        ),
    )
}

struct Soundness {
    isometry: f64,
    instances: usize,
}

impl Soundness {
    fn record(&mut self, p: &NestedPrismatoid, layout: &Layout) {
        self.isometry = self.isometry.max(isometry_oracle(p, layout));
        self.instances += 1;
    }
}

fn criterion_6(sound: &mut Soundness) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut done, mut drawn, mut overlapping) = (0, 0, 0);
    let mut worst_depth: f64 = 0.0;
    while done < 200 {
        drawn += 1;
        let nb = rng.gen_range(4..=16);
        let na = rng.gen_range(3..=16);
        let p = random_nested_prismatoid(nb, na, 1.0, rng.gen()).unwrap();
        let Some(plan) = choose_sweep_plan(p.base(), p.top(), &SWEEP_HEIGHTS).unwrap() else {
            continue;
        };
        let w = plan.witness.expect("witnessed plan");
        if w.verify(p.top()).is_err() || !is_rm(&w.a_chain(p.top())) || !is_rm(&w.b_chain(p.top()))
        {
            overlapping += 1;
        }
        done += 1;
        for &z in &SWEEP_HEIGHTS {
            let q = p.with_z(z).unwrap();
            let layout = unfold(&q, &plan).unwrap();
            let depth = max_penetration(&layout);
            worst_depth = worst_depth.max(depth);
            if overlap_verdict(&layout).overlaps() || depth > 1e-9 * q.base().diameter() {
                overlapping += 1;
            }
            sound.record(&q, &layout);
        }
    }
    let figure = nested_prismatoid_from_config(&GenConfig::default()).unwrap();
    let band = build_band(&figure).unwrap();
    let figure_ok = match choose_plan(&figure, &band).unwrap() {
        Some(plan) => {
            let layout = unfold(&figure, &plan).unwrap();
            sound.record(&figure, &layout);
            !overlap_verdict(&layout).overlaps()
                && max_penetration(&layout) <= 1e-9
                && (figure.base().diameter() - 1.0).abs() < 1e-12
        }
        None => false,
    };
    let elapsed = start.elapsed();
    outcome(
        overlapping == 0 && figure_ok && elapsed < Duration::from_secs(300),
        format!(
            "{done} witnessed instances ({drawn} drawn) x {} heights: {overlapping} overlapping, max penetration {worst_depth:.2e}; 14/16 z=0.2 instance nonoverlapping: {figure_ok}; {elapsed:.2?}",
            SWEEP_HEIGHTS.len()
        ),
    )
}

fn criterion_7(sound: &mut Soundness) -> Outcome {
    let hex = spiked_hexagon(DEFAULT_SPIKE_SHARPNESS).unwrap();
    let no_witness = find_rm_property(&hex).is_empty();
    let acute = all_splits_have_acute_angle(&hex);
    let report = find_overlap_demo(&hex, 5_000, 7).unwrap();
    let demo_ok = match &report.demo {
        Some(demo) => {
            let p = NestedPrismatoid::new(demo.base.clone(), demo.top.clone(), demo.z).unwrap();
            let plan = demo.plan;
            let band = build_band(&p).unwrap();
            let layout = assemble(&p, &band, plan.cut, plan.attach_b, plan.attach_a).unwrap();
            sound.record(&p, &layout);
            overlap_verdict(&layout).overlaps() && max_penetration(&layout) > 1e-9
        }
        None => false,
    };
    outcome(
        no_witness && acute && demo_ok,
        format!(
            "no RM witness: {no_witness}; every split acute: {acute}; overlapping unfolding found after {} trials: {demo_ok}",
            report.trials
        ),
    )
}

fn criterion_8(sound: &mut Soundness) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut without = 0;
    for _ in 0..50 {
        let n = rng.gen_range(3..=16);
        let p = random_prismoid(n, rng.gen_range(0.05..2.0), rng.gen()).unwrap();
        let band = build_band(&p).unwrap();
        let safe = find_safe_cuts(&p, &band);
        match safe.first() {
            Some(&cut) => sound.record(&p, &develop_band(&p, &band, cut).unwrap()),
            None => without += 1,
        }
    }
    let mut counts = Vec::new();
    for _ in 0..50 {
        let p = random_nested_prismatoid(
            rng.gen_range(4..=16),
            rng.gen_range(3..=16),
            rng.gen_range(0.05..2.0),
            rng.gen(),
        )
        .unwrap();
        let band = build_band(&p).unwrap();
        let safe = find_safe_cuts(&p, &band);
        if let Some(&cut) = safe.first() {
            sound.record(&p, &develop_band(&p, &band, cut).unwrap());
        }
        counts.push(safe.len());
    }
    let none = counts.iter().filter(|&&c| c == 0).count();
    let mean = counts.iter().sum::<usize>() as f64 / counts.len() as f64;
    outcome(
        without == 0,
        format!(
            "prismoids without a safe cut: {without}/50; prismatoids: mean {mean:.1} safe cuts, {none}/50 with none"
        ),
    )
}

fn criterion_9(sound: &Soundness) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut angle_err: f64 = 0.0;
    let mut compared = 0;
    for _ in 0..200 {
        let p = random_nested_prismatoid(
            rng.gen_range(4..=16),
            rng.gen_range(3..=16),
            rng.gen_range(0.05..3.0),
            rng.gen(),
        )
        .unwrap();
        let band = build_band(&p).unwrap();
        let layout = develop_band(&p, &band, rng.gen_range(0..band.len())).unwrap();
        let dev = developed_chain_angles(&layout, &band);
        let rb = open_band_report(&p, &band, BandSide::B).unwrap();
        let ra = open_band_report(&p, &band, BandSide::A).unwrap();
        for (i, phi) in dev.b {
            angle_err = angle_err.max((phi - rb.records[i].phi).abs());
            compared += 1;
        }
        for (j, phi) in dev.a {
            angle_err = angle_err.max((phi - ra.records[j].phi).abs());
            compared += 1;
        }
    }
    outcome(
        sound.isometry <= 1e-9 && angle_err <= 1e-9 && sound.instances > 0,
        format!(
            "max relative isometry error {:.2e} over {} layouts; chain angles max err {angle_err:.2e} over {compared} vertices",
            sound.isometry, sound.instances
        ),
    )
}

fn main() -> ExitCode {
    let mut sound = Soundness {
        isometry: 0.0,
        instances: 0,
    };
    let results = [
        ("1 phi formula", criterion_1()),
        ("2 opening bounds", criterion_2()),
        ("3 radial monotonicity", criterion_3()),
        ("4 regular polygons", criterion_4()),
        ("5 composed rotations", criterion_5()),
        ("6 end-to-end unfolding", criterion_6(&mut sound)),
        ("7 counterexample mechanism", criterion_7(&mut sound)),
        ("8 safe cuts", criterion_8(&mut sound)),
        ("9 development soundness", criterion_9(&sound)),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!(
            "{} criterion {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
