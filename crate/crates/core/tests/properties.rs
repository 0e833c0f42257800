use std::f64::consts::{PI, TAU};

use band_unfold::band::{build_band, TriangleKind};
use band_unfold::generate::{random_convex_chain, random_nested_prismatoid, random_prismoid};
use band_unfold::geom::{convex_hull_2d, convex_intersection_area, Point2, PolyChain};
use band_unfold::io::PrismatoidDocument;
use band_unfold::rm::{is_rm, is_rm_from};
use band_unfold::rotation::{compose, Composition, PlanarRotation};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn point() -> impl Strategy<Value = Point2> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(x, y)| Point2::new(x, y))
}

/// Points that are strict corners of the hull, found by testing every
/// triangle of other points for containment.
fn brute_force_extreme(pts: &[Point2]) -> Vec<Point2> {
    let n = pts.len();
    let inside = |p: Point2, a: Point2, b: Point2, c: Point2| {
        let s = [
            (b - a).cross(p - a),
            (c - b).cross(p - b),
            (a - c).cross(p - c),
        ];
        s.iter().all(|&x| x >= 0.0) || s.iter().all(|&x| x <= 0.0)
    };
    let on_segment = |p: Point2, a: Point2, b: Point2| {
        (b - a).cross(p - a) == 0.0 && (p - a).dot(p - b) <= 0.0 && p != a && p != b
    };
    let mut out: Vec<Point2> = pts
        .iter()
        .enumerate()
        .filter(|&(i, &p)| {
            for j in 0..n {
                for k in j + 1..n {
                    if pts[j] == p || pts[k] == p {
                        continue;
                    }
                    if on_segment(p, pts[j], pts[k]) {
                        return false;
                    }
                    for l in k + 1..n {
                        if l == i || pts[l] == p {
                            continue;
                        }
                        if inside(p, pts[j], pts[k], pts[l]) {
                            return false;
                        }
                    }
                }
            }
            true
        })
        .map(|(_, &p)| p)
        .collect();
    out.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    out.dedup();
    out
}

fn outward_normal_angle(a: Point2, b: Point2) -> f64 {
    let d = b - a;
    Point2::new(d.y, -d.x).angle().rem_euclid(TAU)
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn hull_matches_brute_force(pts in prop::collection::vec(point(), 3..12)) {
        let oracle = brute_force_extreme(&pts);
        match convex_hull_2d(&pts) {
            Ok(hull) => {
                let mut got = hull.vertices().to_vec();
                got.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
                prop_assert_eq!(got, oracle);
                prop_assert!(hull.signed_area() > 0.0);
            }
            Err(_) => prop_assert!(oracle.len() < 3),
        }
    }

    #[test]
    fn band_apexes_are_supporting(nb in 3usize..14, na in 3usize..14, z in 0.01..4.0f64, seed: u64) {
        let p = random_nested_prismatoid(nb, na, z, seed).unwrap();
        let band = build_band(&p).unwrap();
        prop_assert_eq!(band.len(), nb + na);
        let (b, a) = (p.base(), p.top());
        for t in band.triangles() {
            let (normal, apex, extreme) = match t.kind {
                TriangleKind::BBased { edge, apex } => {
                    let (u, v) = b.edge(edge);
                    let n = Point2::new(v.y - u.y, u.x - v.x);
                    (n, a.vertex(apex), a.vertices().iter().map(|q| q.dot(n)).fold(f64::MIN, f64::max))
                }
                TriangleKind::ABased { edge, apex } => {
                    let (u, v) = a.edge(edge);
                    let n = Point2::new(v.y - u.y, u.x - v.x);
                    (n, b.vertex(apex), b.vertices().iter().map(|q| q.dot(n)).fold(f64::MIN, f64::max))
                }
            };
            prop_assert!(apex.dot(normal) >= extreme - 1e-12 * normal.norm());
        }
    }

    #[test]
    fn band_order_merges_normal_angles(nb in 3usize..14, na in 3usize..14, seed: u64) {
        let p = random_nested_prismatoid(nb, na, 1.0, seed).unwrap();
        let band = build_band(&p).unwrap();
        let angle = |k: &TriangleKind| match *k {
            TriangleKind::BBased { edge, .. } => {
                let (u, v) = p.base().edge(edge);
                outward_normal_angle(u, v)
            }
            TriangleKind::ABased { edge, .. } => {
                let (u, v) = p.top().edge(edge);
                outward_normal_angle(u, v)
            }
        };
        let first = angle(&band.triangles()[0].kind);
        let rel: Vec<f64> = band.triangles().iter().map(|t| (angle(&t.kind) - first).rem_euclid(TAU)).collect();
        let wrapped: Vec<f64> = rel.iter().map(|&r| if r > TAU - 1e-9 { r - TAU } else { r }).collect();
        prop_assert!(wrapped.windows(2).all(|w| w[1] >= w[0] - 1e-9), "{:?}", wrapped);
    }

    #[test]
    fn prismoid_quads_are_planar(n in 3usize..14, seed: u64) {
        let p = random_prismoid(n, 0.7, seed).unwrap();
        let band = build_band(&p).unwrap();
        prop_assert!(band.triangles().iter().all(|t| t.coplanar));
    }

    #[test]
    fn compose_matches_matrix_product(
        centers in prop::collection::vec(point(), 1..7),
        angles in prop::collection::vec(0.01..1.5f64, 7),
        probe in point(),
    ) {
        let rs: Vec<PlanarRotation> = centers
            .iter()
            .zip(&angles)
            .map(|(&c, &a)| PlanarRotation::new(c, a).unwrap())
            .collect();
        let mut m = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
        for r in &rs {
            let (s, c) = r.angle.sin_cos();
            let (x, y) = (r.center.x, r.center.y);
            let rot = [[c, -s, x - c * x + s * y], [s, c, y - s * x - c * y]];
            let mut next = [[0.0; 3]; 2];
            for i in 0..2 {
                for j in 0..3 {
                    next[i][j] = rot[i][0] * m[0][j] + rot[i][1] * m[1][j] + if j == 2 { rot[i][2] } else { 0.0 };
                }
            }
            m = next;
        }
        let want = Point2::new(
            m[0][0] * probe.x + m[0][1] * probe.y + m[0][2],
            m[1][0] * probe.x + m[1][1] * probe.y + m[1][2],
        );
        let c = compose(&rs).unwrap();
        prop_assert!(c.apply(probe).distance(want) < 1e-10);
        if let Composition::Rotation(r) = c {
            prop_assert!(r.apply(r.center).distance(r.center) < 1e-12);
            let total: f64 = rs.iter().map(|r| r.angle).sum();
            prop_assert!((r.angle - total).rem_euclid(TAU).min((total - r.angle).rem_euclid(TAU)) < 1e-9);
        }
    }

    #[test]
    fn rm_matches_projection_parameters(m in 3usize..12, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chain: PolyChain = random_convex_chain(&mut rng, m, 1.9 * PI).unwrap();
        let v = chain.vertices();
        // distance from v_s grows along [p, q] iff v_s projects to or before p
        let from = |s: usize| {
            (s..v.len() - 1).all(|k| {
                let (p, q) = (v[k], v[k + 1]);
                let t = (v[s] - p).dot(q - p) / (q - p).dot(q - p);
                t <= 1e-12
            })
        };
        prop_assert_eq!(is_rm_from(&chain, 0), from(0));
        prop_assert_eq!(is_rm(&chain), (0..v.len()).all(from));
    }

    #[test]
    fn overlap_area_is_symmetric(a in point(), b in point(), c in point(), d in point(), e in point(), f in point()) {
        let ccw = |p: Point2, q: Point2, r: Point2| {
            if (q - p).cross(r - p) >= 0.0 { vec![p, q, r] } else { vec![p, r, q] }
        };
        let (s, t) = (ccw(a, b, c), ccw(d, e, f));
        let x = convex_intersection_area(&s, &t);
        let y = convex_intersection_area(&t, &s);
        prop_assert!((x - y).abs() <= 1e-12);
        prop_assert!(x >= -1e-15);
    }

    #[test]
    fn document_round_trip(nb in 3usize..12, na in 3usize..12, z in 0.01..4.0f64, seed: u64) {
        let p = random_nested_prismatoid(nb, na, z, seed).unwrap();
        let json = PrismatoidDocument::from_prismatoid(&p, None).to_json();
        let q = PrismatoidDocument::parse_prismatoid(&json).unwrap();
        prop_assert_eq!(p.base().vertices(), q.base().vertices());
        prop_assert_eq!(p.top().vertices(), q.top().vertices());
        prop_assert_eq!(p.z(), q.z());
    }
}
