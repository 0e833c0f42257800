//! Deterministic SVG rendering of layouts, RM witnesses and involutes.
//!
//! Scenes are fitted into a fixed square canvas with the y axis pointing up.

use std::fmt::Write as _;

use crate::geom::{ConvexPolygon, Point2, PolyChain};
use crate::rm::{Involute, RmWitness};
use crate::unfold::{FaceId, Layout};

pub const CANVAS: f64 = 800.0;
const PAD: f64 = 0.05;

pub const BAND_FILL: &str = "#c8c8c8";
pub const BASE_FILL: &str = "#9ecae1";
pub const TOP_FILL: &str = "#fdae6b";
pub const WITNESS_EDGE: &str = "#d62728";
pub const RIGHT_CHAIN: &str = "#1f77b4";
pub const LEFT_CHAIN: &str = "#2ca02c";
const STROKE: &str = "#333333";

#[derive(Debug, Clone, PartialEq)]
enum Item {
    Polygon {
        pts: Vec<Point2>,
        fill: &'static str,
    },
    Polyline {
        pts: Vec<Point2>,
        stroke: &'static str,
        width: f64,
    },
    Dot {
        at: Point2,
        fill: &'static str,
    },
}

impl Item {
    fn points(&self) -> &[Point2] {
        match self {
            Item::Polygon { pts, .. } | Item::Polyline { pts, .. } => pts,
            Item::Dot { at, .. } => std::slice::from_ref(at),
        }
    }

    fn mapped(&self, f: impl Fn(Point2) -> Point2) -> Item {
        match self {
            Item::Polygon { pts, fill } => Item::Polygon {
                pts: pts.iter().map(|&p| f(p)).collect(),
                fill,
            },
            Item::Polyline { pts, stroke, width } => Item::Polyline {
                pts: pts.iter().map(|&p| f(p)).collect(),
                stroke,
                width: *width,
            },
            Item::Dot { at, fill } => Item::Dot { at: f(*at), fill },
        }
    }
}

/// A collection of shapes in model coordinates.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Scene {
    items: Vec<Item>,
}

impl Scene {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn polygon(&mut self, pts: &[Point2], fill: &'static str) -> &mut Self {
        self.items.push(Item::Polygon {
            pts: pts.to_vec(),
            fill,
        });
        self
    }

    pub fn polyline(&mut self, pts: &[Point2], stroke: &'static str, width: f64) -> &mut Self {
        self.items.push(Item::Polyline {
            pts: pts.to_vec(),
            stroke,
            width,
        });
        self
    }

    pub fn dot(&mut self, at: Point2, fill: &'static str) -> &mut Self {
        self.items.push(Item::Dot { at, fill });
        self
    }

    fn bounds(&self) -> Option<(Point2, Point2)> {
        let mut pts = self.items.iter().flat_map(|i| i.points().iter());
        let first = *pts.next()?;
        Some(pts.fold((first, first), |(lo, hi), p| {
            (
                Point2::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point2::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        }))
    }

    /// Places `other`, fitted into the unit square, in the square of side
    /// `size` at `origin`.
    pub fn inset(&mut self, other: &Scene, origin: Point2, size: f64) -> &mut Self {
        let Some((lo, hi)) = other.bounds() else {
            return self;
        };
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
        let k = size * (1.0 - 2.0 * PAD) / span;
        let centre = lo.lerp(hi, 0.5);
        let target = origin + Point2::new(size, size) * 0.5;
        for item in &other.items {
            self.items.push(item.mapped(|p| target + (p - centre) * k));
        }
        self
    }

    pub fn to_svg(&self) -> String {
        let (lo, hi) = self
            .bounds()
            .unwrap_or((Point2::ORIGIN, Point2::new(1.0, 1.0)));
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(f64::MIN_POSITIVE);
        let k = CANVAS * (1.0 - 2.0 * PAD) / span;
        let centre = lo.lerp(hi, 0.5);
        let to_canvas = |p: Point2| {
            let q = (p - centre) * k;
            (CANVAS / 2.0 + q.x, CANVAS / 2.0 - q.y)
        };
        let path = |pts: &[Point2]| {
            let mut s = String::new();
            for (i, &p) in pts.iter().enumerate() {
                let (x, y) = to_canvas(p);
                if i > 0 {
                    s.push(' ');
                }
                write!(s, "{x:.3},{y:.3}").unwrap();
            }
            s
        };
        let mut out = String::new();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#,
            c = CANVAS
        )
        .unwrap();
        writeln!(
            out,
            r#"<rect width="{c}" height="{c}" fill="white"/>"#,
            c = CANVAS
        )
        .unwrap();
        for item in &self.items {
            match item {
                Item::Polygon { pts, fill } => writeln!(
                    out,
                    r#"<polygon points="{}" fill="{fill}" stroke="{STROKE}" stroke-width="0.8"/>"#,
                    path(pts)
                ),
                Item::Polyline { pts, stroke, width } => writeln!(
                    out,
                    r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="{width}"/>"#,
                    path(pts)
                ),
                Item::Dot { at, fill } => {
                    let (x, y) = to_canvas(*at);
                    writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="{fill}"/>"#)
                }
            }
            .unwrap();
        }
        out.push_str("</svg>\n");
        out
    }
}

pub fn layout_scene(layout: &Layout) -> Scene {
    let mut scene = Scene::new();
    for f in &layout.faces {
        let fill = match f.id {
            FaceId::Band(_) => BAND_FILL,
            FaceId::Base => BASE_FILL,
            FaceId::Top => TOP_FILL,
        };
        scene.polygon(&f.polygon, fill);
    }
    scene
}

pub fn render_layout(layout: &Layout) -> String {
    layout_scene(layout).to_svg()
}

/// Polygon with the witness edge in red, the right (b-side) chain in blue
/// and the left (a-side) chain in green.
pub fn rm_scene(poly: &ConvexPolygon, witness: Option<&RmWitness>) -> Scene {
    let mut scene = Scene::new();
    scene.polygon(poly.vertices(), "#f0f0f0");
    if let Some(w) = witness {
        scene.polyline(w.b_chain(poly).vertices(), RIGHT_CHAIN, 2.5);
        scene.polyline(w.a_chain(poly).vertices(), LEFT_CHAIN, 2.5);
        scene.polyline(&[poly.vertex(w.a), poly.vertex(w.b)], WITNESS_EDGE, 3.0);
        scene.dot(poly.vertex(w.apex), STROKE);
    }
    scene
}

pub fn render_rm_polygon(poly: &ConvexPolygon, witness: Option<&RmWitness>) -> String {
    rm_scene(poly, witness).to_svg()
}

/// Polygons in a grid of `cols` columns, row by row from the top.
pub fn render_rm_grid(items: &[(ConvexPolygon, Option<RmWitness>)], cols: usize) -> String {
    let mut scene = Scene::new();
    let cols = cols.max(1);
    let rows = items.len().div_ceil(cols);
    for (k, (poly, w)) in items.iter().enumerate() {
        let (r, c) = (k / cols, k % cols);
        let origin = Point2::new(c as f64, (rows - 1 - r) as f64);
        scene.inset(&rm_scene(poly, w.as_ref()), origin, 1.0);
    }
    scene.to_svg()
}

/// Samples per involute arc.
const ARC_SAMPLES: usize = 48;

/// A chain with its involute arcs and any number of openings of it.
pub fn render_involute(chain: &PolyChain, involute: &Involute, openings: &[PolyChain]) -> String {
    let mut scene = Scene::new();
    for arc in &involute.arcs {
        let pts: Vec<Point2> = (0..=ARC_SAMPLES)
            .map(|s| arc.point_at(s as f64 / ARC_SAMPLES as f64))
            .collect();
        scene.polyline(&pts, RIGHT_CHAIN, 1.0);
    }
    for o in openings {
        scene.polyline(o.vertices(), LEFT_CHAIN, 1.0);
    }
    scene.polyline(chain.vertices(), STROKE, 2.0);
    scene.to_svg()
}

/// A chain and an opening of it drawn over each other.
pub fn render_crossing(chain: &PolyChain, opened: &PolyChain) -> String {
    let mut scene = Scene::new();
    scene.polyline(chain.vertices(), STROKE, 2.0);
    scene.polyline(opened.vertices(), WITNESS_EDGE, 2.0);
    scene.dot(chain.vertex(0), STROKE);
    scene.to_svg()
}

/// Line plot of `(x, y)` samples with axes through the data's minimum.
pub fn render_plot(samples: &[(f64, f64)]) -> String {
    let mut scene = Scene::new();
    let pts: Vec<Point2> = samples.iter().map(|&(x, y)| Point2::new(x, y)).collect();
    if let (Some(first), Some(last)) = (pts.first(), pts.last()) {
        let ymin = pts.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
        let ymax = pts.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
        scene.polyline(
            &[Point2::new(first.x, ymin), Point2::new(last.x, ymin)],
            STROKE,
            1.0,
        );
        scene.polyline(
            &[Point2::new(first.x, ymin), Point2::new(first.x, ymax)],
            STROKE,
            1.0,
        );
        scene.polyline(&pts, RIGHT_CHAIN, 2.0);
    }
    scene.to_svg()
}
