use super::{orientation, ConvexPolygon, Orientation, Point2};
use crate::error::{GeomError, Result};

/// Convex hull (Andrew's monotone chain), ccw, with collinear boundary points
/// removed so the result is strictly convex.
pub fn convex_hull_2d(points: &[Point2]) -> Result<ConvexPolygon> {
    if points.len() < 3 {
        return Err(GeomError::DegenerateInput(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    if let Some(i) = points.iter().position(|p| !p.is_finite()) {
        return Err(GeomError::DegenerateInput(format!(
            "point {i} is not finite"
        )));
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();

    let mut lower: Vec<Point2> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2
            && orientation(lower[lower.len() - 2], lower[lower.len() - 1], p)
                != Orientation::CounterClockwise
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && orientation(upper[upper.len() - 2], upper[upper.len() - 1], p)
                != Orientation::CounterClockwise
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(GeomError::DegenerateInput(
            "all points are collinear".into(),
        ));
    }
    ConvexPolygon::new(lower)
}
