//! Planar and spatial primitives, predicates and intersection tests.

mod chain;
mod hull;
mod motion;
mod overlap;
mod point;
mod polygon;
pub mod predicates;
mod tolerance;

pub use chain::{Curl, PolyChain};
pub use hull::convex_hull_2d;
pub use motion::RigidMotion2;
pub use overlap::{
    clip_convex, convex_intersection_area, convex_polygons_overlap, overlap_margin, polygon_area,
    triangles_overlap, Triangle2,
};
pub use point::{Point2, Point3, Vector2, Vector3};
pub use polygon::{point_strictly_inside, ConvexPolygon};
pub use predicates::{
    orientation, orientation_tol, segment_distance, segments_intersect, signed_area2, Orientation,
};
pub use tolerance::{Tolerance, DEFAULT_RELATIVE_EPS};
