use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{predicates::ccw_angle, signed_area2, Point2};
use crate::error::{GeomError, Result};

/// An open, directed polygonal chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyChain {
    vertices: Vec<Point2>,
}

/// Which way a convex chain bends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curl {
    Clockwise,
    CounterClockwise,
    Straight,
}

impl PolyChain {
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(GeomError::DegenerateInput(format!(
                "chain needs at least 2 vertices, got {}",
                vertices.len()
            )));
        }
        if let Some(i) = vertices.windows(2).position(|w| w[0] == w[1]) {
            return Err(GeomError::DegenerateSegment(i));
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn segment_lengths(&self) -> Vec<f64> {
        self.segments().map(|(p, q)| p.distance(q)).collect()
    }

    pub fn total_length(&self) -> f64 {
        self.segment_lengths().iter().sum()
    }

    /// Angle at internal vertex `i` on the left of the direction of travel,
    /// in (0, 2pi). A left turn gives an angle below pi.
    pub fn angle_at(&self, i: usize) -> Result<f64> {
        if i == 0 || i + 1 >= self.vertices.len() {
            return Err(GeomError::IndexOutOfRange {
                index: i,
                valid: format!("1..{}", self.vertices.len().saturating_sub(1)),
            });
        }
        let (a, b, c) = (self.vertices[i - 1], self.vertices[i], self.vertices[i + 1]);
        Ok(ccw_angle(c - b, a - b))
    }

    /// Angle at internal vertex `i` on the convex side: `min(left, 2pi - left)`.
    pub fn convex_angle(&self, i: usize) -> Result<f64> {
        let left = self.angle_at(i)?;
        Ok(left.min(TAU - left))
    }

    /// Signed turning angle at internal vertex `i` (ccw positive), in (-pi, pi].
    pub fn turn_at(&self, i: usize) -> Result<f64> {
        Ok(PI - self.angle_at(i)?)
    }

    /// Classifies the chain as convex with a consistent bend direction, or
    /// returns `None` when it zigzags. Turns with |sin| below `eps` count as straight.
    pub fn curl(&self, eps: f64) -> Option<Curl> {
        let mut dir = Curl::Straight;
        for w in self.vertices.windows(3) {
            let (a, b, c) = (w[0], w[1], w[2]);
            let s = signed_area2(a, b, c) / ((b - a).norm() * (c - b).norm());
            let this = if s > eps {
                Curl::CounterClockwise
            } else if s < -eps {
                Curl::Clockwise
            } else if (b - a).dot(c - b) < 0.0 {
                // full fold-back
                return None;
            } else {
                continue;
            };
            if dir == Curl::Straight {
                dir = this;
            } else if dir != this {
                return None;
            }
        }
        let total: f64 = (1..self.len() - 1).map(|i| self.turn_at(i).unwrap()).sum();
        if total.abs() >= TAU {
            return None;
        }
        Some(dir)
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Self { vertices: v }
    }

    /// Reflection across the x-axis (swaps cw and ccw).
    pub fn mirrored(&self) -> Self {
        Self {
            vertices: self
                .vertices
                .iter()
                .map(|p| Point2::new(p.x, -p.y))
                .collect(),
        }
    }

    /// Sub-chain of vertices `from..` (at least two vertices).
    pub fn suffix(&self, from: usize) -> Result<Self> {
        Self::new(self.vertices[from..].to_vec())
    }
}
