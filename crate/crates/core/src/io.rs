//! Prismatoid JSON documents and the phi CSV emitter.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::band::NestedPrismatoid;
use crate::error::{GeomError, Result};
use crate::geom::{ConvexPolygon, Point2, Tolerance};
use crate::opening::phi_closed_form;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid prismatoid: {0}")]
    Geometry(#[from] GeomError),
}

/// `{"B": [[x, y], ...], "A": [[x, y], ...], "z": h, "metadata": ...}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrismatoidDocument {
    #[serde(rename = "B")]
    pub base: Vec<[f64; 2]>,
    #[serde(rename = "A")]
    pub top: Vec<[f64; 2]>,
    pub z: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<serde_json::Value>,
}

fn coords(poly: &ConvexPolygon) -> Vec<[f64; 2]> {
    poly.vertices().iter().map(|&p| p.into()).collect()
}

impl PrismatoidDocument {
    pub fn from_prismatoid(p: &NestedPrismatoid, metadata: Option<serde_json::Value>) -> Self {
        Self {
            base: coords(p.base()),
            top: coords(p.top()),
            z: p.z(),
            metadata,
        }
    }

    pub fn to_prismatoid(&self) -> Result<NestedPrismatoid> {
        NestedPrismatoid::new(
            ConvexPolygon::from_coords(&self.base)?,
            ConvexPolygon::from_coords(&self.top)?,
            self.z,
        )
    }

    /// With an explicit relative tolerance instead of the default.
    pub fn to_prismatoid_with(&self, relative_eps: f64) -> Result<NestedPrismatoid> {
        let base = ConvexPolygon::from_coords(&self.base)?;
        let tol = Tolerance::relative(relative_eps, base.diameter());
        NestedPrismatoid::with_tolerance(base, ConvexPolygon::from_coords(&self.top)?, self.z, tol)
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, DocumentError> {
        Ok(serde_json::from_str(s)?)
    }

    /// Parses and validates in one step.
    pub fn parse_prismatoid(s: &str) -> std::result::Result<NestedPrismatoid, DocumentError> {
        Ok(Self::from_json(s)?.to_prismatoid()?)
    }

    /// Pretty JSON; floats use the shortest representation that round-trips.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

/// `z,phi` rows of the closed-form lifted angle for one configuration.
pub fn emit_phi_csv(theta: f64, x: f64, y: f64, zs: &[f64]) -> Result<String> {
    let mut out = String::from("z,phi\n");
    for &z in zs {
        let phi = phi_closed_form(theta, x, y, z)?;
        writeln!(out, "{z},{phi}").expect("writing to a String");
    }
    Ok(out)
}

/// `n` evenly spaced heights from `0` to `top` inclusive.
pub fn z_grid(top: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|k| top * k as f64 / (n - 1) as f64).collect(),
    }
}

pub fn polygon_from_json(s: &str) -> std::result::Result<ConvexPolygon, DocumentError> {
    let pts: Vec<[f64; 2]> = serde_json::from_str(s)?;
    Ok(ConvexPolygon::new(
        pts.into_iter().map(Point2::from).collect(),
    )?)
}
