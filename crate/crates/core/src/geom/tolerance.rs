/// Relative tolerance applied to the instance diameter.
pub const DEFAULT_RELATIVE_EPS: f64 = 1e-9;

/// Scale-aware tolerance for orientation, containment and overlap decisions.
///
/// `eps` is an absolute length: `relative * diameter`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub eps: f64,
}

impl Tolerance {
    pub fn new(eps: f64) -> Self {
        Self { eps }
    }

    pub fn for_diameter(diameter: f64) -> Self {
        Self::relative(DEFAULT_RELATIVE_EPS, diameter)
    }

    pub fn relative(relative: f64, diameter: f64) -> Self {
        Self {
            eps: relative * diameter,
        }
    }

    /// Area below which an intersection counts as boundary contact: a sliver
    /// of width `eps` along a feature of length `scale`.
    pub fn area(&self, scale: f64) -> f64 {
        self.eps * scale
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::for_diameter(1.0)
    }
}
