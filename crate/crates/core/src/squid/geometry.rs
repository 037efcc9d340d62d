use std::f64::consts::PI;

use serde::Serialize;

use crate::constants::FLUX_QUANTUM;
use crate::error::{Error, Result};

/// Bore of the hollow ring: radius `r` and length `l`, both in metres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoreGeometry {
    radius: f64,
    length: f64,
    // kept as given when constructed from it, so δ = 1/(2·aspect) is exact
    aspect: f64,
}

impl BoreGeometry {
    pub fn new(radius: f64, length: f64) -> Result<Self> {
        if !(radius.is_finite() && length.is_finite() && radius > 0.0 && length > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "bore radius and length must be positive, got r = {radius}, l = {length}"
            )));
        }
        if radius >= length {
            return Err(Error::InvalidArgument(format!(
                "bore radius {radius} must be smaller than its length {length}"
            )));
        }
        if radius > 0.2 * length {
            log::warn!(
                "bore aspect ratio l/r = {:.3} is small; the point-charge estimate of δ is rough",
                length / radius
            );
        }
        Ok(BoreGeometry {
            radius,
            length,
            aspect: length / radius,
        })
    }

    /// Geometry with `l = aspect_ratio · r`.
    pub fn from_aspect_ratio(radius: f64, aspect_ratio: f64) -> Result<Self> {
        let mut g = Self::new(radius, radius * aspect_ratio)?;
        g.aspect = aspect_ratio;
        Ok(g)
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn aspect_ratio(&self) -> f64 {
        self.aspect
    }
}

/// Stray vector potential modelled as a pair of "vector potential charges"
/// at the bore ends. Diagnostic only; the budget uses δ alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VpcModel {
    /// Uniform vector potential inside the bore, fixed by
    /// `A_bore (l + r/2) = φ₀/2` (Wb/m).
    pub a_bore: f64,
    /// Magnitude of each end charge, `π r² A_bore` (Wb·m).
    pub q_a: f64,
    /// Potential difference between the charges, `q_A / 2πr = r A_bore/2` (Wb).
    pub dphi_a: f64,
}

/// Phase deficit `δ = r/2l` from the vector potential outside the bore, and
/// the VPC quantities behind it. The detection error contributed is `δ²/4`.
pub fn geometric_delta(g: &BoreGeometry) -> (f64, VpcModel) {
    let (r, l) = (g.radius, g.length);
    let a_bore = 0.5 * FLUX_QUANTUM / (l + 0.5 * r);
    let q_a = PI * r * r * a_bore;
    let vpc = VpcModel {
        a_bore,
        q_a,
        dphi_a: q_a / (2.0 * PI * r),
    };
    (0.5 / g.aspect, vpc)
}
