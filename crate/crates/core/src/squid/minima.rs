use std::f64::consts::PI;

use serde::Serialize;

use super::{potential_difference, SquidParams};
use crate::constants::FLUX_QUANTUM;
use crate::error::{Error, Result};
use crate::numeric::{bisect, golden_section_min};

/// Position of the double-well minima, expressed as the phase deficit `ε`
/// with `π Δφ/φ₀ = π − ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinimaSolution {
    pub epsilon: f64,
    /// Separation of the two minima, `φ₀ (1 − ε/π)` (Wb).
    pub delta_phi: f64,
    /// `|π − ε − β sin ε|` at the returned `ε`.
    pub residual: f64,
}

impl MinimaSolution {
    fn from_epsilon(beta: f64, epsilon: f64) -> Self {
        MinimaSolution {
            epsilon,
            delta_phi: FLUX_QUANTUM * (1.0 - epsilon / PI),
            residual: (PI - epsilon - beta * epsilon.sin()).abs(),
        }
    }

    /// Flux of the right-hand minimum, `Δφ/2`.
    pub fn minimum_flux(&self) -> f64 {
        0.5 * self.delta_phi
    }

    /// Detection error contributed by the minima shift, `ε²/4`.
    pub fn detection_error(&self) -> f64 {
        0.25 * self.epsilon * self.epsilon
    }
}

/// Root of `π − ε = β sin ε` in `(0, π)`, excluding the trivial root at π.
///
/// `f(ε) = β sin ε − π + ε` is negative at 0⁺ and positive just below π
/// whenever β > 1, and concave on `(0, π)`, so the bracket holds exactly one
/// root.
pub fn solve_epsilon(beta: f64) -> Result<MinimaSolution> {
    if beta.is_nan() || beta <= 1.0 {
        return Err(Error::Monostable { beta });
    }
    if !beta.is_finite() {
        return Err(Error::InvalidArgument("beta must be finite".into()));
    }
    let eps = if beta < 1.5 {
        // near the merge point ε → π; solve for x = π − ε, where sin x is
        // accurate, from β sin x = x
        let g = |x: f64| beta * x.sin() - x;
        PI - bisect(g, 1e-300, PI - 1e-12, 1e-15)?
    } else {
        let f = |eps: f64| beta * eps.sin() - (PI - eps);
        bisect(f, 1e-12, PI - 1e-9, 1e-12)?
    };
    Ok(MinimaSolution::from_epsilon(beta, eps))
}

/// Locate the right-hand minimum of the potential by golden-section search
/// on `(0, φ₀/2]` and convert its position to `ε`.
///
/// Independent of [`solve_epsilon`]: it never uses the stationarity
/// condition, only comparisons of `U` itself.
pub fn find_minima_numeric(p: &SquidParams) -> Result<MinimaSolution> {
    p.require_double_well()?;
    if !p.is_half_biased() {
        return Err(Error::InvalidArgument(
            "minima search assumes the half flux quantum bias".into(),
        ));
    }
    let phi_min = golden_section_min(
        |a, b| potential_difference(a, b, p),
        0.0,
        0.5 * FLUX_QUANTUM,
    );
    let epsilon = PI * (1.0 - 2.0 * phi_min / FLUX_QUANTUM);
    Ok(MinimaSolution::from_epsilon(p.beta(), epsilon))
}
