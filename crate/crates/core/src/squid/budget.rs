use serde::Serialize;

use super::{geometric_delta, leakage_probability, solve_epsilon, BoreGeometry, SquidParams};
use crate::error::Result;

/// Per-mechanism detection error probabilities and their combination.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorBudget {
    /// Stray vector potential outside the bore, `δ²/4`.
    pub p_delta: f64,
    /// Minima shift, `ε²/4` (capped at 1).
    pub p_epsilon: f64,
    /// Leakage out of the qubit subspace.
    pub p_leak: f64,
    /// `1 − Π(1 − pᵢ)`.
    pub p_total: f64,
}

impl ErrorBudget {
    pub fn from_terms(p_delta: f64, p_epsilon: f64, p_leak: f64) -> Self {
        ErrorBudget {
            p_delta,
            p_epsilon,
            p_leak,
            p_total: combine_independent(&[p_delta, p_epsilon, p_leak]),
        }
    }
}

/// Probability that at least one of several independent mechanisms fails.
pub fn combine_independent(probabilities: &[f64]) -> f64 {
    1.0 - probabilities.iter().map(|p| 1.0 - p).product::<f64>()
}

/// Assemble the detection error budget of a device.
///
/// The leakage term is the exact harmonic-model value `p_exact`, which stays
/// a probability for any `E_C/E_J`.
pub fn detection_error_budget(p: &SquidParams, g: &BoreGeometry) -> Result<ErrorBudget> {
    let minima = solve_epsilon(p.beta())?;
    let leak = leakage_probability(p)?;
    let (delta, _) = geometric_delta(g);
    Ok(ErrorBudget::from_terms(
        0.25 * delta * delta,
        minima.detection_error().min(1.0),
        leak.p_exact,
    ))
}
