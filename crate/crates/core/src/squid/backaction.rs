use std::f64::consts::PI;

use serde::Serialize;

use crate::constants::{ELEMENTARY_CHARGE, FLUX_QUANTUM, HBAR, PLANCK, VON_KLITZING};
use crate::error::{Error, Result};

/// Flux trapped in the fictitious source inductor, in units of φ₀.
pub const SOURCE_FLUX_IN_QUANTA: f64 = 1e6;

/// Dissipation ratio below which quasiparticle excitation is taken to be
/// unlikely.
pub const ETA_THRESHOLD: f64 = 1e-3;

/// The passing charge modelled as a bias current `e/T` through the junction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BackactionModel {
    /// `i_b = e/T` (A).
    pub bias_current: f64,
    /// Transit duration `T` (s).
    pub duration: f64,
    /// Shift of each minimum, `i_b φ₀/2 = h/4T` (J).
    pub delta_e: f64,
    /// Relative phase `2ΔE·T/ħ` picked up between |0⟩_q and |1⟩_q.
    pub phase: f64,
    /// Inductance of the source inductor (H). The inductor is a modelling
    /// device only; this value and `source_flux` affect nothing.
    pub source_inductance: f64,
    /// Flux trapped in the source inductor (Wb).
    pub source_flux: f64,
}

pub fn backaction(duration: f64) -> Result<BackactionModel> {
    if !(duration.is_finite() && duration > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "transit duration must be positive, got {duration}"
        )));
    }
    let bias_current = ELEMENTARY_CHARGE / duration;
    let delta_e = 0.5 * bias_current * FLUX_QUANTUM;
    let source_flux = SOURCE_FLUX_IN_QUANTA * FLUX_QUANTUM;
    Ok(BackactionModel {
        bias_current,
        duration,
        delta_e,
        phase: 2.0 * delta_e * duration / HBAR,
        source_inductance: source_flux / bias_current,
        source_flux,
    })
}

/// Order-of-magnitude dissipation of a transit treated as a normal-metal
/// current pulse `e/τ` through resistance `R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DissipationEstimate {
    pub resistance: f64,
    pub tau: f64,
    /// `η = R/R_Q`.
    pub eta: f64,
    /// Dissipated energy `R e²/τ = η h/τ` (J).
    pub delta_e: f64,
    /// Action change `R e² = η h` (J·s).
    pub delta_a: f64,
    /// Superconducting gap compared against (J).
    pub gap: f64,
    /// `h/τ` (J): the energy scale of the transit. Order of magnitude only.
    pub energy_scale: f64,
    /// `ΔE < gap`.
    pub quasiparticle_safe: bool,
    /// `η < ETA_THRESHOLD`.
    pub eta_below_threshold: bool,
}

pub fn dissipation(resistance: f64, tau: f64, gap: f64) -> Result<DissipationEstimate> {
    if !(resistance.is_finite() && resistance >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "resistance must be non-negative, got {resistance}"
        )));
    }
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::InvalidArgument(format!("tau must be positive, got {tau}")));
    }
    if !(gap.is_finite() && gap > 0.0) {
        return Err(Error::InvalidArgument(format!("gap must be positive, got {gap}")));
    }
    let eta = resistance / VON_KLITZING;
    let delta_a = eta * PLANCK;
    let delta_e = delta_a / tau;
    Ok(DissipationEstimate {
        resistance,
        tau,
        eta,
        delta_e,
        delta_a,
        gap,
        energy_scale: PLANCK / tau,
        quasiparticle_safe: delta_e < gap,
        eta_below_threshold: eta < ETA_THRESHOLD,
    })
}

/// Time for a particle at `speed` to cross a device of size `length`.
pub fn transit_time(length: f64, speed: f64) -> f64 {
    length / speed
}

/// Junction electromotive force `2φ₀ω/2π` and the matching work `ħω` for a
/// user-supplied tunnel splitting `ω` (rad/s). Both are estimates to within
/// a numerical factor.
pub fn tunnel_emf_estimate(omega: f64) -> (f64, f64) {
    (2.0 * FLUX_QUANTUM * omega / (2.0 * PI), HBAR * omega)
}
