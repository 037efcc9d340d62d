use std::f64::consts::PI;

use serde::Serialize;

use super::SquidParams;
use crate::constants::{FLUX_QUANTUM, HBAR};
use crate::error::{Error, Result};

/// Leakage of the qubit out of its two-state subspace after one passage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LeakageEstimate {
    /// Harmonic effective inductance used for the ground state (H).
    pub effective_inductance: f64,
    /// Ground-state width `φ₁` with `φ₁² = ħ √(L_e/C)` (Wb).
    pub phi1: f64,
    /// `1 − exp(−(π²/2)(φ₁/φ₀)²)`: exact within the harmonic model.
    pub p_exact: f64,
    /// `(π²/2)(φ₁/φ₀)²`: leading order of `p_exact`.
    pub p_approx: f64,
    /// `√(β/(β+1)) √(E_C/8E_J)`: `p_approx` rewritten in circuit energies.
    pub p_closed: f64,
}

/// Effective inductance `(d²U/dφ²)⁻¹` at a minimum with phase deficit `eps`:
/// `L_e ≈ L L_J / (L(1 − ε²/2) + L_J)`.
pub fn effective_inductance(p: &SquidParams, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    let (l, lj) = (p.inductance(), p.josephson_inductance());
    let denom = l * (1.0 - 0.5 * eps * eps) + lj;
    if denom <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "eps = {eps} is outside the harmonic approximation (non-positive curvature)"
        )));
    }
    Ok(l * lj / denom)
}

/// Same quantity in terms of `β` and `L_J`: `β / (β(1 − ε²/2) + 1) · L_J`.
pub fn effective_inductance_beta_form(beta: f64, josephson_inductance: f64, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    let denom = beta * (1.0 - 0.5 * eps * eps) + 1.0;
    if denom <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "eps = {eps} is outside the harmonic approximation (non-positive curvature)"
        )));
    }
    Ok(beta / denom * josephson_inductance)
}

fn check_eps(eps: f64) -> Result<()> {
    if !(0.0..PI).contains(&eps) {
        return Err(Error::InvalidArgument(format!("eps must lie in [0, π), got {eps}")));
    }
    Ok(())
}

/// Harmonic ground state centred on the right-hand well,
/// `ψ(φ) = (π φ₁²)^{-1/4} exp(−(φ − φ₀/2)² / 2φ₁²)`.
pub fn ground_state_wavefunction(phi: f64, phi1: f64) -> f64 {
    let d = phi - 0.5 * FLUX_QUANTUM;
    (PI * phi1 * phi1).powf(-0.25) * (-d * d / (2.0 * phi1 * phi1)).exp()
}

/// `∫ |ψ(φ)|² cos(π(φ − φ₀/2)/φ₀) dφ` in closed form,
/// `exp(−π²φ₁²/4φ₀²)`. Its square is the survival probability.
pub fn leakage_overlap(phi1: f64) -> f64 {
    let r = phi1 / FLUX_QUANTUM;
    (-0.25 * PI * PI * r * r).exp()
}

/// Leakage probability with the ε = 0 effective inductance
/// `L_e = β/(β+1) · L_J`, the form in which all three estimates coincide to
/// leading order.
pub fn leakage_probability(p: &SquidParams) -> Result<LeakageEstimate> {
    p.require_double_well()?;
    let beta = p.beta();
    let le = effective_inductance(p, 0.0)?;
    let phi1_sq = HBAR * (le / p.capacitance()).sqrt();
    let r2 = phi1_sq / (FLUX_QUANTUM * FLUX_QUANTUM);
    let p_approx = 0.5 * PI * PI * r2;
    // 1 − e^{−x} without cancellation for small x
    let p_exact = -(-p_approx).exp_m1();
    let p_closed =
        (beta / (beta + 1.0)).sqrt() * (p.charging_energy() / (8.0 * p.josephson_energy())).sqrt();
    Ok(LeakageEstimate {
        effective_inductance: le,
        phi1: phi1_sq.sqrt(),
        p_exact,
        p_approx,
        p_closed,
    })
}
