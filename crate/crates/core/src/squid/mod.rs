//! Device physics of the hollow-ring rf-SQUID.
//!
//! All quantities are strict SI. The flux coordinate `phi` is the loop flux
//! measured from the bias point, so at the default half-quantum bias the
//! potential is
//!
//! ```text
//! U(φ) = φ²/2L − E_J cos(2πφ/φ₀ + π)
//! ```
//!
//! with its two degenerate minima near ±φ₀/2 encoding |0⟩_q and |1⟩_q.

mod backaction;
mod budget;
mod geometry;
mod leakage;
mod minima;

pub use backaction::{
    backaction, dissipation, transit_time, tunnel_emf_estimate, BackactionModel,
    DissipationEstimate, ETA_THRESHOLD, SOURCE_FLUX_IN_QUANTA,
};
pub use budget::{combine_independent, detection_error_budget, ErrorBudget};
pub use geometry::{geometric_delta, BoreGeometry, VpcModel};
pub use leakage::{
    effective_inductance, effective_inductance_beta_form, ground_state_wavefunction,
    leakage_overlap, leakage_probability, LeakageEstimate,
};
pub use minima::{find_minima_numeric, solve_epsilon, MinimaSolution};

use std::f64::consts::PI;

use serde::Serialize;

use crate::constants::{ELEMENTARY_CHARGE, FLUX_QUANTUM};
use crate::error::{Error, Result};

/// rf-SQUID circuit parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SquidParams {
    inductance: f64,
    critical_current: f64,
    capacitance: f64,
    flux_bias: f64,
}

impl SquidParams {
    /// Loop inductance `L` (H), junction critical current `i₀` (A) and
    /// junction capacitance `C` (F), biased at φ₀/2.
    pub fn new(inductance: f64, critical_current: f64, capacitance: f64) -> Result<Self> {
        for (name, v) in [
            ("inductance", inductance),
            ("critical current", critical_current),
            ("capacitance", capacitance),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(SquidParams {
            inductance,
            critical_current,
            capacitance,
            flux_bias: 0.5 * FLUX_QUANTUM,
        })
    }

    /// Parameters from the screening parameter `β`, the ratio `E_C/E_J` and
    /// a chosen loop inductance.
    pub fn from_dimensionless(beta: f64, ec_over_ej: f64, inductance: f64) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidArgument(format!("beta must be positive, got {beta}")));
        }
        if !(ec_over_ej.is_finite() && ec_over_ej > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "E_C/E_J must be positive, got {ec_over_ej}"
            )));
        }
        let i0 = beta * FLUX_QUANTUM / (2.0 * PI * inductance);
        let ej = i0 * FLUX_QUANTUM / (2.0 * PI);
        let ec = ec_over_ej * ej;
        let c = ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / (2.0 * ec);
        Self::new(inductance, i0, c)
    }

    pub fn with_flux_bias(mut self, flux_bias: f64) -> Result<Self> {
        if !flux_bias.is_finite() {
            return Err(Error::InvalidArgument("flux bias must be finite".into()));
        }
        self.flux_bias = flux_bias;
        Ok(self)
    }

    pub fn inductance(&self) -> f64 {
        self.inductance
    }

    pub fn critical_current(&self) -> f64 {
        self.critical_current
    }

    pub fn capacitance(&self) -> f64 {
        self.capacitance
    }

    pub fn flux_bias(&self) -> f64 {
        self.flux_bias
    }

    /// `β = 2π L i₀ / φ₀`.
    pub fn beta(&self) -> f64 {
        2.0 * PI * self.inductance * self.critical_current / FLUX_QUANTUM
    }

    /// `L i₀ / φ₀ = β/2π`.
    pub fn li0_over_phi0(&self) -> f64 {
        self.inductance * self.critical_current / FLUX_QUANTUM
    }

    /// `E_J = i₀ φ₀ / 2π`.
    pub fn josephson_energy(&self) -> f64 {
        self.critical_current * FLUX_QUANTUM / (2.0 * PI)
    }

    /// `E_C = e² / 2C`.
    pub fn charging_energy(&self) -> f64 {
        ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / (2.0 * self.capacitance)
    }

    /// `L_J = φ₀ / (2π i₀) = L/β`.
    pub fn josephson_inductance(&self) -> f64 {
        FLUX_QUANTUM / (2.0 * PI * self.critical_current)
    }

    pub(crate) fn is_half_biased(&self) -> bool {
        self.flux_bias == 0.5 * FLUX_QUANTUM
    }

    pub(crate) fn require_double_well(&self) -> Result<()> {
        let beta = self.beta();
        if beta <= 1.0 {
            return Err(Error::Monostable { beta });
        }
        Ok(())
    }

    /// `(cos b, sin b)` for the bias phase `b = 2π·flux_bias/φ₀`, exact at
    /// quarter-quantum multiples so the half-bias potential stays even.
    fn bias_cos_sin(&self) -> (f64, f64) {
        let frac = self.flux_bias / FLUX_QUANTUM;
        let quarters = frac * 4.0;
        if quarters == quarters.round() && quarters.abs() < 1e15 {
            match (quarters as i64).rem_euclid(4) {
                0 => (1.0, 0.0),
                1 => (0.0, 1.0),
                2 => (-1.0, 0.0),
                _ => (0.0, -1.0),
            }
        } else {
            let (s, c) = (2.0 * PI * frac).sin_cos();
            (c, s)
        }
    }
}

/// `U(φ) = φ²/2L − E_J cos(2πφ/φ₀ + 2π·bias/φ₀)` in joules.
pub fn potential(phi: f64, p: &SquidParams) -> f64 {
    let x = 2.0 * PI * phi / FLUX_QUANTUM;
    let (cb, sb) = p.bias_cos_sin();
    let cos_shifted = if sb == 0.0 {
        cb * x.cos()
    } else {
        x.cos() * cb - x.sin() * sb
    };
    phi * phi / (2.0 * p.inductance) - p.josephson_energy() * cos_shifted
}

/// `U(a) − U(b)` written without catastrophic cancellation.
pub fn potential_difference(a: f64, b: f64, p: &SquidParams) -> f64 {
    let k = 2.0 * PI / FLUX_QUANTUM;
    let (cb, sb) = p.bias_cos_sin();
    let half_sum = 0.5 * k * (a + b);
    // from a − b directly, so both terms see the same (exact) difference
    let half_diff = 0.5 * k * (a - b);
    // cos(A) − cos(B) = −2 sin((A+B)/2) sin((A−B)/2), with A, B shifted by the bias
    let sin_shifted = half_sum.sin() * cb + half_sum.cos() * sb;
    let cos_diff = -2.0 * sin_shifted * half_diff.sin();
    (a - b) * (a + b) / (2.0 * p.inductance) - p.josephson_energy() * cos_diff
}

/// Current-biased potential `U'(φ) = φ²/2L − i_b φ + E_J cos(2πφ/φ₀)`, with
/// the additive constant set to zero.
///
/// Because `cos(x + π) = −cos x`, at `i_b = 0` and half bias this equals
/// [`potential`]; the bias current only adds the odd term `−i_b φ`.
pub fn biased_potential(phi: f64, bias_current: f64, p: &SquidParams) -> f64 {
    let x = 2.0 * PI * phi / FLUX_QUANTUM;
    phi * phi / (2.0 * p.inductance) - bias_current * phi + p.josephson_energy() * x.cos()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn device() -> SquidParams {
        SquidParams::from_dimensionless(2.0 * PI * 2.4, 1e-3, 1e-9).unwrap()
    }

    #[test]
    fn derived_quantities() {
        let p = SquidParams::new(200e-12, 20e-6, 100e-15).unwrap();
        let beta = 2.0 * PI * 200e-12 * 20e-6 / FLUX_QUANTUM;
        assert!((p.beta() - beta).abs() / beta < 1e-15);
        assert!((p.josephson_inductance() - p.inductance() / p.beta()).abs() / p.josephson_inductance() < 1e-14);
        assert!((p.josephson_energy() - 20e-6 * FLUX_QUANTUM / (2.0 * PI)).abs() < 1e-35);
        let ec = ELEMENTARY_CHARGE.powi(2) / 200e-15;
        assert!((p.charging_energy() - ec).abs() / ec < 1e-15);
    }

    #[test]
    fn dimensionless_round_trip() {
        let p = device();
        assert!((p.beta() - 2.0 * PI * 2.4).abs() < 1e-12);
        let ratio = p.charging_energy() / p.josephson_energy();
        assert!((ratio - 1e-3).abs() < 1e-15);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(SquidParams::new(0.0, 1e-6, 1e-15).is_err());
        assert!(SquidParams::new(1e-9, -1e-6, 1e-15).is_err());
        assert!(SquidParams::new(1e-9, 1e-6, f64::NAN).is_err());
    }

    #[test]
    fn potential_examples() {
        let p = device();
        let ej = p.josephson_energy();
        assert_eq!(potential(0.0, &p), ej);
        let half = 0.5 * FLUX_QUANTUM;
        let expect = FLUX_QUANTUM * FLUX_QUANTUM / (8.0 * p.inductance()) - ej;
        assert!((potential(half, &p) - expect).abs() <= 1e-14 * expect.abs());
        let x = 0.3 * FLUX_QUANTUM;
        assert_eq!(potential(x, &p), potential(-x, &p));
    }

    #[test]
    fn potential_is_even() {
        let p = device();
        for i in 0..1000 {
            let phi = (i as f64 * 0.00731 - 3.0) * FLUX_QUANTUM;
            assert_eq!(potential(phi, &p), potential(-phi, &p));
        }
    }

    #[test]
    fn difference_matches_direct() {
        let p = device();
        for (a, b) in [(0.1, 0.4), (-0.7, 0.2), (0.45, 0.46)] {
            let (a, b) = (a * FLUX_QUANTUM, b * FLUX_QUANTUM);
            let direct = potential(a, &p) - potential(b, &p);
            let stable = potential_difference(a, b, &p);
            assert!((direct - stable).abs() <= 1e-12 * p.josephson_energy());
        }
        let q = p.with_flux_bias(0.3 * FLUX_QUANTUM).unwrap();
        let (a, b) = (0.12 * FLUX_QUANTUM, -0.2 * FLUX_QUANTUM);
        let direct = potential(a, &q) - potential(b, &q);
        assert!((direct - potential_difference(a, b, &q)).abs() <= 1e-12 * q.josephson_energy());
    }

    #[test]
    fn biased_potential_convention() {
        let p = device();
        // i_b = 0: E_J cos(0) = +E_J, equal to U(0) = −E_J cos(π)
        assert_eq!(biased_potential(0.0, 0.0, &p), p.josephson_energy());
        for f in [0.1, 0.37, -0.5] {
            let phi = f * FLUX_QUANTUM;
            let u = potential(phi, &p);
            assert!((biased_potential(phi, 0.0, &p) - u).abs() <= 1e-14 * u.abs().max(p.josephson_energy()));
        }
    }

    #[test]
    fn biased_minima_asymmetry() {
        let p = device();
        let sol = solve_epsilon(p.beta()).unwrap();
        let ib = ELEMENTARY_CHARGE / 1e-9;
        let h = 0.5 * sol.delta_phi;
        let split = biased_potential(h, ib, &p) - biased_potential(-h, ib, &p);
        let expect = -ib * sol.delta_phi;
        assert!((split - expect).abs() <= 1e-10 * expect.abs());
    }

    #[test]
    fn ideal_split_is_h_over_2t() {
        let p = device();
        let t = 1e-9;
        let ib = ELEMENTARY_CHARGE / t;
        let h = 0.5 * FLUX_QUANTUM;
        let split = biased_potential(-h, ib, &p) - biased_potential(h, ib, &p);
        let expect = crate::constants::PLANCK / (2.0 * t);
        assert!((split - expect).abs() <= 1e-6 * expect);
        assert!((expect - 3.313e-25).abs() < 1e-28);
    }
}
