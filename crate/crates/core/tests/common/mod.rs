#![allow(dead_code)]

use std::f64::consts::PI;

use rfsquid::constants::FLUX_QUANTUM;
use rfsquid::squid::ground_state_wavefunction;

/// Trapezoid rule for `∫ |ψ|² cos(π(φ − φ₀/2)/φ₀) dφ` over ±14 widths of
/// the Gaussian. The integrand is smooth and decays fast, so the rule is
/// accurate to rounding at this resolution.
pub fn overlap_quadrature(phi1: f64) -> f64 {
    let centre = 0.5 * FLUX_QUANTUM;
    let half = 14.0 * phi1;
    let n = 4000;
    let h = 2.0 * half / n as f64;
    let mut sum = 0.0;
    for i in 0..=n {
        let phi = centre - half + i as f64 * h;
        let psi = ground_state_wavefunction(phi, phi1);
        let w = if i == 0 || i == n { 0.5 } else { 1.0 };
        sum += w * psi * psi * (PI * (phi - centre) / FLUX_QUANTUM).cos();
    }
    sum * h
}

/// Smallest `Li₀/φ₀` on a 0.01 grid from 0.17 up with `ε²/4 ≤ 0.01`.
pub fn threshold_scan() -> f64 {
    (17..1000)
        .map(|i| i as f64 * 0.01)
        .find(|&x| {
            let beta = 2.0 * PI * x;
            rfsquid::squid::solve_epsilon(beta)
                .map(|s| s.detection_error() <= 0.01)
                .unwrap_or(false)
        })
        .expect("threshold below 10")
}

pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}
