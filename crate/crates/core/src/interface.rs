//! Single particle, single qubit interaction.
//!
//! The joint space is `{|s⟩, |a⟩} ⊗ {|0⟩_q, |1⟩_q}`, ordered
//! `|s0⟩, |s1⟩, |a0⟩, |a1⟩`, where `|s⟩` is the part of the particle wave
//! passing outside the ring and `|a⟩` the part passing through the bore.
//! The computational particle basis is `|0⟩ = (|s⟩+|a⟩)/√2`,
//! `|1⟩ = (|s⟩−|a⟩)/√2`.
//!
//! A negative particle crossing the bore with the qubit in `|0⟩_q` picks up
//! `e^{−iΔθ/2}`, with `|1⟩_q` it picks up `e^{+iΔθ/2}`; a positive particle
//! sees the opposite signs. `Δθ = π − δ − ε` folds in the stray-field and
//! minima-shift deficits to first order. Leakage out of the qubit subspace
//! is not represented here.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::quantum::{
    apply_unitary, born_probabilities, choose_outcome, dft_matrix, measure_with, MeasurementRecord,
    Sampling, StateVector, UnitaryMatrix,
};
use crate::rng::trial_seed;

/// Sign of the particle's charge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum ChargeSign {
    #[default]
    Negative,
    Positive,
}

impl ChargeSign {
    fn sign(self) -> f64 {
        match self {
            ChargeSign::Negative => -1.0,
            ChargeSign::Positive => 1.0,
        }
    }
}

/// Phase deficits of a real device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InteractionParams {
    delta: f64,
    epsilon: f64,
    charge: ChargeSign,
}

impl InteractionParams {
    pub fn new(delta: f64, epsilon: f64) -> Result<Self> {
        for (name, v) in [("delta", delta), ("epsilon", epsilon)] {
            if !(0.0..PI / 2.0).contains(&v) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must lie in [0, π/2), got {v}"
                )));
            }
        }
        Ok(InteractionParams {
            delta,
            epsilon,
            charge: ChargeSign::Negative,
        })
    }

    /// Perfect device: Δθ = π.
    pub fn ideal() -> Self {
        InteractionParams {
            delta: 0.0,
            epsilon: 0.0,
            charge: ChargeSign::Negative,
        }
    }

    pub fn with_charge(mut self, charge: ChargeSign) -> Self {
        self.charge = charge;
        self
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn charge(&self) -> ChargeSign {
        self.charge
    }

    /// `Δθ = π − δ − ε`.
    pub fn phase_difference(&self) -> f64 {
        PI - self.delta - self.epsilon
    }

    /// Probability that a passing particle flips the qubit,
    /// `sin²(Δθ/2) = cos²((δ+ε)/2)`.
    pub fn click_probability(&self) -> f64 {
        (0.5 * (self.delta + self.epsilon)).cos().powi(2)
    }

    /// `sin²((δ+ε)/2)`.
    pub fn misdetection_probability(&self) -> f64 {
        (0.5 * (self.delta + self.epsilon)).sin().powi(2)
    }
}

/// Particle ⊗ qubit state in the `{s, a} ⊗ {0_q, 1_q}` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState(StateVector);

impl JointState {
    pub fn new(state: StateVector) -> Result<Self> {
        if state.dim() != 4 {
            return Err(Error::Dimension {
                expected: 4,
                found: state.dim(),
            });
        }
        Ok(JointState(state))
    }

    /// `particle ⊗ qubit`, both given as 2-vectors (particle in `{s, a}`,
    /// qubit in `{0_q, 1_q}`).
    pub fn product(particle: &StateVector, qubit: &StateVector) -> Result<Self> {
        for s in [particle, qubit] {
            if s.dim() != 2 {
                return Err(Error::Dimension {
                    expected: 2,
                    found: s.dim(),
                });
            }
        }
        Ok(JointState(crate::quantum::tensor(particle, qubit)))
    }

    pub fn state(&self) -> &StateVector {
        &self.0
    }

    pub fn into_state(self) -> StateVector {
        self.0
    }

    /// Schmidt weights `λ₁ ≥ λ₂` of the particle/qubit split.
    pub fn schmidt_weights(&self) -> (f64, f64) {
        let m = self.0.amplitudes();
        // for a 2×2 coefficient matrix: λ₁ + λ₂ = 1 and λ₁λ₂ = |det|²
        let det = (m[0] * m[3] - m[1] * m[2]).norm_sqr();
        let disc = (1.0 - 4.0 * det).max(0.0).sqrt();
        (0.5 * (1.0 + disc), 0.5 * (1.0 - disc))
    }

    /// Effective Schmidt number `1 / Σ λᵢ²`; equals 1 for a product state.
    pub fn schmidt_number(&self) -> f64 {
        let (a, b) = self.schmidt_weights();
        1.0 / (a * a + b * b)
    }
}

/// Particle `|s⟩`, `|a⟩` as 2-vectors in the path basis.
pub fn particle_s() -> StateVector {
    StateVector::basis(2, 0).expect("valid basis index")
}

pub fn particle_a() -> StateVector {
    StateVector::basis(2, 1).expect("valid basis index")
}

/// Qubit `|s⟩_q = (|0⟩_q + |1⟩_q)/√2`.
pub fn qubit_s() -> StateVector {
    StateVector::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).expect("nonzero")
}

/// Qubit `|a⟩_q = (|0⟩_q − |1⟩_q)/√2`.
pub fn qubit_a() -> StateVector {
    StateVector::from_real(&[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]).expect("nonzero")
}

/// Aharonov–Bohm interaction as a diagonal 4×4 unitary.
pub fn interaction_matrix(ip: &InteractionParams) -> UnitaryMatrix {
    let half = 0.5 * ip.phase_difference() * ip.charge.sign();
    let phases = [0.0, 0.0, half, -half];
    UnitaryMatrix::diagonal_phases(4, |k| phases[k]).expect("dimension 4")
}

/// Multiplies the `|a⟩` branch by `i`.
pub fn pi_half_matrix() -> UnitaryMatrix {
    let phases = [0.0, 0.0, PI / 2.0, PI / 2.0];
    UnitaryMatrix::diagonal_phases(4, |k| phases[k]).expect("dimension 4")
}

pub fn interact(j: &JointState, ip: &InteractionParams) -> Result<JointState> {
    JointState::new(apply_unitary(&interaction_matrix(ip), &j.0)?)
}

pub fn pi_half_shifter(j: &JointState) -> Result<JointState> {
    JointState::new(apply_unitary(&pi_half_matrix(), &j.0)?)
}

/// The π/2 shifter followed by the ring, written in the product basis
/// `{|0⟩, |1⟩} ⊗ {|0⟩_q, |1⟩_q}` (particle index slow). For an ideal device
/// this is a CNOT with the qubit as control and the particle as target.
pub fn composite_cnot(ip: &InteractionParams) -> UnitaryMatrix {
    let h = dft_matrix(2).expect("size 2");
    let change = h.kron(&UnitaryMatrix::identity(2).expect("size 2"));
    let path_basis = interaction_matrix(ip)
        .matmul(&pi_half_matrix())
        .expect("same dimension");
    change
        .matmul(&path_basis)
        .and_then(|m| m.matmul(&change))
        .expect("same dimension")
}

/// Ideal CNOT on `|p, q⟩ → |p ⊕ q, q⟩` (particle index slow).
pub fn cnot_qubit_controls_particle() -> UnitaryMatrix {
    permutation(&[0, 3, 2, 1])
}

/// Ideal CNOT on `|p, q⟩ → |p, q ⊕ p⟩`.
pub fn cnot_particle_controls_qubit() -> UnitaryMatrix {
    permutation(&[0, 1, 3, 2])
}

fn permutation(image: &[usize]) -> UnitaryMatrix {
    let n = image.len();
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for (col, &row) in image.iter().enumerate() {
        entries[row * n + col] = Complex64::new(1.0, 0.0);
    }
    UnitaryMatrix::new(n, entries).expect("permutation matrices are unitary")
}

/// Joint state after a particle in `|a⟩` crosses a qubit prepared in `|s⟩_q`.
pub fn detection_evolution(ip: &InteractionParams) -> JointState {
    let start = JointState::product(&particle_a(), &qubit_s()).expect("2 ⊗ 2");
    interact(&start, ip).expect("dimension 4")
}

/// Rows `|s⟩_q`, `|a⟩_q`: the qubit readout basis. Outcome 1 is a click.
pub fn qubit_readout_basis() -> UnitaryMatrix {
    dft_matrix(2).expect("size 2")
}

/// Qubit state left after the detection sequence.
fn qubit_after(ip: &InteractionParams, particle_present: bool) -> StateVector {
    if !particle_present {
        return qubit_s();
    }
    let joint = detection_evolution(ip);
    // particle stays in |a⟩, so the qubit state is the a-branch
    let amps = joint.state().amplitudes()[2..4].to_vec();
    StateVector::from_normalized(amps).expect("a-branch carries the full norm")
}

/// One run of the non-destructive detector: prepare `|s⟩_q`, let the
/// particle (if any) pass through the bore, read the qubit in
/// `{|s⟩_q, |a⟩_q}`. Outcome 1 (`|a⟩_q`) is a click.
pub fn detect_particle(
    ip: &InteractionParams,
    particle_present: bool,
    seed: u64,
) -> Result<MeasurementRecord> {
    detect_particle_with(ip, particle_present, Sampling::Seeded(seed))
}

pub fn detect_particle_with(
    ip: &InteractionParams,
    particle_present: bool,
    sampling: Sampling,
) -> Result<MeasurementRecord> {
    measure_with(&qubit_after(ip, particle_present), &qubit_readout_basis(), sampling)
}

/// Monte Carlo click statistics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectionStats {
    pub trials: u64,
    pub clicks: u64,
    /// Born probability of a click from the evolved state.
    pub p_click: f64,
    /// Observed misdetection rate (present) or false-click rate (absent).
    pub error_rate: f64,
    /// Expected error rate.
    pub expected_error: f64,
    /// `(observed − expected)/σ` of the error count; 0 when σ = 0 and the
    /// counts match exactly.
    pub z_score: f64,
}

/// `trials` independent detections; trial `i` uses `trial_seed(seed, i)`.
pub fn run_detection(
    ip: &InteractionParams,
    particle_present: bool,
    trials: u64,
    seed: u64,
    exec: Execution,
) -> Result<DetectionStats> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trial count must be positive".into()));
    }
    let qubit = qubit_after(ip, particle_present);
    let probs = born_probabilities(&qubit, &qubit_readout_basis())?;
    let clicks = exec.count(trials, |i| {
        choose_outcome(&probs, Sampling::Seeded(trial_seed(seed, i))).is_ok_and(|o| o == 1)
    });
    let p_click = probs[1];
    let (errors, expected_error) = if particle_present {
        (trials - clicks, 1.0 - p_click)
    } else {
        (clicks, p_click)
    };
    let n = trials as f64;
    let sigma = (n * expected_error * (1.0 - expected_error)).sqrt();
    let diff = errors as f64 - n * expected_error;
    let z_score = if sigma > 0.0 {
        diff / sigma
    } else if diff.abs() < 0.5 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(DetectionStats {
        trials,
        clicks,
        p_click,
        error_rate: errors as f64 / n,
        expected_error,
        z_score,
    })
}
