//! Batched protocol runs, one record per detected outcome.

use serde::Serialize;

use super::{
    forward_transfer_all, forward_transfer_with, phase_correct_image, teleport_all_outcomes,
    teleport_reverse_with, DetectorPhaseMap, Layout,
};
use crate::error::Result;
use crate::exec::Execution;
use crate::quantum::{fidelity, Sampling, StateVector};
use crate::rng::trial_seed;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransferTrial {
    pub trial: usize,
    pub s: usize,
    pub probability: f64,
    /// Fidelity of the uncorrected array state with the input.
    pub raw_fidelity: f64,
    pub corrected_fidelity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TeleportTrial {
    pub trial: usize,
    pub n: usize,
    pub m: usize,
    pub probability: f64,
    pub raw_fidelity: f64,
    pub corrected_fidelity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProtocolSummary {
    pub records: usize,
    pub min_fidelity: f64,
    pub mean_fidelity: f64,
}

impl ProtocolSummary {
    pub fn from_fidelities(f: impl IntoIterator<Item = f64>) -> Self {
        let (mut count, mut min, mut sum) = (0usize, f64::INFINITY, 0.0);
        for x in f {
            count += 1;
            min = min.min(x);
            sum += x;
        }
        if count == 0 {
            return ProtocolSummary {
                records: 0,
                min_fidelity: f64::NAN,
                mean_fidelity: f64::NAN,
            };
        }
        ProtocolSummary {
            records: count,
            min_fidelity: min,
            mean_fidelity: sum / count as f64,
        }
    }

    pub fn of_transfer(trials: &[TransferTrial]) -> Self {
        Self::from_fidelities(trials.iter().map(|t| t.corrected_fidelity))
    }

    pub fn of_teleport(trials: &[TeleportTrial]) -> Self {
        Self::from_fidelities(trials.iter().map(|t| t.corrected_fidelity))
    }
}

// Per-trial streams: input state, phase map, outcome.
fn streams(seed: u64, trial: usize) -> (u64, u64, u64) {
    let t = trial_seed(seed, trial as u64);
    (trial_seed(t, 0), trial_seed(t, 1), trial_seed(t, 2))
}

/// Forward transfer with a fresh random input state per trial. With
/// `random_phases` each trial also draws its own detector phases (otherwise
/// the pure far-field map). `exhaustive` records every detector outcome
/// instead of sampling one.
pub fn run_transfer_trials(
    layout: Layout,
    trials: usize,
    random_phases: bool,
    exhaustive: bool,
    seed: u64,
    exec: Execution,
) -> Result<Vec<TransferTrial>> {
    let per_trial = exec.map_indexed(trials, |i| -> Result<Vec<TransferTrial>> {
        let (s_state, s_phase, s_outcome) = streams(seed, i);
        let c = StateVector::random(layout.len(), s_state)?;
        let map = if random_phases {
            DetectorPhaseMap::random(layout, s_phase)
        } else {
            DetectorPhaseMap::far_field(layout)
        };
        let outcomes = if exhaustive {
            forward_transfer_all(&c, &map)?
        } else {
            vec![forward_transfer_with(&c, &map, Sampling::Seeded(s_outcome))?]
        };
        outcomes
            .into_iter()
            .map(|o| {
                let fixed = phase_correct_image(&o.array_state, &o.detected_phases)?;
                Ok(TransferTrial {
                    trial: i,
                    s: o.s,
                    probability: o.probability,
                    raw_fidelity: fidelity(&o.array_state, &c)?,
                    corrected_fidelity: fidelity(&fixed, &c)?,
                })
            })
            .collect()
    });
    flatten(per_trial)
}

/// Reverse teleportation of a fresh random register state per trial.
pub fn run_teleport_trials(
    layout: Layout,
    trials: usize,
    exhaustive: bool,
    seed: u64,
    exec: Execution,
) -> Result<Vec<TeleportTrial>> {
    let lattice = match layout {
        Layout::Line(_) => None,
        Layout::Lattice(lat) => Some(lat),
    };
    let per_trial = exec.map_indexed(trials, |i| -> Result<Vec<TeleportTrial>> {
        let (s_state, _, s_outcome) = streams(seed, i);
        let d = StateVector::random(layout.len(), s_state)?;
        let outcomes = if exhaustive {
            teleport_all_outcomes(&d, lattice, Execution::Sequential)?
        } else {
            vec![teleport_reverse_with(&d, Sampling::Seeded(s_outcome), lattice)?]
        };
        outcomes
            .into_iter()
            .map(|o| {
                Ok(TeleportTrial {
                    trial: i,
                    n: o.outcome.n,
                    m: o.outcome.m,
                    probability: o.probability,
                    raw_fidelity: fidelity(&o.electron_state, &d)?,
                    corrected_fidelity: fidelity(&o.corrected, &d)?,
                })
            })
            .collect()
    });
    flatten(per_trial)
}

fn flatten<T>(chunks: Vec<Result<Vec<T>>>) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}
