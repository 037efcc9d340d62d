use super::DetectorPhaseMap;
use crate::error::{Error, Result};
use crate::quantum::{pick_branch, subsystem_branches, Sampling, StateVector, Subsystem};

/// Result of sending an electron through the array and detecting it in the
/// far field.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferOutcome {
    /// Detector pixel `s` that fired.
    pub s: usize,
    pub probability: f64,
    /// Array state `∝ Σ c_k A*_{s,k} |k⟩_A`.
    pub array_state: StateVector,
    /// Phases of the detected row of the detector basis; feed these to
    /// [`phase_correct_image`].
    pub detected_phases: DetectorPhaseMap,
}

/// `Σ c_k |k⟩|k⟩_A` (electron ⊗ array, electron index slow).
fn entangled(c: &StateVector) -> StateVector {
    let n = c.dim();
    let mut amps = vec![num_complex::Complex64::new(0.0, 0.0); n * n];
    for (k, &ck) in c.amplitudes().iter().enumerate() {
        amps[k * n + k] = ck;
    }
    StateVector::from_normalized(amps).expect("c is normalized")
}

fn check(c: &StateVector, phases: &DetectorPhaseMap) -> Result<()> {
    if c.dim() != phases.len() {
        return Err(Error::Dimension {
            expected: phases.len(),
            found: c.dim(),
        });
    }
    Ok(())
}

/// Electron state `c` crosses the array (each pixel flips its qubit), then
/// is detected in the basis of `phases`. Deterministic in `seed`.
pub fn forward_transfer(c: &StateVector, phases: &DetectorPhaseMap, seed: u64) -> Result<TransferOutcome> {
    forward_transfer_with(c, phases, Sampling::Seeded(seed))
}

pub fn forward_transfer_with(
    c: &StateVector,
    phases: &DetectorPhaseMap,
    sampling: Sampling,
) -> Result<TransferOutcome> {
    check(c, phases)?;
    let n = c.dim();
    let joint = entangled(c);
    let basis = phases.detector_basis();
    let branches = subsystem_branches(&joint, (n, n), Subsystem::First, &basis)?;
    let m = pick_branch(branches, sampling)?;
    Ok(TransferOutcome {
        s: m.outcome,
        probability: m.probability,
        array_state: m.remainder,
        detected_phases: phases.row_phases(m.outcome)?,
    })
}

/// Every detector outcome with nonzero probability, in pixel order.
pub fn forward_transfer_all(c: &StateVector, phases: &DetectorPhaseMap) -> Result<Vec<TransferOutcome>> {
    check(c, phases)?;
    let n = c.dim();
    let joint = entangled(c);
    let basis = phases.detector_basis();
    let branches = subsystem_branches(&joint, (n, n), Subsystem::First, &basis)?;
    branches
        .into_iter()
        .enumerate()
        .filter_map(|(s, b)| {
            let p: f64 = b.iter().map(|z| z.norm_sqr()).sum();
            (p > 0.0).then_some((s, p, b))
        })
        .map(|(s, p, b)| {
            Ok(TransferOutcome {
                s,
                probability: p,
                array_state: StateVector::new(b)?,
                detected_phases: phases.row_phases(s)?,
            })
        })
        .collect()
}

/// Pixelwise phase `e^{+iθ_k}` on the array qubits, undoing the detected
/// row's phases.
pub fn phase_correct_image(state: &StateVector, phases: &DetectorPhaseMap) -> Result<StateVector> {
    if state.dim() != phases.len() {
        return Err(Error::Dimension {
            expected: phases.len(),
            found: state.dim(),
        });
    }
    Ok(state.with_phases(|k| phases.theta()[k]))
}
