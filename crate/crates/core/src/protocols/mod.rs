//! State transfer between a flying electron and an array of N rf-SQUID
//! qubits, in both directions.
//!
//! The array is represented in its single-excitation subspace: `|k⟩_A`
//! means "only qubit k flipped to |a⟩_q", so an N-qubit array is an
//! N-level qudit. Electron pixel states `|k⟩` use the same labels. On a 2D
//! array the labels are raster indices (see [`Lattice2D`]).

mod corrections;
mod lattice;
mod teleport;
mod transfer;
mod trials;

pub use corrections::{
    apply_corrections_1d, apply_corrections_2d, carry_correction_2d, cyclic_shift_matrix,
    diffraction_shift_1d, image_phase_correction_1d, image_phase_correction_2d,
    separable_diffraction_shift_2d,
};
pub use lattice::{raster_index, Lattice2D};
pub use teleport::{
    bell_basis, bell_outcome_probabilities, teleport_all_outcomes, teleport_reverse,
    teleport_reverse_with, teleport_setup, BellOutcome, TeleportOutcome,
};
pub use transfer::{
    forward_transfer, forward_transfer_all, forward_transfer_with, phase_correct_image,
    TransferOutcome,
};
pub use trials::{
    run_teleport_trials, run_transfer_trials, ProtocolSummary, TeleportTrial, TransferTrial,
};

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quantum::{dft_matrix, UnitaryMatrix};

/// Known pixel phases of the far-field detector.
///
/// The detector basis is `A = F · diag(e^{iθ_k})`, where `F` is the 1D DFT
/// (line arrays) or the 2D DFT under raster ordering (lattices). Row 0 of
/// `A` is `N^{-1/2} e^{iθ_k}`; row `s` carries the phases returned by
/// [`row_phases`](Self::row_phases).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectorPhaseMap {
    theta: Vec<f64>,
    layout: Layout,
}

impl DetectorPhaseMap {
    pub fn new(theta: Vec<f64>) -> Result<Self> {
        let n = theta.len();
        Self::with_layout(theta, Layout::Line(n))
    }

    pub fn on_lattice(theta: Vec<f64>, lattice: Lattice2D) -> Result<Self> {
        Self::with_layout(theta, Layout::Lattice(lattice))
    }

    fn with_layout(theta: Vec<f64>, layout: Layout) -> Result<Self> {
        if theta.is_empty() {
            return Err(Error::InvalidArgument("phase map must be nonempty".into()));
        }
        if theta.len() != layout.len() {
            return Err(Error::Dimension {
                expected: layout.len(),
                found: theta.len(),
            });
        }
        if theta.iter().any(|t| !t.is_finite()) {
            return Err(Error::InvalidArgument("phases must be finite".into()));
        }
        Ok(DetectorPhaseMap { theta, layout })
    }

    /// Pure far-field geometry: zero base phases, so the detected row `s`
    /// carries `θ_k = 2πks/N`.
    pub fn far_field(layout: Layout) -> Self {
        DetectorPhaseMap {
            theta: vec![0.0; layout.len()],
            layout,
        }
    }

    /// Uniformly random phases in `[0, 2π)`.
    pub fn random(layout: Layout, seed: u64) -> Self {
        use rand::Rng;
        let mut r = crate::rng::rng_from_seed(seed);
        DetectorPhaseMap {
            theta: (0..layout.len()).map(|_| 2.0 * PI * r.random::<f64>()).collect(),
            layout,
        }
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    /// The full detector basis (rows are the kets `|D_n⟩`).
    pub fn detector_basis(&self) -> UnitaryMatrix {
        let f = self.layout.fourier_matrix();
        let n = self.len();
        let entries = f
            .entries()
            .iter()
            .enumerate()
            .map(|(i, &z)| z * Complex64::from_polar(1.0, self.theta[i % n]))
            .collect();
        UnitaryMatrix::new_unchecked(n, entries).expect("N×N entries")
    }

    /// Phases of row `s` of the detector basis: `A_{s,k} = N^{-1/2} e^{iφ_k}`.
    pub fn row_phases(&self, s: usize) -> Result<DetectorPhaseMap> {
        if s >= self.len() {
            return Err(Error::InvalidArgument(format!(
                "detector row {s} out of range ({} pixels)",
                self.len()
            )));
        }
        let theta = self
            .theta
            .iter()
            .enumerate()
            .map(|(k, t)| t + self.layout.fourier_phase(s, k))
            .collect();
        Ok(DetectorPhaseMap {
            theta,
            layout: self.layout,
        })
    }
}

/// Pixel arrangement of the qubit array (and of the conjugate detector).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Layout {
    Line(usize),
    Lattice(Lattice2D),
}

impl Layout {
    pub fn len(&self) -> usize {
        match self {
            Layout::Line(n) => *n,
            Layout::Lattice(lat) => lat.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// 1D DFT, or `F_{N_y} ⊗ F_{N_x}` for a lattice (k_y is the slow index
    /// under raster ordering).
    pub fn fourier_matrix(&self) -> UnitaryMatrix {
        match self {
            Layout::Line(n) => dft_matrix(*n).expect("nonempty line"),
            Layout::Lattice(lat) => {
                let fy = dft_matrix(lat.ny()).expect("positive side");
                let fx = dft_matrix(lat.nx()).expect("positive side");
                fy.kron(&fx)
            }
        }
    }

    /// Argument of entry `(s, k)` of [`fourier_matrix`](Self::fourier_matrix).
    pub fn fourier_phase(&self, s: usize, k: usize) -> f64 {
        match self {
            Layout::Line(n) => 2.0 * PI * ((k * s) % n) as f64 / *n as f64,
            Layout::Lattice(lat) => {
                let (nx, ny) = (lat.nx(), lat.ny());
                let (kx, ky) = (k % nx, k / nx);
                let (sx, sy) = (s % nx, s / nx);
                2.0 * PI * (((kx * sx) % nx) as f64 / nx as f64 + ((ky * sy) % ny) as f64 / ny as f64)
            }
        }
    }
}
