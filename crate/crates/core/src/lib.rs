//! Simulation of an rf-SQUID flux qubit used as a quantum interface to
//! flying charged particles.
//!
//! - [`quantum`]: state vectors, unitaries, seeded projective measurement.
//! - [`squid`]: device physics (double-well minima, leakage, stray field,
//!   backaction, dissipation) and the detection error budget.
//! - [`interface`]: the particle/qubit interaction and its CNOT reading.
//! - [`protocols`]: electron→array transfer and reverse teleportation.
//!
//! Randomized operations take an explicit `u64` seed and are deterministic
//! in it. Batch runs accept an [`Execution`] mode; with the `parallel`
//! feature (default) the parallel mode uses rayon, and both modes return
//! identical results.

pub mod constants;
pub mod error;
pub mod exec;
pub mod interface;
pub mod numeric;
pub mod protocols;
pub mod quantum;
pub mod rng;
pub mod squid;

pub use error::{Error, Result};
pub use exec::Execution;
pub use quantum::{Sampling, StateVector, UnitaryMatrix};
