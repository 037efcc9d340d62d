use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{apply_corrections_1d, apply_corrections_2d, Lattice2D};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::quantum::{pick_branch, subsystem_branches, Sampling, StateVector, Subsystem, UnitaryMatrix};

/// Label `(n, m)` of the Bell state `|ψ_{n,m}⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BellOutcome {
    pub n: usize,
    pub m: usize,
}

impl BellOutcome {
    pub fn new(n: usize, m: usize, dim: usize) -> Result<Self> {
        let o = BellOutcome { n, m };
        o.check(dim)?;
        Ok(o)
    }

    /// Inverse of [`index`](Self::index).
    pub fn from_index(index: usize, dim: usize) -> Result<Self> {
        if dim == 0 || index >= dim * dim {
            return Err(Error::InvalidArgument(format!(
                "Bell index {index} out of range for N={dim}"
            )));
        }
        Ok(BellOutcome {
            n: index / dim,
            m: index % dim,
        })
    }

    /// Row of [`bell_basis`]: `n·N + m`.
    pub fn index(self, dim: usize) -> usize {
        self.n * dim + self.m
    }

    pub(crate) fn check(self, dim: usize) -> Result<()> {
        if self.n >= dim || self.m >= dim {
            return Err(Error::InvalidArgument(format!(
                "Bell outcome ({}, {}) out of range for N={dim}",
                self.n, self.m
            )));
        }
        Ok(())
    }
}

/// Rows are `|ψ_{n,m}⟩ = N^{-1/2} Σ_k e^{2πikn/N} |k⟩_A |(k+m) mod N⟩_R`.
pub fn bell_basis(dim: usize) -> Result<UnitaryMatrix> {
    if dim == 0 {
        return Err(Error::InvalidArgument("Bell basis needs N ≥ 1".into()));
    }
    let scale = 1.0 / (dim as f64).sqrt();
    let mut entries = vec![Complex64::new(0.0, 0.0); dim.pow(4)];
    let d2 = dim * dim;
    for n in 0..dim {
        for m in 0..dim {
            let row = n * dim + m;
            for k in 0..dim {
                let col = k * dim + (k + m) % dim;
                let angle = 2.0 * PI * ((k * n) % dim) as f64 / dim as f64;
                entries[row * d2 + col] = Complex64::from_polar(scale, angle);
            }
        }
    }
    // orthonormal by construction; checked in tests
    UnitaryMatrix::new_unchecked(d2, entries)
}

/// Electron ⊗ (array ⊗ register): `N^{-1/2} Σ_{k,k'} d_{k'} |k⟩|k⟩_A|k'⟩_R`.
/// The electron starts as a plane wave and crosses the array; the register
/// holds `d` in the array's single-excitation labels.
pub fn teleport_setup(d: &StateVector) -> StateVector {
    let n = d.dim();
    let scale = 1.0 / (n as f64).sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); n * n * n];
    for k in 0..n {
        for (kp, &dk) in d.amplitudes().iter().enumerate() {
            amps[(k * n + k) * n + kp] = dk * scale;
        }
    }
    StateVector::from_normalized(amps).expect("d is normalized")
}

/// Result of one reverse teleportation.
#[derive(Debug, Clone, PartialEq)]
pub struct TeleportOutcome {
    pub outcome: BellOutcome,
    pub probability: f64,
    /// Electron state right after the Bell measurement.
    pub electron_state: StateVector,
    /// Electron state after the image- and diffraction-plane corrections.
    pub corrected: StateVector,
}

fn branches(d: &StateVector) -> Result<Vec<Vec<Complex64>>> {
    let n = d.dim();
    let joint = teleport_setup(d);
    subsystem_branches(&joint, (n, n * n), Subsystem::Second, &bell_basis(n)?)
}

fn correct(raw: &StateVector, o: BellOutcome, lattice: Option<Lattice2D>) -> Result<StateVector> {
    match lattice {
        Some(lat) => apply_corrections_2d(raw, o, lat),
        None => apply_corrections_1d(raw, o),
    }
}

fn check_lattice(d: &StateVector, lattice: Option<Lattice2D>) -> Result<()> {
    match lattice {
        Some(lat) if lat.len() != d.dim() => Err(Error::Dimension {
            expected: lat.len(),
            found: d.dim(),
        }),
        _ => Ok(()),
    }
}

/// Teleport the register state `d` onto a plane-wave electron. Seeded.
pub fn teleport_reverse(d: &StateVector, seed: u64) -> Result<TeleportOutcome> {
    teleport_reverse_with(d, Sampling::Seeded(seed), None)
}

/// [`teleport_reverse`] with explicit sampling; with a lattice, `d` is
/// indexed in raster order and the 2D correction pipeline is used.
pub fn teleport_reverse_with(
    d: &StateVector,
    sampling: Sampling,
    lattice: Option<Lattice2D>,
) -> Result<TeleportOutcome> {
    check_lattice(d, lattice)?;
    let n = d.dim();
    let pm = pick_branch(branches(d)?, sampling)?;
    let outcome = BellOutcome::from_index(pm.outcome, n)?;
    let corrected = correct(&pm.remainder, outcome, lattice)?;
    Ok(TeleportOutcome {
        outcome,
        probability: pm.probability,
        electron_state: pm.remainder,
        corrected,
    })
}

/// Born probabilities of all `N²` Bell outcomes, indexed `n·N + m`.
pub fn bell_outcome_probabilities(d: &StateVector) -> Result<Vec<f64>> {
    Ok(branches(d)?
        .iter()
        .map(|b| b.iter().map(|z| z.norm_sqr()).sum())
        .collect())
}

/// Every Bell outcome forced in turn, in index order.
pub fn teleport_all_outcomes(
    d: &StateVector,
    lattice: Option<Lattice2D>,
    exec: Execution,
) -> Result<Vec<TeleportOutcome>> {
    check_lattice(d, lattice)?;
    let n = d.dim();
    let branches = branches(d)?;
    exec.map_slice(&branches, |b| -> Result<(f64, StateVector)> {
        let p = b.iter().map(|z| z.norm_sqr()).sum();
        Ok((p, StateVector::new(b.clone())?))
    })
    .into_iter()
    .enumerate()
    .map(|(i, r)| {
        let (probability, raw) = r?;
        let outcome = BellOutcome::from_index(i, n)?;
        let corrected = correct(&raw, outcome, lattice)?;
        Ok(TeleportOutcome {
            outcome,
            probability,
            electron_state: raw,
            corrected,
        })
    })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::fidelity;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn bell_n2_rows() {
        let b = bell_basis(2).unwrap();
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        let r00 = b.row(BellOutcome::new(0, 0, 2).unwrap().index(2));
        assert!(close(r00[0], h) && close(r00[1], z) && close(r00[2], z) && close(r00[3], h));
        let r10 = b.row(BellOutcome::new(1, 0, 2).unwrap().index(2));
        assert!(close(r10[0], h) && close(r10[3], -h));
    }

    #[test]
    fn bell_orthonormal() {
        // B·B† = I checked by explicit row inner products
        for n in 1..=5 {
            let b = bell_basis(n).unwrap();
            let d2 = n * n;
            for r in 0..d2 {
                for s in 0..d2 {
                    let ip: Complex64 = b.row(r).iter().zip(b.row(s)).map(|(x, y)| x.conj() * y).sum();
                    let want = if r == s { 1.0 } else { 0.0 };
                    assert!((ip - Complex64::new(want, 0.0)).norm() < 1e-12);
                }
            }
        }
        assert!(bell_basis(0).is_err());
    }

    #[test]
    fn outcome_labels() {
        assert!(BellOutcome::new(2, 0, 2).is_err());
        assert!(BellOutcome::from_index(9, 3).is_err());
        for i in 0..9 {
            assert_eq!(BellOutcome::from_index(i, 3).unwrap().index(3), i);
        }
    }

    #[test]
    fn n2_examples() {
        let d = StateVector::basis(2, 0).unwrap();
        let t = teleport_reverse_with(&d, Sampling::Forced(0), None).unwrap();
        assert_eq!(t.outcome, BellOutcome { n: 0, m: 0 });
        assert!((fidelity(&t.electron_state, &d).unwrap() - 1.0).abs() < 1e-12);
        assert!((fidelity(&t.corrected, &d).unwrap() - 1.0).abs() < 1e-12);

        let t = teleport_reverse_with(&d, Sampling::Forced(1), None).unwrap();
        assert_eq!(t.outcome, BellOutcome { n: 0, m: 1 });
        let one = StateVector::basis(2, 1).unwrap();
        assert!((fidelity(&t.electron_state, &one).unwrap() - 1.0).abs() < 1e-12);
        assert!((fidelity(&t.corrected, &d).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn raw_state_formula() {
        let n = 5;
        let d = StateVector::random(n, 17).unwrap();
        for t in teleport_all_outcomes(&d, None, Execution::Sequential).unwrap() {
            let BellOutcome { n: a, m } = t.outcome;
            // Σ_{k'} e^{−2πi(k'−m)a/N} d_{k'} |(k'−m) mod N⟩
            let mut want = vec![Complex64::new(0.0, 0.0); n];
            for kp in 0..n {
                let j = (kp + n - m) % n;
                want[j] = d.amplitude(kp) * Complex64::from_polar(1.0, -2.0 * PI * (j * a) as f64 / n as f64);
            }
            let want = StateVector::new(want).unwrap();
            assert!((fidelity(&t.electron_state, &want).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn exhaustive_identity() {
        for n in [1, 2, 3, 4, 8] {
            let d = StateVector::random(n, n as u64).unwrap();
            let all = teleport_all_outcomes(&d, None, Execution::Parallel).unwrap();
            assert_eq!(all.len(), n * n);
            for t in all {
                assert!((t.probability - 1.0 / (n * n) as f64).abs() < 1e-12);
                assert!((fidelity(&t.corrected, &d).unwrap() - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn lattice_identity() {
        let lat = Lattice2D::new(3, 2).unwrap();
        let d = StateVector::random(6, 8).unwrap();
        for t in teleport_all_outcomes(&d, Some(lat), Execution::Sequential).unwrap() {
            assert!((fidelity(&t.corrected, &d).unwrap() - 1.0).abs() < 1e-10);
        }
        let bad = StateVector::random(5, 8).unwrap();
        assert!(teleport_all_outcomes(&bad, Some(lat), Execution::Sequential).is_err());
    }

    #[test]
    fn seeded_matches_forced() {
        let d = StateVector::random(4, 3).unwrap();
        let t = teleport_reverse(&d, 42).unwrap();
        let f = teleport_reverse_with(&d, Sampling::Forced(t.outcome.index(4)), None).unwrap();
        assert_eq!(t, f);
        assert_eq!(t, teleport_reverse(&d, 42).unwrap());
    }

    #[test]
    fn uniform_probabilities() {
        let d = StateVector::random(6, 1).unwrap();
        for p in bell_outcome_probabilities(&d).unwrap() {
            assert!((p - 1.0 / 36.0).abs() < 1e-12);
        }
    }
}
