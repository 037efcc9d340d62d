//! Finite-dimensional state-vector algebra.
//!
//! Conventions used by every protocol in the crate:
//!
//! * Tensor products are row-major: for `a ⊗ b` the amplitude of `|i⟩|j⟩`
//!   sits at index `i * b.dim() + j` (the first factor is the slow index).
//! * A [`UnitaryMatrix`] used as a measurement basis has the measurement
//!   kets as its rows, so the amplitude of outcome `i` is
//!   `⟨row_i|ψ⟩ = Σ_j conj(U[i][j]) ψ[j]`.
//! * [`dft_matrix`] has entry `(s, k) = N^{-1/2} e^{2πiks/N}`; applied to a
//!   state it maps pixel amplitudes to diffracted-state amplitudes.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rng;

/// Tolerance on the norm of a state produced by a chain of operations.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Tolerance on `max |U†U − I|` for a matrix accepted as unitary.
pub const UNITARY_TOLERANCE: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Normalized vector of complex amplitudes.
#[derive(Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Build a state from arbitrary nonzero amplitudes, rescaling to unit norm.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidState("empty amplitude array".into()));
        }
        let norm = norm(&amplitudes);
        if !norm.is_finite() {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        if norm == 0.0 {
            return Err(Error::InvalidState("zero norm".into()));
        }
        let amps = amplitudes.into_iter().map(|a| a / norm).collect();
        Ok(StateVector { amps })
    }

    /// Accept amplitudes that should already be normalized. Drift up to
    /// [`NORM_TOLERANCE`] is renormalized away; anything larger is rejected.
    pub fn from_normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidState("empty amplitude array".into()));
        }
        let n = norm(&amplitudes);
        if !n.is_finite() || (n * n - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidState(format!(
                "norm² = {} outside tolerance",
                n * n
            )));
        }
        Ok(StateVector {
            amps: amplitudes.into_iter().map(|a| a / n).collect(),
        })
    }

    /// Real-valued convenience constructor.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Computational basis state `|index⟩` of dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(StateVector { amps })
    }

    /// Uniform superposition `N^{-1/2} Σ_k |k⟩`.
    pub fn uniform(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(StateVector { amps: vec![a; dim] })
    }

    /// Random state with independent Gaussian real and imaginary parts
    /// (Haar-distributed direction), deterministic in `seed`.
    pub fn random(dim: usize, seed: u64) -> Result<Self> {
        use rand::Rng;
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        let mut r = rng::rng_from_seed(seed);
        let mut gauss = || {
            // Box–Muller; u1 in (0, 1] keeps the log finite
            let u1: f64 = 1.0 - r.random::<f64>();
            let u2: f64 = r.random::<f64>();
            (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
        };
        let amps = (0..dim).map(|_| Complex64::new(gauss(), gauss())).collect();
        Self::new(amps)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amps)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        check_dim(self.dim(), other.dim())?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Multiply amplitude `k` by `e^{i·phase(k)}`.
    pub fn with_phases<F: Fn(usize) -> f64>(&self, phase: F) -> StateVector {
        StateVector {
            amps: self
                .amps
                .iter()
                .enumerate()
                .map(|(k, a)| a * Complex64::from_polar(1.0, phase(k)))
                .collect(),
        }
    }

    /// `|amplitude|²` for every basis index.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.amps.iter()).finish()
    }
}

fn norm(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::Dimension { expected, found });
    }
    Ok(())
}

/// Dense square complex matrix, verified unitary on construction.
#[derive(Clone, PartialEq)]
pub struct UnitaryMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl UnitaryMatrix {
    /// Wrap row-major `entries`, rejecting non-unitary input.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        let m = Self::new_unchecked(dim, entries)?;
        let residual = m.unitarity_residual();
        if residual.is_nan() || residual >= UNITARY_TOLERANCE {
            return Err(Error::NotUnitary { residual });
        }
        Ok(m)
    }

    /// Shape-checked construction for matrices that are unitary by
    /// construction (products and Kronecker products of unitaries, closed
    /// forms). Tests cover each such constructor.
    pub(crate) fn new_unchecked(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        check_dim(dim * dim, entries.len())?;
        Ok(UnitaryMatrix { dim, entries })
    }

    pub(crate) fn from_fn<F: FnMut(usize, usize) -> Complex64>(dim: usize, mut f: F) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        UnitaryMatrix { dim, entries }
    }

    pub fn identity(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        Ok(Self::from_fn(dim, |r, c| if r == c { ONE } else { ZERO }))
    }

    /// Diagonal unitary `diag(e^{i·phase(k)})`.
    pub fn diagonal_phases<F: Fn(usize) -> f64>(dim: usize, phase: F) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        Ok(Self::from_fn(dim, |r, c| {
            if r == c {
                Complex64::from_polar(1.0, phase(r))
            } else {
                ZERO
            }
        }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> UnitaryMatrix {
        UnitaryMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Matrix product `self · rhs`.
    pub fn matmul(&self, rhs: &UnitaryMatrix) -> Result<UnitaryMatrix> {
        check_dim(self.dim, rhs.dim)?;
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.entries[r * n + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.entries[k * n..(k + 1) * n];
                let out_row = &mut out[r * n..(r + 1) * n];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Ok(UnitaryMatrix { dim: n, entries: out })
    }

    /// Kronecker product `self ⊗ rhs` under the row-major convention.
    pub fn kron(&self, rhs: &UnitaryMatrix) -> UnitaryMatrix {
        let (a, b) = (self.dim, rhs.dim);
        Self::from_fn(a * b, |r, c| {
            self.get(r / b, c / b) * rhs.get(r % b, c % b)
        })
    }

    /// `max |(U†U − I)_{rc}|`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in 0..n {
                let mut acc = ZERO;
                for k in 0..n {
                    acc += self.entries[k * n + r].conj() * self.entries[k * n + c];
                }
                if r == c {
                    acc -= ONE;
                }
                worst = worst.max(acc.norm());
            }
        }
        worst
    }

    /// Largest entrywise distance `max |self − other|`.
    pub fn max_abs_diff(&self, other: &UnitaryMatrix) -> Result<f64> {
        check_dim(self.dim, other.dim)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Smallest entrywise distance between `self` and `e^{iφ}·other` over
    /// global phases φ, with the optimal phase taken from the overlap
    /// `tr(other† self)`.
    pub fn max_abs_diff_up_to_phase(&self, other: &UnitaryMatrix) -> Result<f64> {
        check_dim(self.dim, other.dim)?;
        let overlap: Complex64 = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| b.conj() * a)
            .sum();
        let phase = if overlap.norm() > 0.0 {
            overlap / overlap.norm()
        } else {
            ONE
        };
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - phase * b).norm())
            .fold(0.0, f64::max))
    }
}

impl fmt::Debug for UnitaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[Complex64]> = (0..self.dim).map(|r| self.row(r)).collect();
        f.debug_struct("UnitaryMatrix")
            .field("dim", &self.dim)
            .field("rows", &rows)
            .finish()
    }
}

/// Result of a projective measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    pub outcome: usize,
    pub probability: f64,
    pub post_state: StateVector,
}

/// How a measuring operation picks its outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    /// Born-rule sampling from a generator seeded with this value.
    Seeded(u64),
    /// Report this outcome regardless of chance (exhaustive testing). It must
    /// have nonzero probability.
    Forced(usize),
}

impl From<u64> for Sampling {
    fn from(seed: u64) -> Self {
        Sampling::Seeded(seed)
    }
}

/// Pick an outcome index from a probability table.
pub fn choose_outcome(probabilities: &[f64], sampling: Sampling) -> Result<usize> {
    match sampling {
        Sampling::Forced(i) => {
            let p = *probabilities.get(i).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "forced outcome {i} out of range ({} outcomes)",
                    probabilities.len()
                ))
            })?;
            if p <= 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "forced outcome {i} has zero probability"
                )));
            }
            Ok(i)
        }
        Sampling::Seeded(seed) => {
            let u = rng::uniform(seed);
            let mut acc = 0.0;
            let mut last_possible = None;
            for (i, &p) in probabilities.iter().enumerate() {
                if p > 0.0 {
                    last_possible = Some(i);
                }
                acc += p;
                if u < acc && p > 0.0 {
                    return Ok(i);
                }
            }
            // u landed in the rounding gap above Σp
            last_possible.ok_or_else(|| Error::InvalidState("all probabilities are zero".into()))
        }
    }
}

/// Normalized copy of `amplitudes`.
pub fn make_state(amplitudes: Vec<Complex64>) -> Result<StateVector> {
    StateVector::new(amplitudes)
}

/// `U·s`.
pub fn apply_unitary(u: &UnitaryMatrix, s: &StateVector) -> Result<StateVector> {
    check_dim(u.dim(), s.dim())?;
    let amps = (0..u.dim())
        .map(|r| u.row(r).iter().zip(&s.amps).map(|(a, b)| a * b).sum())
        .collect();
    StateVector::from_normalized(amps)
}

/// `a ⊗ b`, row-major.
pub fn tensor(a: &StateVector, b: &StateVector) -> StateVector {
    let amps = a
        .amps
        .iter()
        .flat_map(|x| b.amps.iter().map(move |y| x * y))
        .collect();
    StateVector { amps }
}

/// Born probabilities of `s` in the basis whose rows are the kets.
pub fn born_probabilities(s: &StateVector, basis: &UnitaryMatrix) -> Result<Vec<f64>> {
    check_dim(basis.dim(), s.dim())?;
    Ok((0..basis.dim())
        .map(|r| {
            let amp: Complex64 = basis.row(r).iter().zip(&s.amps).map(|(k, a)| k.conj() * a).sum();
            amp.norm_sqr()
        })
        .collect())
}

/// Projective measurement of `s` in `basis` (rows are the kets).
pub fn measure(s: &StateVector, basis: &UnitaryMatrix, seed: u64) -> Result<MeasurementRecord> {
    measure_with(s, basis, Sampling::Seeded(seed))
}

/// [`measure`] with an explicit sampling mode.
pub fn measure_with(
    s: &StateVector,
    basis: &UnitaryMatrix,
    sampling: Sampling,
) -> Result<MeasurementRecord> {
    let probs = born_probabilities(s, basis)?;
    let outcome = choose_outcome(&probs, sampling)?;
    let post_state = StateVector::new(basis.row(outcome).to_vec())?;
    Ok(MeasurementRecord {
        outcome,
        probability: probs[outcome],
        post_state,
    })
}

/// Which factor of a bipartite state a measurement acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// Outcome of measuring one factor of a bipartite state.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialMeasurement {
    pub outcome: usize,
    pub probability: f64,
    /// Normalized state of the unmeasured factor.
    pub remainder: StateVector,
}

/// Unnormalized branches `(⟨row_i| ⊗ I)|ψ⟩` (or `I ⊗ ⟨row_i|`) for every
/// outcome `i` of a measurement on one factor of `state = first ⊗ second`.
pub fn subsystem_branches(
    state: &StateVector,
    dims: (usize, usize),
    which: Subsystem,
    basis: &UnitaryMatrix,
) -> Result<Vec<Vec<Complex64>>> {
    let (d1, d2) = dims;
    check_dim(d1 * d2, state.dim())?;
    let measured = match which {
        Subsystem::First => d1,
        Subsystem::Second => d2,
    };
    check_dim(measured, basis.dim())?;
    let psi = &state.amps;
    let branches = (0..measured)
        .map(|i| {
            let bra = basis.row(i);
            match which {
                Subsystem::First => (0..d2)
                    .map(|b| (0..d1).map(|a| bra[a].conj() * psi[a * d2 + b]).sum())
                    .collect(),
                Subsystem::Second => (0..d1)
                    .map(|a| {
                        let block = &psi[a * d2..(a + 1) * d2];
                        bra.iter().zip(block).map(|(k, x)| k.conj() * x).sum()
                    })
                    .collect(),
            }
        })
        .collect();
    Ok(branches)
}

/// Projective measurement of one factor of a bipartite state.
pub fn measure_subsystem(
    state: &StateVector,
    dims: (usize, usize),
    which: Subsystem,
    basis: &UnitaryMatrix,
    sampling: Sampling,
) -> Result<PartialMeasurement> {
    let branches = subsystem_branches(state, dims, which, basis)?;
    pick_branch(branches, sampling)
}

/// Choose among precomputed branches (see [`subsystem_branches`]).
pub fn pick_branch(mut branches: Vec<Vec<Complex64>>, sampling: Sampling) -> Result<PartialMeasurement> {
    let probs: Vec<f64> = branches.iter().map(|b| norm(b).powi(2)).collect();
    let outcome = choose_outcome(&probs, sampling)?;
    let remainder = StateVector::new(std::mem::take(&mut branches[outcome]))?;
    Ok(PartialMeasurement {
        outcome,
        probability: probs[outcome],
        remainder,
    })
}

/// Squared overlap `|⟨a|b⟩|²`; insensitive to global phase.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    let ip = a.inner(b)?;
    if a.dim() == 1 {
        // normalized 1D states differ only by a phase; avoid |e^{iφ}|² rounding
        return Ok(1.0);
    }
    Ok(ip.norm_sqr())
}

/// Unitary discrete Fourier transform with entry `(s, k) = N^{-1/2} e^{2πiks/N}`.
pub fn dft_matrix(n: usize) -> Result<UnitaryMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument("DFT size must be positive".into()));
    }
    let scale = 1.0 / (n as f64).sqrt();
    Ok(UnitaryMatrix::from_fn(n, |s, k| {
        // reduce ks mod n first so the angle stays small and exact
        let angle = 2.0 * PI * ((k * s) % n) as f64 / n as f64;
        Complex64::from_polar(scale, angle)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn make_state_examples() {
        let s = make_state(vec![ONE, ZERO]).unwrap();
        assert_eq!(s.amplitudes(), &[ONE, ZERO]);

        let s = make_state(vec![ONE, ONE]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(s.amplitude(0), c(h, 0.0)) && close(s.amplitude(1), c(h, 0.0)));

        let s = StateVector::from_real(&[2.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
        assert!(close(s.amplitude(0), ONE));
    }

    #[test]
    fn make_state_rejects_zero_and_empty() {
        assert!(matches!(make_state(vec![ZERO, ZERO]), Err(Error::InvalidState(_))));
        assert!(matches!(make_state(vec![]), Err(Error::InvalidState(_))));
        assert!(matches!(
            make_state(vec![c(f64::NAN, 0.0)]),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn from_normalized_tolerance() {
        assert!(StateVector::from_normalized(vec![c(1.0 + 1e-12, 0.0)]).is_ok());
        assert!(StateVector::from_normalized(vec![c(1.001, 0.0)]).is_err());
    }

    #[test]
    fn apply_unitary_examples() {
        let zero = StateVector::basis(2, 0).unwrap();
        let out = apply_unitary(&UnitaryMatrix::identity(2).unwrap(), &zero).unwrap();
        assert_eq!(out, zero);

        let out = apply_unitary(&dft_matrix(2).unwrap(), &zero).unwrap();
        let plus = make_state(vec![ONE, ONE]).unwrap();
        assert!((fidelity(&out, &plus).unwrap() - 1.0).abs() < 1e-12);
        assert!(close(out.amplitude(0), plus.amplitude(0)));

        let f = dft_matrix(4).unwrap();
        let s = StateVector::random(4, 3).unwrap();
        let back = apply_unitary(&f.adjoint(), &apply_unitary(&f, &s).unwrap()).unwrap();
        assert!((fidelity(&back, &s).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn apply_unitary_dim_mismatch() {
        let err = apply_unitary(&dft_matrix(3).unwrap(), &StateVector::basis(2, 0).unwrap());
        assert_eq!(err, Err(Error::Dimension { expected: 3, found: 2 }));
    }

    #[test]
    fn tensor_examples() {
        let z = StateVector::basis(2, 0).unwrap();
        let o = StateVector::basis(2, 1).unwrap();
        assert_eq!(tensor(&z, &o), StateVector::basis(4, 1).unwrap());

        let plus = make_state(vec![ONE, ONE]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let t = tensor(&plus, &z);
        for (a, e) in t.amplitudes().iter().zip([h, 0.0, h, 0.0]) {
            assert!(close(*a, c(e, 0.0)));
        }
        let u = tensor(&plus, &plus);
        for a in u.amplitudes() {
            assert!(close(*a, c(0.5, 0.0)));
        }
    }

    #[test]
    fn measure_examples() {
        let id = UnitaryMatrix::identity(2).unwrap();
        let zero = StateVector::basis(2, 0).unwrap();
        for seed in 0..20 {
            let rec = measure(&zero, &id, seed).unwrap();
            assert_eq!(rec.outcome, 0);
            assert_eq!(rec.probability, 1.0);
            assert_eq!(rec.post_state, zero);
        }

        let probs = born_probabilities(&zero, &dft_matrix(2).unwrap()).unwrap();
        assert!((probs[0] - 0.5).abs() < 1e-15 && (probs[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn measure_binomial_frequencies() {
        let plus = make_state(vec![ONE, ONE]).unwrap();
        let id = UnitaryMatrix::identity(2).unwrap();
        let trials = 10_000u64;
        let ones = (0..trials)
            .filter(|&s| measure(&plus, &id, rng::trial_seed(11, s)).unwrap().outcome == 1)
            .count() as f64;
        let sigma = (trials as f64 * 0.25).sqrt();
        assert!((ones - 0.5 * trials as f64).abs() < 3.0 * sigma, "ones = {ones}");
    }

    #[test]
    fn forced_outcome() {
        let plus = make_state(vec![ONE, ONE]).unwrap();
        let id = UnitaryMatrix::identity(2).unwrap();
        let rec = measure_with(&plus, &id, Sampling::Forced(1)).unwrap();
        assert_eq!(rec.outcome, 1);
        let zero = StateVector::basis(2, 0).unwrap();
        assert!(measure_with(&zero, &id, Sampling::Forced(1)).is_err());
        assert!(measure_with(&zero, &id, Sampling::Forced(2)).is_err());
    }

    #[test]
    fn subsystem_measurement() {
        // |+⟩ ⊗ |1⟩ measured on the first factor in the computational basis
        let plus = make_state(vec![ONE, ONE]).unwrap();
        let one = StateVector::basis(2, 1).unwrap();
        let joint = tensor(&plus, &one);
        let id = UnitaryMatrix::identity(2).unwrap();
        let m = measure_subsystem(&joint, (2, 2), Subsystem::First, &id, Sampling::Forced(0)).unwrap();
        assert!((m.probability - 0.5).abs() < 1e-15);
        assert_eq!(m.remainder, one);
        let m = measure_subsystem(&joint, (2, 2), Subsystem::Second, &id, Sampling::Seeded(4)).unwrap();
        assert_eq!(m.outcome, 1);
        assert!((fidelity(&m.remainder, &plus).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn subsystem_probabilities_sum_to_one() {
        let s = StateVector::random(12, 8).unwrap();
        let f3 = dft_matrix(3).unwrap();
        let f4 = dft_matrix(4).unwrap();
        for (which, basis) in [(Subsystem::First, &f3), (Subsystem::Second, &f4)] {
            let total: f64 = subsystem_branches(&s, (3, 4), which, basis)
                .unwrap()
                .iter()
                .map(|b| norm(b).powi(2))
                .sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
        assert!(subsystem_branches(&s, (3, 4), Subsystem::First, &f4).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let z = StateVector::basis(2, 0).unwrap();
        let o = StateVector::basis(2, 1).unwrap();
        let zp = z.with_phases(|_| PI / 3.0);
        assert_eq!(fidelity(&z, &z).unwrap(), 1.0);
        assert!((fidelity(&z, &zp).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(fidelity(&z, &o).unwrap(), 0.0);
        assert!(fidelity(&z, &StateVector::basis(3, 0).unwrap()).is_err());
        let one = StateVector::basis(1, 0).unwrap();
        for k in 0..20 {
            assert_eq!(fidelity(&one, &one.with_phases(|_| 0.37 * k as f64)).unwrap(), 1.0);
        }
    }

    #[test]
    fn dft_examples() {
        let f1 = dft_matrix(1).unwrap();
        assert_eq!(f1.entries(), &[ONE]);

        let f2 = dft_matrix(2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expect = [h, h, h, -h];
        for (a, e) in f2.entries().iter().zip(expect) {
            assert!(close(*a, c(e, 0.0)));
        }

        // U†U via an explicit triple loop, independent of matmul
        let f5 = dft_matrix(5).unwrap();
        for r in 0..5 {
            for col in 0..5 {
                let mut acc = ZERO;
                for k in 0..5 {
                    acc += f5.get(k, r).conj() * f5.get(k, col);
                }
                let target = if r == col { ONE } else { ZERO };
                assert!((acc - target).norm() < 1e-12);
            }
        }
        assert!(matches!(dft_matrix(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn unitary_constructor_validates() {
        assert!(UnitaryMatrix::new(2, vec![ONE, ONE, ZERO, ONE]).is_err());
        assert!(UnitaryMatrix::new(2, vec![ONE, ZERO, ZERO, ONE]).is_ok());
        assert!(UnitaryMatrix::new(2, vec![ONE]).is_err());
    }

    #[test]
    fn kron_and_matmul() {
        let f2 = dft_matrix(2).unwrap();
        let hh = f2.kron(&f2);
        assert!(hh.unitarity_residual() < 1e-12);
        let id4 = hh.matmul(&hh).unwrap();
        assert!(id4.max_abs_diff(&UnitaryMatrix::identity(4).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn phase_insensitive_diff() {
        let id = UnitaryMatrix::identity(3).unwrap();
        let rotated = UnitaryMatrix::diagonal_phases(3, |_| 1.234).unwrap();
        assert!(id.max_abs_diff(&rotated).unwrap() > 0.5);
        assert!(id.max_abs_diff_up_to_phase(&rotated).unwrap() < 1e-12);
    }
}
