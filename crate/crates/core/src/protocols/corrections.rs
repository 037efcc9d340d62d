//! Electron-side corrections after the Bell measurement.
//!
//! Image-plane operations are pixelwise phases. Diffraction-plane operations
//! are pixelwise phases sandwiched between Fourier transforms, which turns a
//! linear phase ramp into a cyclic shift of the pixel index.

use std::f64::consts::PI;

use super::{BellOutcome, Lattice2D};
use crate::error::{Error, Result};
use crate::quantum::{apply_unitary, dft_matrix, StateVector, UnitaryMatrix};

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::Dimension { expected, found });
    }
    Ok(())
}

fn ramp(num: usize, den: usize) -> f64 {
    2.0 * PI * (num % den) as f64 / den as f64
}

/// Diffraction-plane shift `F† · diag(e^{2πims/N}) · F`, which maps
/// `|j⟩ → |(j+m) mod N⟩`.
pub fn cyclic_shift_matrix(n: usize, m: usize) -> Result<UnitaryMatrix> {
    let f = dft_matrix(n)?;
    let d = UnitaryMatrix::diagonal_phases(n, |s| ramp(m * s, n))?;
    f.adjoint().matmul(&d)?.matmul(&f)
}

/// Multiply amplitude `j` by `e^{+2πijn/N}`.
pub fn image_phase_correction_1d(raw: &StateVector, o: BellOutcome) -> Result<StateVector> {
    let n = raw.dim();
    o.check(n)?;
    Ok(raw.with_phases(|j| ramp(j * o.n, n)))
}

/// Cyclic shift by `m` through the diffraction plane.
pub fn diffraction_shift_1d(state: &StateVector, m: usize) -> Result<StateVector> {
    apply_unitary(&cyclic_shift_matrix(state.dim(), m)?, state)
}

/// Full 1D correction: image-plane phases, then the diffraction-plane shift.
pub fn apply_corrections_1d(raw: &StateVector, o: BellOutcome) -> Result<StateVector> {
    let fixed = image_phase_correction_1d(raw, o)?;
    diffraction_shift_1d(&fixed, o.m)
}

/// Separable image-plane phases `e^{2πi n j_x/N} · e^{2πi n j_y/N_y}`, equal to
/// `e^{2πi n j/N}` for the raster index `j`.
pub fn image_phase_correction_2d(raw: &StateVector, o: BellOutcome, lat: Lattice2D) -> Result<StateVector> {
    let n = lat.len();
    check_dim(n, raw.dim())?;
    o.check(n)?;
    let (nx, ny) = (lat.nx(), lat.ny());
    Ok(raw.with_phases(|j| {
        let (jx, jy) = (j % nx, j / nx);
        ramp(jx * o.n, n) + ramp(jy * o.n, ny)
    }))
}

/// Separable diffraction-plane stage: 2D DFT, pixel phases
/// `e^{2πi m_x s_x/N_x} · e^{2πi m_y s_y/N_y}`, inverse 2D DFT. This shifts
/// `(j_x, j_y)` by `(m_x, m_y)` on the torus, without carry between rows.
pub fn separable_diffraction_shift_2d(
    state: &StateVector,
    shift: (usize, usize),
    lat: Lattice2D,
) -> Result<StateVector> {
    check_dim(lat.len(), state.dim())?;
    let (nx, ny) = (lat.nx(), lat.ny());
    let f = dft_matrix(ny)?.kron(&dft_matrix(nx)?);
    let d = UnitaryMatrix::diagonal_phases(lat.len(), |s| {
        ramp(shift.0 * (s % nx), nx) + ramp(shift.1 * (s / nx), ny)
    })?;
    let u = f.adjoint().matmul(&d)?.matmul(&f)?;
    apply_unitary(&u, state)
}

/// Row carry for a raster shift by `m_x`: after the torus shift, pixels with
/// `j_x < m_x` wrapped around in x and must move one row further. Done with
/// a y-only Fourier transform and phases `e^{2πi s_y/N_y}` on those columns.
pub fn carry_correction_2d(state: &StateVector, mx: usize, lat: Lattice2D) -> Result<StateVector> {
    check_dim(lat.len(), state.dim())?;
    let (nx, ny) = (lat.nx(), lat.ny());
    let mx = mx % nx;
    if mx == 0 {
        return Ok(state.clone());
    }
    let fy = dft_matrix(ny)?.kron(&UnitaryMatrix::identity(nx)?);
    let d = UnitaryMatrix::diagonal_phases(lat.len(), |s| {
        if s % nx < mx {
            ramp(s / nx, ny)
        } else {
            0.0
        }
    })?;
    let u = fy.adjoint().matmul(&d)?.matmul(&fy)?;
    apply_unitary(&u, state)
}

/// Full 2D correction. Agrees with [`apply_corrections_1d`] on the raster
/// index.
pub fn apply_corrections_2d(raw: &StateVector, o: BellOutcome, lat: Lattice2D) -> Result<StateVector> {
    let fixed = image_phase_correction_2d(raw, o, lat)?;
    let (mx, my) = (o.m % lat.nx(), o.m / lat.nx());
    let torus = separable_diffraction_shift_2d(&fixed, (mx, my), lat)?;
    carry_correction_2d(&torus, mx, lat)
}

/// Explicit permutation `|j⟩ → |(j+m) mod N⟩`, for comparison.
#[cfg(test)]
fn permutation(n: usize, m: usize) -> UnitaryMatrix {
    UnitaryMatrix::from_fn(n, |r, c| {
        num_complex::Complex64::new(if r == (c + m) % n { 1.0 } else { 0.0 }, 0.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::fidelity;
    use num_complex::Complex64;

    fn out(n: usize, m: usize) -> BellOutcome {
        BellOutcome { n, m }
    }

    #[test]
    fn shift_matrix_is_permutation() {
        for n in 1..=16 {
            for m in 0..n {
                let u = cyclic_shift_matrix(n, m).unwrap();
                assert!(u.max_abs_diff(&permutation(n, m)).unwrap() < 1e-12, "N={n} m={m}");
            }
        }
    }

    #[test]
    fn identity_outcome() {
        let s = StateVector::random(5, 3).unwrap();
        let c = apply_corrections_1d(&s, out(0, 0)).unwrap();
        assert!((fidelity(&c, &s).unwrap() - 1.0).abs() < 1e-12);
        let lat = Lattice2D::new(2, 3).unwrap();
        let s = StateVector::random(6, 4).unwrap();
        let c = apply_corrections_2d(&s, out(0, 0), lat).unwrap();
        assert!((fidelity(&c, &s).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pure_shift_on_basis_states() {
        let n = 5;
        for m in 0..n {
            for j in 0..n {
                let b = StateVector::basis(n, j).unwrap();
                let c = apply_corrections_1d(&b, out(0, m)).unwrap();
                let want = StateVector::basis(n, (j + m) % n).unwrap();
                assert!((fidelity(&c, &want).unwrap() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn image_phases_1d() {
        let u = StateVector::uniform(4).unwrap();
        let c = image_phase_correction_1d(&u, out(1, 0)).unwrap();
        for j in 0..4 {
            let want = Complex64::from_polar(0.5, 2.0 * PI * j as f64 / 4.0);
            assert!((c.amplitude(j) - want).norm() < 1e-15);
        }
        assert!(image_phase_correction_1d(&u, out(4, 0)).is_err());
    }

    #[test]
    fn two_d_matches_one_d() {
        for nx in 2..=4 {
            for ny in 2..=4 {
                let lat = Lattice2D::new(nx, ny).unwrap();
                let n = lat.len();
                let raw = StateVector::random(n, (nx * 10 + ny) as u64).unwrap();
                for a in 0..n {
                    for m in 0..n {
                        let o = out(a, m);
                        let one = apply_corrections_1d(&raw, o).unwrap();
                        let two = apply_corrections_2d(&raw, o, lat).unwrap();
                        let f = fidelity(&one, &two).unwrap();
                        assert!((f - 1.0).abs() < 1e-10, "{nx}x{ny} n={a} m={m}: {f}");
                    }
                }
            }
        }
    }

    #[test]
    fn separable_stage_alone_is_torus_shift() {
        // 2×2, m = 1: flat shift sends |1⟩ (x=1,y=0) to |2⟩ (x=0,y=1), the
        // torus shift sends it to |0⟩.
        let lat = Lattice2D::new(2, 2).unwrap();
        let b = StateVector::basis(4, 1).unwrap();
        let torus = separable_diffraction_shift_2d(&b, (1, 0), lat).unwrap();
        assert!((fidelity(&torus, &StateVector::basis(4, 0).unwrap()).unwrap() - 1.0).abs() < 1e-12);
        let flat = diffraction_shift_1d(&b, 1).unwrap();
        assert!((fidelity(&flat, &StateVector::basis(4, 2).unwrap()).unwrap() - 1.0).abs() < 1e-12);
        let fixed = carry_correction_2d(&torus, 1, lat).unwrap();
        assert!((fidelity(&fixed, &flat).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn image_phase_decomposition() {
        for nx in 2..=4 {
            for ny in 2..=4 {
                let n = nx * ny;
                for a in 0..n {
                    for k in 0..n {
                        let (kx, ky) = (k % nx, k / nx);
                        let whole = Complex64::from_polar(1.0, -2.0 * PI * (k * a) as f64 / n as f64);
                        let split = Complex64::from_polar(1.0, -2.0 * PI * (kx * a) as f64 / n as f64)
                            * Complex64::from_polar(1.0, -2.0 * PI * (ky * a) as f64 / ny as f64);
                        assert!((whole - split).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn row_and_column_phases_commute() {
        let (nx, ny, a) = (3, 4, 5);
        let n = nx * ny;
        let rows = UnitaryMatrix::diagonal_phases(n, |j| ramp((j % nx) * a, n)).unwrap();
        let cols = UnitaryMatrix::diagonal_phases(n, |j| ramp((j / nx) * a, ny)).unwrap();
        let rc = rows.matmul(&cols).unwrap();
        let cr = cols.matmul(&rows).unwrap();
        assert!(rc.max_abs_diff(&cr).unwrap() < 1e-12);
    }

    #[test]
    fn dimension_checks() {
        let lat = Lattice2D::new(2, 2).unwrap();
        let s = StateVector::random(3, 0).unwrap();
        assert!(matches!(
            apply_corrections_2d(&s, out(0, 0), lat),
            Err(Error::Dimension { .. })
        ));
    }
}
