use serde::Serialize;

use crate::error::{Error, Result};

/// Rectangular pixel array flattened in raster order, `k = k_x + N_x·k_y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lattice2D {
    nx: usize,
    ny: usize,
}

impl Lattice2D {
    pub fn new(nx: usize, ny: usize) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::InvalidArgument(format!(
                "lattice sides must be positive, got {nx}×{ny}"
            )));
        }
        Ok(Lattice2D { nx, ny })
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    /// Total pixel count `N = N_x·N_y`.
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn raster_index(&self, kx: usize, ky: usize) -> Result<usize> {
        if kx >= self.nx || ky >= self.ny {
            return Err(Error::InvalidArgument(format!(
                "({kx}, {ky}) outside {}×{} lattice",
                self.nx, self.ny
            )));
        }
        Ok(kx + self.nx * ky)
    }

    /// Inverse of [`raster_index`](Self::raster_index).
    pub fn coords(&self, k: usize) -> Result<(usize, usize)> {
        if k >= self.len() {
            return Err(Error::InvalidArgument(format!(
                "index {k} outside lattice of {} cells",
                self.len()
            )));
        }
        Ok((k % self.nx, k / self.nx))
    }
}

/// `k = k_x + N_x·k_y`.
pub fn raster_index(kx: usize, ky: usize, lat: &Lattice2D) -> Result<usize> {
    lat.raster_index(kx, ky)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let lat = Lattice2D::new(4, 3).unwrap();
        assert_eq!(raster_index(0, 0, &lat).unwrap(), 0);
        assert_eq!(raster_index(3, 2, &lat).unwrap(), 11);
        assert!(raster_index(4, 0, &lat).is_err());
        assert!(raster_index(0, 3, &lat).is_err());
        assert!(lat.coords(12).is_err());
        assert!(Lattice2D::new(0, 3).is_err());
    }

    #[test]
    fn round_trip() {
        for (nx, ny) in [(1, 1), (2, 3), (4, 4), (5, 2)] {
            let lat = Lattice2D::new(nx, ny).unwrap();
            let mut seen = vec![false; lat.len()];
            for ky in 0..ny {
                for kx in 0..nx {
                    let k = lat.raster_index(kx, ky).unwrap();
                    assert!(!seen[k]);
                    seen[k] = true;
                    assert_eq!(lat.coords(k).unwrap(), (kx, ky));
                }
            }
            assert!(seen.into_iter().all(|s| s));
        }
    }
}
