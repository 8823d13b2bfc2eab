use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Uniform collocation grid on the 1-torus or 2-torus, period 2π per direction.
///
/// Nodal and spectral arrays are stored row-major: flat index `i1 * n2 + i2`,
/// with `n2 = 1` on one-dimensional grids. Spectral index `i` along an axis
/// maps to the wavenumber `i` for `i <= n/2` and `i - n` above, so the Nyquist
/// index `n/2` carries the wavenumber `+n/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PeriodicGrid {
    dim: usize,
    n: [usize; 2],
}

impl PeriodicGrid {
    pub const MIN_POINTS: usize = 8;

    pub fn new_1d(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Self { dim: 1, n: [n, 1] })
    }

    pub fn new_2d(n1: usize, n2: usize) -> Result<Self> {
        check_size(n1)?;
        check_size(n2)?;
        Ok(Self { dim: 2, n: [n1, n2] })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of points along `axis` (1 for the unused second axis of a 1D grid).
    pub fn n(&self, axis: usize) -> usize {
        self.n[axis]
    }

    pub fn shape(&self) -> [usize; 2] {
        self.n
    }

    /// Total number of collocation points.
    pub fn len(&self) -> usize {
        self.n[0] * self.n[1]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Collocation points `x_j = -π + 2πj/n` along `axis`.
    pub fn points(&self, axis: usize) -> Vec<f64> {
        let n = self.n[axis];
        (0..n).map(|j| -PI + 2.0 * PI * j as f64 / n as f64).collect()
    }

    /// Wavenumber stored at spectral index `index` along `axis`.
    pub fn wavenumber(&self, axis: usize, index: usize) -> i64 {
        let n = self.n[axis];
        if n == 1 {
            return 0;
        }
        if index <= n / 2 {
            index as i64
        } else {
            index as i64 - n as i64
        }
    }

    pub fn wavenumbers(&self, axis: usize) -> Vec<i64> {
        (0..self.n[axis]).map(|i| self.wavenumber(axis, i)).collect()
    }

    /// Spectral index of wavenumber `k` along `axis`, if representable.
    pub fn index_of(&self, axis: usize, k: i64) -> Option<usize> {
        let n = self.n[axis] as i64;
        if n == 1 {
            return (k == 0).then_some(0);
        }
        if k > n / 2 || k <= -n / 2 {
            return None;
        }
        Some(k.rem_euclid(n) as usize)
    }

    /// Flat spectral index of the mode `(k1, k2)`; `k2` must be 0 on 1D grids.
    pub fn mode_index(&self, k1: i64, k2: i64) -> Option<usize> {
        let i1 = self.index_of(0, k1)?;
        let i2 = self.index_of(1, k2)?;
        Some(i1 * self.n[1] + i2)
    }

    /// Wavenumber pair at a flat spectral index.
    pub fn mode_at(&self, flat: usize) -> (i64, i64) {
        let i1 = flat / self.n[1];
        let i2 = flat % self.n[1];
        (self.wavenumber(0, i1), self.wavenumber(1, i2))
    }

    pub fn is_nyquist(&self, flat: usize) -> bool {
        let i1 = flat / self.n[1];
        let i2 = flat % self.n[1];
        (self.n[0] > 1 && i1 == self.n[0] / 2) || (self.n[1] > 1 && i2 == self.n[1] / 2)
    }

    /// Largest retained wavenumber magnitude under the 2/3 rule along `axis`.
    pub fn dealias_cutoff(&self, axis: usize) -> i64 {
        (self.n[axis] / 3) as i64
    }

    pub fn cell_volume(&self) -> f64 {
        (2.0 * PI).powi(self.dim as i32) / self.len() as f64
    }

    pub fn domain_volume(&self) -> f64 {
        (2.0 * PI).powi(self.dim as i32)
    }
}

fn check_size(n: usize) -> Result<()> {
    if n < PeriodicGrid::MIN_POINTS || !n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "grid size {n} must be even and at least {}",
            PeriodicGrid::MIN_POINTS
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_odd_and_small_sizes() {
        assert!(PeriodicGrid::new_1d(7).is_err());
        assert!(PeriodicGrid::new_1d(6).is_err());
        assert!(PeriodicGrid::new_2d(16, 9).is_err());
        assert!(PeriodicGrid::new_1d(8).is_ok());
    }

    #[test]
    fn dual_wavenumbers_for_eight_points() {
        let g = PeriodicGrid::new_1d(8).unwrap();
        assert_eq!(g.wavenumbers(0), vec![0, 1, 2, 3, 4, -3, -2, -1]);
        assert!(g.is_nyquist(4));
        assert_eq!(g.index_of(0, -3), Some(5));
        assert_eq!(g.index_of(0, 4), Some(4));
        assert_eq!(g.index_of(0, -4), None);
        assert_eq!(g.index_of(0, 5), None);
    }

    #[test]
    fn collocation_points_start_at_minus_pi() {
        let g = PeriodicGrid::new_1d(16).unwrap();
        let x = g.points(0);
        assert_eq!(x[0], -PI);
        assert!((x[8] - 0.0).abs() < 1e-15);
        assert!((x[15] - (PI - 2.0 * PI / 16.0)).abs() < 1e-15);
    }

    #[test]
    fn mode_index_round_trip_2d() {
        let g = PeriodicGrid::new_2d(8, 12).unwrap();
        for flat in 0..g.len() {
            let (k1, k2) = g.mode_at(flat);
            assert_eq!(g.mode_index(k1, k2), Some(flat));
        }
        assert_eq!(g.dealias_cutoff(1), 4);
    }
}
