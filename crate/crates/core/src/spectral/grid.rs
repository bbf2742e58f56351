use crate::error::{Error, Result};

/// Uniform periodic grid on `[-L/2, L/2)` together with its dual wavenumbers `k/L`.
///
/// Spectral arrays throughout the crate are stored in FFT order: index `i`
/// carries the integer mode `i` for `i < n/2` and `i - n` otherwise, so the
/// unpaired Nyquist mode `-n/2` sits at index `n/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusGrid {
    n: usize,
    length: f64,
}

pub const MIN_POINTS: usize = 8;

impl TorusGrid {
    pub fn new(n: usize, length: f64) -> Result<Self> {
        if !n.is_multiple_of(2) {
            return Err(Error::InvalidGrid("n must be even".into()));
        }
        if n < MIN_POINTS {
            return Err(Error::InvalidGrid(format!(
                "n must be at least {MIN_POINTS}"
            )));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidGrid("length must be positive".into()));
        }
        Ok(Self { n, length })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn point(&self, j: usize) -> f64 {
        -0.5 * self.length + j as f64 * self.spacing()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.point(j)).collect()
    }

    /// Integer mode carried by FFT index `i`.
    pub fn mode(&self, i: usize) -> i64 {
        if i < self.n / 2 {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    pub fn index_of_mode(&self, k: i64) -> Option<usize> {
        let half = (self.n / 2) as i64;
        if k < -half || k >= half {
            return None;
        }
        Some(if k >= 0 {
            k as usize
        } else {
            (k + self.n as i64) as usize
        })
    }

    /// Wavenumber `xi = k/L` at FFT index `i`.
    pub fn wavenumber(&self, i: usize) -> f64 {
        self.mode(i) as f64 / self.length
    }

    /// Wavenumbers in FFT order.
    pub fn fft_wavenumbers(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.wavenumber(i)).collect()
    }

    /// Wavenumbers in ascending order, `k = -n/2 .. n/2 - 1`.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let half = (self.n / 2) as i64;
        (-half..half).map(|k| k as f64 / self.length).collect()
    }

    pub fn nyquist_index(&self) -> usize {
        self.n / 2
    }

    /// True when mode `k` survives the 2/3 rule, i.e. `|k| <= n/3`.
    pub fn below_dealias_cutoff(&self, k: i64) -> bool {
        3 * k.unsigned_abs() as usize <= self.n
    }

    pub fn dealias_cutoff(&self) -> f64 {
        (self.n as f64 / 3.0) / self.length
    }

    /// Index of the grid point nearest to `x` after wrapping onto the torus.
    pub fn nearest_index(&self, x: f64) -> usize {
        let s = (x + 0.5 * self.length).rem_euclid(self.length) / self.spacing();
        (s.round() as usize) % self.n
    }

    /// Signed displacement `x - c` wrapped into `[-L/2, L/2)`.
    pub fn wrap(&self, x: f64, c: f64) -> f64 {
        (x - c + 0.5 * self.length).rem_euclid(self.length) - 0.5 * self.length
    }
}

pub fn make_grid(n: usize, length: f64) -> Result<TorusGrid> {
    TorusGrid::new(n, length)
}
