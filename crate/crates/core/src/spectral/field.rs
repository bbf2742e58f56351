use std::sync::OnceLock;

use num_complex::Complex64;

use super::fft;
use super::grid::TorusGrid;
use crate::error::{Error, Result};

/// Real grid function with a lazily computed spectrum.
///
/// The spectrum is normalized so that `coefficient(k)` approximates
/// `∫ u(x) exp(-2πi ξ_k x) dx` over one period, i.e. `h (-1)^k DFT_k(u)`
/// for points starting at `-L/2`.
#[derive(Clone, Debug)]
pub struct Field {
    grid: TorusGrid,
    samples: Vec<f64>,
    spectrum: OnceLock<Vec<Complex64>>,
}

impl Field {
    pub fn new(grid: TorusGrid, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.n() {
            return Err(Error::InvalidArgument(format!(
                "expected {} samples, got {}",
                grid.n(),
                samples.len()
            )));
        }
        if let Some(j) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite sample at x = {}",
                grid.point(j)
            )));
        }
        Ok(Self::from_samples_unchecked(grid, samples))
    }

    pub(crate) fn from_samples_unchecked(grid: TorusGrid, samples: Vec<f64>) -> Self {
        Self {
            grid,
            samples,
            spectrum: OnceLock::new(),
        }
    }

    pub fn zeros(grid: TorusGrid) -> Self {
        Self::from_samples_unchecked(grid, vec![0.0; grid.n()])
    }

    pub fn from_fn(grid: TorusGrid, f: impl Fn(f64) -> f64) -> Self {
        let samples = grid.points().into_iter().map(f).collect();
        Self::from_samples_unchecked(grid, samples)
    }

    /// Builds a field from a normalized spectrum in FFT order, keeping the real part.
    pub fn from_spectrum(grid: TorusGrid, spectrum: &[Complex64]) -> Self {
        let mut buf = denormalize(&grid, spectrum);
        fft::inverse(&mut buf);
        Self::from_samples_unchecked(grid, buf.iter().map(|c| c.re).collect())
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    /// Normalized spectrum in FFT order.
    pub fn spectrum(&self) -> &[Complex64] {
        self.spectrum.get_or_init(|| {
            let mut buf: Vec<Complex64> = self
                .samples
                .iter()
                .map(|&v| Complex64::new(v, 0.0))
                .collect();
            fft::forward(&mut buf);
            normalize(&self.grid, &mut buf);
            buf
        })
    }

    /// Coefficient of integer mode `k`, zero outside the grid band.
    pub fn coefficient(&self, k: i64) -> Complex64 {
        self.grid
            .index_of_mode(k)
            .map_or(Complex64::default(), |i| self.spectrum()[i])
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    /// Discrete `Σ u v h`.
    pub fn inner(&self, other: &Field) -> f64 {
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            * self.grid.spacing()
    }

    pub fn l2_norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Field {
        Field::from_samples_unchecked(self.grid, self.samples.iter().map(|&v| f(v)).collect())
    }

    pub fn zip_with(&self, other: &Field, f: impl Fn(f64, f64) -> f64) -> Result<Field> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(Field::from_samples_unchecked(
            self.grid,
            self.samples
                .iter()
                .zip(&other.samples)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        ))
    }

    /// Mirror image `u(-x)`; the grid is symmetric under `j -> n - j`.
    pub fn reflect(&self) -> Field {
        let n = self.grid.n();
        Field::from_samples_unchecked(
            self.grid,
            (0..n).map(|j| self.samples[(n - j) % n]).collect(),
        )
    }
}

/// Complex grid function, e.g. an analytic signal.
#[derive(Clone, Debug)]
pub struct ComplexField {
    grid: TorusGrid,
    samples: Vec<Complex64>,
}

impl ComplexField {
    pub fn new(grid: TorusGrid, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.n() {
            return Err(Error::InvalidArgument(format!(
                "expected {} samples, got {}",
                grid.n(),
                samples.len()
            )));
        }
        Ok(Self { grid, samples })
    }

    pub fn from_spectrum(grid: TorusGrid, spectrum: &[Complex64]) -> Self {
        let mut buf = denormalize(&grid, spectrum);
        fft::inverse(&mut buf);
        Self { grid, samples: buf }
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn spectrum(&self) -> Vec<Complex64> {
        let mut buf = self.samples.clone();
        fft::forward(&mut buf);
        normalize(&self.grid, &mut buf);
        buf
    }

    pub fn coefficient(&self, k: i64) -> Complex64 {
        self.grid
            .index_of_mode(k)
            .map_or(Complex64::default(), |i| self.spectrum()[i])
    }

    pub fn real(&self) -> Field {
        Field::from_samples_unchecked(self.grid, self.samples.iter().map(|c| c.re).collect())
    }

    pub fn imag(&self) -> Field {
        Field::from_samples_unchecked(self.grid, self.samples.iter().map(|c| c.im).collect())
    }

    pub fn sup_norm(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, v| m.max(v.norm()))
    }
}

// (-1)^k equals (-1)^i in FFT order because n is even.
fn phase(i: usize) -> f64 {
    if i.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

pub(crate) fn normalize(grid: &TorusGrid, raw: &mut [Complex64]) {
    let h = grid.spacing();
    for (i, c) in raw.iter_mut().enumerate() {
        *c *= h * phase(i);
    }
}

pub(crate) fn denormalize(grid: &TorusGrid, spectrum: &[Complex64]) -> Vec<Complex64> {
    let inv_h = 1.0 / grid.spacing();
    spectrum
        .iter()
        .enumerate()
        .map(|(i, c)| c * (inv_h * phase(i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::make_grid;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_field(n: usize, length: f64, seed: u64) -> Field {
        let g = make_grid(n, length).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Field::new(g, (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
    }

    #[test]
    fn hermitian_symmetry() {
        let u = random_field(64, 3.0, 1);
        let scale = u.spectrum().iter().fold(0.0f64, |m, c| m.max(c.norm()));
        for k in 1..32 {
            let d = u.coefficient(-k) - u.coefficient(k).conj();
            assert!(d.norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn round_trip_and_parseval() {
        for &n in &[64, 256, 1024] {
            let u = random_field(n, 7.5, n as u64);
            let back = Field::from_spectrum(*u.grid(), u.spectrum());
            let err = back.zip_with(&u, |a, b| a - b).unwrap().l2_norm();
            assert!(err <= 1e-12 * u.l2_norm());

            let physical = u.l2_norm().powi(2);
            let spectral: f64 =
                u.spectrum().iter().map(|c| c.norm_sqr()).sum::<f64>() / u.grid().length();
            assert!((physical - spectral).abs() <= 1e-10 * physical);
        }
    }

    #[test]
    fn spectrum_approximates_fourier_integral() {
        // ∫ exp(-π x²) e^{-2πiξx} dx = exp(-π ξ²)
        let g = make_grid(256, 20.0).unwrap();
        let u = Field::from_fn(g, |x| (-PI * x * x).exp());
        for k in -5..=5 {
            let xi = k as f64 / 20.0;
            let c = u.coefficient(k);
            assert!((c.re - (-PI * xi * xi).exp()).abs() < 1e-13);
            assert!(c.im.abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_non_finite() {
        let g = make_grid(8, 1.0).unwrap();
        let mut s = vec![0.0; 8];
        s[3] = f64::NAN;
        assert!(Field::new(g, s).is_err());
        assert!(Field::new(g, vec![0.0; 7]).is_err());
    }

    #[test]
    fn reflection() {
        let g = make_grid(16, 2.0).unwrap();
        let u = Field::from_fn(g, |x| x * x * x + 0.3 * x);
        let r = u.reflect();
        for (j, x) in g.points().into_iter().enumerate() {
            if j == 0 {
                // -L/2 maps onto itself
                assert_eq!(r.samples()[0], u.samples()[0]);
            } else {
                assert!((r.samples()[j] - (-(x * x * x) - 0.3 * x)).abs() < 1e-12);
            }
        }
    }
}
