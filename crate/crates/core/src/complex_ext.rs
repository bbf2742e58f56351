//! Analytic signals, half-plane and strip extensions, Cauchy-Riemann
//! residuals and unique-continuation probes.
//!
//! Extensions are computed spectrally: a row at height `y` multiplies each
//! coefficient by `exp(-2πξy)`. On the torus this damping of positive
//! frequencies is the disk extension written in annulus coordinates, so no
//! separate conformal map is needed. The unpaired Nyquist entry is treated as
//! the positive frequency `+n/(2L)` throughout, which makes the `y = 0` row of
//! the half-plane extension reproduce `f + iHf` exactly.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{
    derivative, hilbert, ilw_apply, one_plus_coth, ComplexField, Field, IlwMode, TorusGrid,
};

/// Fraction of the strip height `2δ` that extensions may reach.
pub const STRIP_GUARD: f64 = 0.95;
pub const TOL_ZERO: f64 = 1e-10;
pub const NORM_FLOOR: f64 = 1e-6;
pub const MIN_INTERVAL_POINTS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtensionKind {
    HalfPlane,
    Strip { delta: f64 },
}

/// Samples `F(x_j + i y_m)` on a rectangle above the real axis.
#[derive(Clone, Debug)]
pub struct ExtensionGrid {
    grid: TorusGrid,
    heights: Vec<f64>,
    rows: Vec<Vec<Complex64>>,
    kind: ExtensionKind,
}

impl ExtensionGrid {
    pub fn new(
        grid: TorusGrid,
        heights: Vec<f64>,
        rows: Vec<Vec<Complex64>>,
        kind: ExtensionKind,
    ) -> Result<Self> {
        validate_heights(&heights, kind)?;
        if rows.len() != heights.len() || rows.iter().any(|r| r.len() != grid.n()) {
            return Err(Error::InvalidArgument(
                "row shape does not match grid/heights".into(),
            ));
        }
        Ok(Self {
            grid,
            heights,
            rows,
            kind,
        })
    }

    pub fn grid(&self) -> &TorusGrid {
        &self.grid
    }

    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    pub fn row(&self, m: usize) -> &[Complex64] {
        &self.rows[m]
    }

    pub fn rows(&self) -> &[Vec<Complex64>] {
        &self.rows
    }

    pub fn kind(&self) -> ExtensionKind {
        self.kind
    }

    pub fn max_abs(&self) -> f64 {
        self.rows.iter().flatten().fold(0.0, |m, v| m.max(v.norm()))
    }
}

fn validate_heights(heights: &[f64], kind: ExtensionKind) -> Result<()> {
    if heights.is_empty() {
        return Err(Error::InvalidArgument("no heights given".into()));
    }
    if let Some(&y) = heights.iter().find(|y| y.is_nan() || **y < 0.0) {
        return Err(Error::NegativeHeight(y));
    }
    if heights[0] != 0.0 || heights.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "heights must start at 0 and increase strictly".into(),
        ));
    }
    if let ExtensionKind::Strip { delta } = kind {
        let limit = 2.0 * delta * STRIP_GUARD;
        if let Some(&y) = heights.iter().find(|&&y| y > limit) {
            return Err(Error::OutsideStrip { height: y, limit });
        }
    }
    Ok(())
}

/// Wavenumber with the Nyquist entry read as `+n/(2L)`.
fn analytic_wavenumber(grid: &TorusGrid, i: usize) -> f64 {
    if i == grid.nyquist_index() {
        -grid.wavenumber(i)
    } else {
        grid.wavenumber(i)
    }
}

/// `f + iHf`; its spectrum is `2 f̂` on positive modes, `f̂(0)` at zero and
/// vanishes on negative modes.
pub fn analytic_signal(f: &Field) -> ComplexField {
    let hf = hilbert(f);
    let samples = f
        .samples()
        .iter()
        .zip(hf.samples())
        .map(|(&a, &b)| Complex64::new(a, b))
        .collect();
    ComplexField::new(*f.grid(), samples).expect("same grid")
}

fn rows_from_spectrum(
    grid: &TorusGrid,
    spec: &[Complex64],
    heights: &[f64],
) -> Vec<Vec<Complex64>> {
    let row = |y: f64| {
        let damped: Vec<Complex64> = spec
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if *c == Complex64::default() {
                    return *c;
                }
                c * (-2.0 * PI * analytic_wavenumber(grid, i) * y).exp()
            })
            .collect();
        ComplexField::from_spectrum(*grid, &damped)
            .samples()
            .to_vec()
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        heights.par_iter().map(|&y| row(y)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        heights.iter().map(|&y| row(y)).collect()
    }
}

/// Extension `F = U + iV` of `f` to the upper half-plane.
pub fn halfplane_extend(f: &Field, heights: &[f64]) -> Result<ExtensionGrid> {
    validate_heights(heights, ExtensionKind::HalfPlane)?;
    let grid = *f.grid();
    let nyq = grid.nyquist_index();
    // Built from f̂ directly so negative modes are exactly zero; the growing
    // factor exp(2π|ξ|y) would otherwise amplify their roundoff.
    let spec: Vec<Complex64> = f
        .spectrum()
        .iter()
        .enumerate()
        .map(|(i, c)| match grid.mode(i) {
            0 => *c,
            _ if i == nyq => *c,
            k if k > 0 => 2.0 * c,
            _ => Complex64::default(),
        })
        .collect();
    let mut rows = rows_from_spectrum(&grid, &spec, heights);
    rows[0] = analytic_signal(f).samples().to_vec();
    ExtensionGrid::new(grid, heights.to_vec(), rows, ExtensionKind::HalfPlane)
}

/// `F̂(ξ) e^{-2πξy} / f̂(ξ)` for `F = ∂_x f + i L_δ∂_x f`, i.e.
/// `2πiξ (1 + coth(2πδξ)) e^{-2πξy}`, evaluated without overflow.
///
/// For `ξ < 0` this equals `4πi|ξ| e^{-2π|ξ|(2δ - y)} / (1 - e^{-4πδ|ξ|})`,
/// finite for `y < 2δ` and growing without bound as `y → 2δ`. At `ξ = 0` the
/// limit is `i/δ`.
pub fn strip_multiplier(xi: f64, delta: f64, y: f64) -> Complex64 {
    if xi == 0.0 {
        return Complex64::new(0.0, 1.0 / delta);
    }
    let z = 2.0 * PI * delta * xi;
    let magnitude = if xi > 0.0 {
        2.0 * PI * xi * one_plus_coth(z) * (-2.0 * PI * xi * y).exp()
    } else {
        let a = xi.abs();
        4.0 * PI * a * (-2.0 * PI * a * (2.0 * delta - y)).exp() / -(-4.0 * PI * delta * a).exp_m1()
    };
    Complex64::new(0.0, magnitude)
}

/// Extension of `F = ∂_x f + i L_δ∂_x f` to the strip `0 <= y <= 0.95 · 2δ`.
pub fn strip_extend_ilw(f: &Field, delta: f64, heights: &[f64]) -> Result<ExtensionGrid> {
    crate::spectral::check_delta(delta)?;
    let kind = ExtensionKind::Strip { delta };
    validate_heights(heights, kind)?;
    let grid = *f.grid();
    let fhat = f.spectrum();
    let nyq = grid.nyquist_index();
    let mut spec: Vec<Complex64> = fhat
        .iter()
        .enumerate()
        .map(|(i, c)| c * strip_multiplier(grid.wavenumber(i), delta, 0.0))
        .collect();
    // Nyquist: the operator route on the grid keeps only the L_δ∂_x half.
    spec[nyq] = fhat[nyq]
        * Complex64::new(
            0.0,
            crate::spectral::ilw_dx_symbol(grid.wavenumber(nyq), delta),
        );
    let rows = rows_from_spectrum(&grid, &spec, heights);
    ExtensionGrid::new(grid, heights.to_vec(), rows, kind)
}

/// `∂_x f + i L_δ∂_x f` through the operator route.
pub fn ilw_boundary_value(f: &Field, delta: f64) -> Result<ComplexField> {
    let fx = derivative(f, 1)?;
    let l = ilw_apply(f, delta, IlwMode::Dx)?;
    ComplexField::new(
        *f.grid(),
        fx.samples()
            .iter()
            .zip(l.samples())
            .map(|(&a, &b)| Complex64::new(a, b))
            .collect(),
    )
}

/// Max over interior points of `|∂_x F + i∂_y F| / max|F|`, spectral in `x`
/// and three-point central differences in `y`.
pub fn cauchy_riemann_residual(e: &ExtensionGrid) -> Result<f64> {
    let rows = e.rows();
    if rows.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "Cauchy-Riemann residual needs at least 3 rows, got {}",
            rows.len()
        )));
    }
    let grid = e.grid();
    let scale = e.max_abs();
    if scale == 0.0 {
        return Ok(0.0);
    }
    let ys = e.heights();
    let mut worst: f64 = 0.0;
    for m in 1..rows.len() - 1 {
        let dx = {
            let cf = ComplexField::new(*grid, rows[m].clone())?;
            let spec: Vec<Complex64> = cf
                .spectrum()
                .iter()
                .enumerate()
                .map(|(i, c)| c * Complex64::new(0.0, 2.0 * PI * analytic_wavenumber(grid, i)))
                .collect();
            ComplexField::from_spectrum(*grid, &spec)
        };
        let (a, b) = (ys[m] - ys[m - 1], ys[m + 1] - ys[m]);
        #[allow(clippy::needless_range_loop)]
        for j in 0..grid.n() {
            let dy = (a * a * rows[m + 1][j] - b * b * rows[m - 1][j]
                + (b * b - a * a) * rows[m][j])
                / (a * b * (a + b));
            let r = dx.samples()[j] + Complex64::i() * dy;
            worst = worst.max(r.norm());
        }
    }
    Ok(worst / scale)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "partner", rename_all = "snake_case")]
pub enum Partner {
    Hilbert,
    IlwDx { delta: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConsistentWithUniqueness,
    ViolationCandidate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UcReport {
    pub interval: [f64; 2],
    pub partner: Partner,
    pub points: usize,
    pub sup_f: f64,
    pub inf_f: f64,
    pub sup_partner: f64,
    pub inf_partner: f64,
    pub l2_f: f64,
    pub verdict: Verdict,
}

pub fn apply_partner(f: &Field, partner: Partner) -> Result<Field> {
    match partner {
        Partner::Hilbert => Ok(hilbert(f)),
        Partner::IlwDx { delta } => ilw_apply(f, delta, IlwMode::Dx),
    }
}

pub fn uc_probe(f: &Field, interval: [f64; 2], partner: Partner) -> Result<UcReport> {
    uc_probe_with(f, interval, partner, TOL_ZERO)
}

/// Measures `f` and its partner on `interval`. A violation candidate is a
/// non-trivial `f` for which both vanish there to within `tol_zero`.
pub fn uc_probe_with(
    f: &Field,
    interval: [f64; 2],
    partner: Partner,
    tol_zero: f64,
) -> Result<UcReport> {
    let [a, b] = interval;
    let grid = f.grid();
    let tol = 1e-9 * grid.spacing();
    let idx: Vec<usize> = grid
        .points()
        .into_iter()
        .enumerate()
        .filter(|(_, x)| *x >= a - tol && *x <= b + tol)
        .map(|(j, _)| j)
        .collect();
    if idx.len() < MIN_INTERVAL_POINTS {
        return Err(Error::UnresolvableInterval {
            a,
            b,
            points: idx.len(),
            needed: MIN_INTERVAL_POINTS,
        });
    }
    let p = apply_partner(f, partner)?;
    let stats = |v: &[f64]| {
        idx.iter().fold((0.0f64, f64::INFINITY), |(hi, lo), &j| {
            (hi.max(v[j].abs()), lo.min(v[j].abs()))
        })
    };
    let (sup_f, inf_f) = stats(f.samples());
    let (sup_p, inf_p) = stats(p.samples());
    let l2_f = f.l2_norm();
    let verdict = if sup_f < tol_zero && sup_p < tol_zero && l2_f > NORM_FLOOR {
        Verdict::ViolationCandidate
    } else {
        Verdict::ConsistentWithUniqueness
    };
    Ok(UcReport {
        interval,
        partner,
        points: idx.len(),
        sup_f,
        inf_f,
        sup_partner: sup_p,
        inf_partner: inf_p,
        l2_f,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ic;
    use crate::spectral::make_grid;

    #[test]
    fn analytic_signal_of_cosine() {
        let l = 6.0;
        let g = make_grid(64, l).unwrap();
        let f = Field::from_fn(g, |x| (2.0 * PI * x / l).cos());
        let s = analytic_signal(&f);
        for (x, v) in g.points().into_iter().zip(s.samples()) {
            let e = Complex64::from_polar(1.0, 2.0 * PI * x / l);
            assert!((v - e).norm() < 1e-13);
        }
        assert!((s.coefficient(1) - 2.0 * f.coefficient(1)).norm() < 1e-13);
        assert!(s.coefficient(-1).norm() < 1e-13);
    }

    #[test]
    fn analytic_signal_of_constant() {
        let g = make_grid(16, 1.0).unwrap();
        let s = analytic_signal(&Field::from_fn(g, |_| 2.5));
        assert!(s
            .samples()
            .iter()
            .all(|v| (v - Complex64::new(2.5, 0.0)).norm() < 1e-14));
    }

    #[test]
    fn halfplane_single_mode_and_limits() {
        let l = 8.0;
        let g = make_grid(64, l).unwrap();
        let f = Field::from_fn(g, |x| (2.0 * PI * x / l).cos() + 0.3);
        let e = halfplane_extend(&f, &[0.0, 0.5, 10.0 * l]).unwrap();
        for (j, x) in g.points().into_iter().enumerate() {
            let expect = Complex64::from_polar((-2.0 * PI * 0.5 / l).exp(), 2.0 * PI * x / l) + 0.3;
            assert!((e.row(1)[j] - expect).norm() < 1e-13);
            assert!((e.row(2)[j] - Complex64::new(0.3, 0.0)).norm() < 1e-12);
            assert!((e.row(0)[j].re - f.samples()[j]).abs() < 1e-15);
        }
        assert_eq!(
            halfplane_extend(&f, &[0.0, -1.0]).unwrap_err(),
            Error::NegativeHeight(-1.0)
        );
    }

    #[test]
    fn strip_multiplier_behaviour() {
        let delta = 1.0;
        // ξ < 0: finite below 2δ, blowing up towards it
        let xi = -3.0;
        let mut prev = 0.0;
        for &y in &[0.0, 1.0, 1.5, 1.9, 1.99, 1.999] {
            let m = strip_multiplier(xi, delta, y).norm();
            assert!(m.is_finite() && m > prev);
            prev = m;
        }
        let at = |y: f64| strip_multiplier(-1.0, delta, y).norm();
        let closed = |y: f64| {
            4.0 * PI * (-2.0 * PI * (2.0 * delta - y)).exp() / (1.0 - (-4.0 * PI * delta).exp())
        };
        for &y in &[0.0, 0.7, 1.9] {
            assert!((at(y) - closed(y)).abs() < 1e-14 * closed(y));
        }
        // ξ > 0: ≈ 4πiξ for large δξ
        let m = strip_multiplier(2.0, 3.0, 0.0);
        assert!((m.im - 8.0 * PI).abs() < 1e-12);
        assert_eq!(strip_multiplier(0.0, 2.0, 0.3), Complex64::new(0.0, 0.5));
    }

    #[test]
    fn strip_boundary_row_matches_operator_route() {
        let g = make_grid(512, 40.0).unwrap();
        let f = ic::gaussian(&g, 1.0, 0.5, 1.5);
        let e = strip_extend_ilw(&f, 1.0, &[0.0, 0.5, 1.0]).unwrap();
        let op = ilw_boundary_value(&f, 1.0).unwrap();
        let err = e
            .row(0)
            .iter()
            .zip(op.samples())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).norm()));
        assert!(err < 1e-10 * op.sup_norm());
    }

    #[test]
    fn strip_rejects_heights_outside() {
        let g = make_grid(64, 10.0).unwrap();
        let f = ic::gaussian(&g, 1.0, 0.0, 1.0);
        assert!(matches!(
            strip_extend_ilw(&f, 1.0, &[0.0, 2.0]),
            Err(Error::OutsideStrip { .. })
        ));
        let e = strip_extend_ilw(&Field::zeros(g), 1.0, &[0.0, 0.5, 1.0]).unwrap();
        assert_eq!(e.max_abs(), 0.0);
    }

    #[test]
    fn cr_residual_flags_anti_analytic_field() {
        let l = 2.0 * PI;
        let g = make_grid(64, l).unwrap();
        let heights = vec![0.0, 1e-3, 2e-3];
        let rows = heights
            .iter()
            .map(|&y: &f64| {
                g.points()
                    .into_iter()
                    .map(|x| Complex64::from_polar((-y).exp(), -x))
                    .collect()
            })
            .collect();
        let e = ExtensionGrid::new(g, heights, rows, ExtensionKind::HalfPlane).unwrap();
        let r = cauchy_riemann_residual(&e).unwrap();
        assert!((r - 2.0).abs() < 1e-2, "{r}");
    }

    #[test]
    fn cr_residual_needs_three_rows() {
        let g = make_grid(64, 10.0).unwrap();
        let e = halfplane_extend(&ic::gaussian(&g, 1.0, 0.0, 1.0), &[0.0, 0.1]).unwrap();
        assert!(cauchy_riemann_residual(&e).is_err());
    }

    #[test]
    fn uc_probe_positive_bump_far_field() {
        let g = make_grid(1024, 50.0).unwrap();
        let f = ic::bump(&g, 1.0, 0.0, 1.0);
        let r = uc_probe(&f, [2.0, 3.0], Partner::Hilbert).unwrap();
        assert_eq!(r.sup_f, 0.0);
        assert!(r.inf_partner > 0.0);
        assert_eq!(r.verdict, Verdict::ConsistentWithUniqueness);

        let r = uc_probe(&f, [3.0, 4.0], Partner::IlwDx { delta: 1.0 }).unwrap();
        assert!(r.inf_partner > 0.0);
        assert_eq!(r.verdict, Verdict::ConsistentWithUniqueness);
    }

    #[test]
    fn uc_probe_zero_and_errors() {
        let g = make_grid(256, 20.0).unwrap();
        let r = uc_probe(&Field::zeros(g), [1.0, 2.0], Partner::Hilbert).unwrap();
        assert_eq!(r.verdict, Verdict::ConsistentWithUniqueness);
        assert!(matches!(
            uc_probe(&Field::zeros(g), [1.0, 1.2], Partner::Hilbert),
            Err(Error::UnresolvableInterval { .. })
        ));
    }
}
