//! Conserved quantities, the PDE-residual oracle, windowed masses and
//! power-law vanishing-order fits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{rhs, EquationSpec, SimState};
use crate::spectral::{derivative, hilbert, Field};
use crate::timestep::Trajectory;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub mass: f64,
    pub l2: f64,
    /// Present for BO and gBO with `k = 2` only.
    pub hamiltonian: Option<f64>,
    pub sobolev_half: f64,
    pub spectral_tail_fraction: f64,
    pub sup_norm: f64,
}

/// Fraction of spectral energy carried by modes with `|k| > n/4`.
pub fn spectral_tail_fraction(u: &Field) -> f64 {
    let grid = u.grid();
    let quarter = (grid.n() / 4) as u64;
    let (mut tail, mut total) = (0.0, 0.0);
    for (i, c) in u.spectrum().iter().enumerate() {
        let e = c.norm_sqr();
        total += e;
        if grid.mode(i).unsigned_abs() > quarter {
            tail += e;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        tail / total
    }
}

/// `(1/2) Σ u H∂_x u h - c Σ u³ h`, with `c = 1/6` for BO and `1/3` for gBO(k=2).
pub fn hamiltonian(u: &Field, spec: &EquationSpec) -> Option<f64> {
    let cubic = match spec {
        EquationSpec::Bo => 1.0 / 6.0,
        EquationSpec::Gbo { k: 2 } => 1.0 / 3.0,
        _ => return None,
    };
    let hux = derivative(&hilbert(u), 1).ok()?;
    let h = u.grid().spacing();
    let cube: f64 = u.samples().iter().map(|v| v * v * v).sum::<f64>() * h;
    Some(0.5 * u.inner(&hux) - cubic * cube)
}

pub fn diagnostics(state: &SimState, spec: &EquationSpec) -> Result<DiagnosticsRecord> {
    let u = &state.u;
    let grid = u.grid();
    let h = grid.spacing();
    let sobolev = u
        .spectrum()
        .iter()
        .enumerate()
        .map(|(i, c)| (1.0 + grid.wavenumber(i).abs()) * c.norm_sqr())
        .sum::<f64>()
        / grid.length();
    Ok(DiagnosticsRecord {
        t: state.t,
        mass: u.samples().iter().sum::<f64>() * h,
        l2: u.l2_norm(),
        hamiltonian: hamiltonian(u, spec),
        sobolev_half: sobolev.sqrt(),
        spectral_tail_fraction: spectral_tail_fraction(u),
        sup_norm: u.sup_norm(),
    })
}

/// Max over interior snapshots of `‖∂_t u - rhs(u)‖ / ‖u‖`.
///
/// `∂_t u` comes from five-point fourth-order central differences when at least
/// five uniformly spaced snapshots exist, three-point second-order otherwise.
pub fn residual(traj: &Trajectory, spec: &EquationSpec) -> Result<f64> {
    residual_of(&traj.snapshots, spec)
}

pub fn residual_of(snaps: &[SimState], spec: &EquationSpec) -> Result<f64> {
    if snaps.len() < 3 {
        return Err(Error::TooFewSnapshots(snaps.len()));
    }
    let tau = snaps[1].t - snaps[0].t;
    if tau.is_nan() || tau <= 0.0 {
        return Err(Error::NonUniformSnapshots);
    }
    for w in snaps.windows(2) {
        if ((w[1].t - w[0].t) - tau).abs() > 1e-9 * tau.max(w[1].t.abs()) {
            return Err(Error::NonUniformSnapshots);
        }
    }

    let fourth = snaps.len() >= 5;
    let reach = if fourth { 2 } else { 1 };
    let mut worst: f64 = 0.0;
    for i in reach..snaps.len() - reach {
        let s = |o: isize| snaps[(i as isize + o) as usize].u.samples();
        let dudt: Vec<f64> = if fourth {
            (0..s(0).len())
                .map(|j| (s(-2)[j] - 8.0 * s(-1)[j] + 8.0 * s(1)[j] - s(2)[j]) / (12.0 * tau))
                .collect()
        } else {
            (0..s(0).len())
                .map(|j| (s(1)[j] - s(-1)[j]) / (2.0 * tau))
                .collect()
        };
        let r = rhs(spec, &snaps[i])?;
        let diff = Field::from_samples_unchecked(*r.grid(), dudt)
            .zip_with(&r, |a, b| a - b)?
            .l2_norm();
        let norm = snaps[i].u.l2_norm();
        worst = worst.max(if norm > 0.0 { diff / norm } else { diff });
    }
    Ok(worst)
}

/// `Σ_{x_j ∈ [a, b]} u(x_j)² h`, without endpoint interpolation.
pub fn windowed_mass(u: &Field, a: f64, b: f64) -> Result<f64> {
    let grid = u.grid();
    let half = 0.5 * grid.length();
    if !(a >= -half && a < b && b <= half) {
        return Err(Error::InvalidArgument(format!(
            "window [{a}, {b}] must satisfy -L/2 <= a < b <= L/2"
        )));
    }
    let tol = 1e-9 * grid.spacing();
    let h = grid.spacing();
    let mut count = 0usize;
    let mut sum = 0.0;
    for (x, v) in grid.points().into_iter().zip(u.samples()) {
        if x >= a - tol && x <= b + tol {
            count += 1;
            sum += v * v;
        }
    }
    if count == 0 {
        return Err(Error::EmptyWindow { a, b });
    }
    Ok(sum * h)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VanishingOrderReport {
    pub x0: f64,
    /// Strictly decreasing.
    pub radii: Vec<f64>,
    pub masses: Vec<f64>,
    /// Least-squares slope of `log M` against `log R`; `+∞` when some mass is exactly zero.
    pub slope: f64,
    pub intercept: f64,
    /// RMS misfit of the log-log line.
    pub fit_residual: f64,
    pub numerically_infinite_order: bool,
}

pub const MIN_RADII: usize = 4;

/// Fits `M(R) = ∫_{|x - x0| <= R} |g|² dx ~ C R^N` over the given radii.
pub fn vanishing_order_fit(g: &Field, x0: f64, radii: &[f64]) -> Result<VanishingOrderReport> {
    let grid = g.grid();
    if radii.len() < MIN_RADII {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_RADII} radii, got {}",
            radii.len()
        )));
    }
    let mut r: Vec<f64> = radii.to_vec();
    r.sort_by(|a, b| b.total_cmp(a));
    if r.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument("radii must be distinct".into()));
    }
    let min_r = 4.0 * grid.spacing();
    if let Some(bad) = r
        .iter()
        .find(|&&v| v.is_nan() || v < min_r || v >= 0.5 * grid.length())
    {
        return Err(Error::InvalidArgument(format!(
            "radius {bad} not resolvable (need 4h = {min_r} <= R < L/2)"
        )));
    }

    let h = grid.spacing();
    let tol = 1e-9 * h;
    let masses: Vec<f64> = r
        .iter()
        .map(|&rad| {
            grid.points()
                .into_iter()
                .zip(g.samples())
                .filter(|(x, _)| grid.wrap(*x, x0).abs() <= rad + tol)
                .map(|(_, v)| v * v)
                .sum::<f64>()
                * h
        })
        .collect();

    if masses.contains(&0.0) {
        return Ok(VanishingOrderReport {
            x0,
            radii: r,
            masses,
            slope: f64::INFINITY,
            intercept: f64::NAN,
            fit_residual: 0.0,
            numerically_infinite_order: true,
        });
    }

    let xs: Vec<f64> = r.iter().map(|v| v.ln()).collect();
    let ys: Vec<f64> = masses.iter().map(|v| v.ln()).collect();
    let (slope, intercept) = least_squares(&xs, &ys);
    let rms = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum::<f64>()
        / xs.len() as f64)
        .sqrt();
    Ok(VanishingOrderReport {
        x0,
        radii: r,
        masses,
        slope,
        intercept,
        fit_residual: rms,
        numerically_infinite_order: false,
    })
}

/// Ordinary least squares line `y = a x + b`; returns `(a, b)`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let a = sxy / sxx;
    (a, my - a * mx)
}
