//! Parameter sweeps for the deep-water (ILW → BO) and shallow-water
//! (rescaled ILW → KdV) limits.

use serde::{Deserialize, Serialize};

use crate::analysis::least_squares;
use crate::error::{Error, Result};
use crate::models::EquationSpec;
use crate::spectral::Field;
use crate::timestep::{run, IntegratorConfig, Trajectory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitPair {
    IlwToBo,
    IlwToKdv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitStudyReport {
    pub pair: LimitPair,
    pub header: String,
    pub t_final: f64,
    pub deltas: Vec<f64>,
    pub errors: Vec<f64>,
    /// `None` for fewer than two deltas.
    pub monotone: Option<bool>,
    /// Exponent `p` of a least-squares fit `e(δ) ≈ C δ^{-p}` (deep water) or
    /// `e(δ) ≈ C δ^{p}` (shallow water). Descriptive only.
    pub fitted_rate: Option<f64>,
    pub warnings: Vec<String>,
}

impl LimitStudyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }
}

fn rel_error(u: &Field, reference: &Field) -> Result<f64> {
    let denom = reference.l2_norm();
    let diff = u.zip_with(reference, |a, b| a - b)?.l2_norm();
    if denom == 0.0 {
        return Ok(if diff == 0.0 { 0.0 } else { f64::INFINITY });
    }
    Ok(diff / denom)
}

fn checked(traj: Trajectory) -> Result<Trajectory> {
    match traj.blowup {
        Some(t) => Err(Error::Blowup { t }),
        None => Ok(traj),
    }
}

fn check_deltas(deltas: &[f64], increasing: bool) -> Result<()> {
    if deltas.is_empty() {
        return Err(Error::InvalidArgument("empty delta list".into()));
    }
    if let Some(d) = deltas.iter().find(|d| !(d.is_finite() && **d > 0.0)) {
        return Err(Error::InvalidArgument(format!(
            "delta must be positive, got {d}"
        )));
    }
    let ordered = deltas
        .windows(2)
        .all(|w| if increasing { w[1] > w[0] } else { w[1] < w[0] });
    if !ordered {
        let dir = if increasing {
            "increasing"
        } else {
            "decreasing"
        };
        return Err(Error::InvalidArgument(format!(
            "deltas must be strictly {dir}"
        )));
    }
    Ok(())
}

fn map_deltas<T: Send>(
    deltas: &[f64],
    f: impl Fn(f64) -> Result<T> + Sync + Send,
) -> Result<Vec<T>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        deltas.par_iter().map(|&d| f(d)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        deltas.iter().map(|&d| f(d)).collect()
    }
}

/// Monotone decrease along the list, and the power-law exponent of `errors`
/// against `deltas` (sign chosen so that decay is positive).
fn summarize(deltas: &[f64], errors: &[f64], deep: bool) -> (Option<bool>, Option<f64>) {
    if deltas.len() < 2 {
        return (None, None);
    }
    let monotone = errors.windows(2).all(|w| w[1] < w[0]);
    let usable: Vec<(f64, f64)> = deltas
        .iter()
        .zip(errors)
        .filter(|(_, e)| **e > 0.0 && e.is_finite())
        .map(|(d, e)| (d.ln(), e.ln()))
        .collect();
    let rate = (usable.len() >= 2).then(|| {
        let (xs, ys): (Vec<f64>, Vec<f64>) = usable.into_iter().unzip();
        let (slope, _) = least_squares(&xs, &ys);
        if deep {
            -slope
        } else {
            slope
        }
    });
    (Some(monotone), rate)
}

/// Runs ILW(δ) for each δ and BO once from the same datum and reports the
/// relative L² distance at `t_final`.
pub fn deep_water_study(
    u0: &Field,
    deltas: &[f64],
    t_final: f64,
    cfg: &IntegratorConfig,
) -> Result<LimitStudyReport> {
    check_deltas(deltas, true)?;
    let cfg = IntegratorConfig {
        t_final,
        ..cfg.clone()
    };
    cfg.validate()?;
    let reference = checked(run(u0, &EquationSpec::Bo, &cfg)?)?;
    let mut warnings = reference.warnings.clone();
    let uref = &reference.last().u;
    let per = map_deltas(deltas, |delta| {
        let traj = checked(run(u0, &EquationSpec::Ilw { delta }, &cfg)?)?;
        let e = rel_error(&traj.last().u, uref)?;
        Ok((e, traj.warnings))
    })?;
    let mut errors = Vec::with_capacity(per.len());
    for (delta, (e, w)) in deltas.iter().zip(per) {
        errors.push(e);
        warnings.extend(w.into_iter().map(|m| format!("delta={delta}: {m}")));
    }
    let (monotone, fitted_rate) = summarize(deltas, &errors, true);
    Ok(LimitStudyReport {
        pair: LimitPair::IlwToBo,
        header: "ILW(delta) vs BO, same initial data, same grid and step; \
                 error = |u_delta(T) - u_BO(T)|_2 / |u_BO(T)|_2"
            .into(),
        t_final,
        deltas: deltas.to_vec(),
        errors,
        monotone,
        fitted_rate,
        warnings,
    })
}

/// KdV limit of `v = (3/δ) u(x, 3t/δ)` with `u` solving ILW(δ).
///
/// The rescaled flow tends to `v_t + v_xxx + v v_x = 0`; the KdV model here
/// carries `∂_x(u²)`, so the reference is `2 w` with `w` the KdV solution from
/// `u0/2`. Each ILW run starts from `(δ/3) u0`, uses step `dt · 3/δ` and stops
/// at `3T/δ`, so all runs take the same number of steps.
pub fn shallow_water_study(
    u0: &Field,
    deltas: &[f64],
    t_final: f64,
    cfg: &IntegratorConfig,
) -> Result<LimitStudyReport> {
    check_deltas(deltas, false)?;
    let cfg = IntegratorConfig {
        t_final,
        ..cfg.clone()
    };
    cfg.validate()?;
    let half = u0.map(|v| 0.5 * v);
    let reference = checked(run(&half, &EquationSpec::Kdv, &cfg)?)?;
    let mut warnings = reference.warnings.clone();
    let vref = reference.last().u.map(|v| 2.0 * v);
    let per = map_deltas(deltas, |delta| {
        let s = delta / 3.0;
        let scaled = IntegratorConfig {
            dt: cfg.dt / s,
            t_final: t_final / s,
            ..cfg.clone()
        };
        let traj = checked(run(
            &u0.map(|v| s * v),
            &EquationSpec::Ilw { delta },
            &scaled,
        )?)?;
        let v = traj.last().u.map(|x| x / s);
        Ok((rel_error(&v, &vref)?, traj.warnings))
    })?;
    let mut errors = Vec::with_capacity(per.len());
    for (delta, (e, w)) in deltas.iter().zip(per) {
        errors.push(e);
        warnings.extend(w.into_iter().map(|m| format!("delta={delta}: {m}")));
    }
    let (monotone, fitted_rate) = summarize(deltas, &errors, false);
    Ok(LimitStudyReport {
        pair: LimitPair::IlwToKdv,
        header: "rescaled ILW(delta) vs KdV; the rescaling is inverted at t=0 so \
                 ILW starts from (delta/3) u0, runs to 3T/delta, and the target is the unmodified KdV run; \
                 error = |v_delta(T) - v_KdV(T)|_2 / |v_KdV(T)|_2"
            .into(),
        t_final,
        deltas: deltas.to_vec(),
        errors,
        monotone,
        fitted_rate,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ic;
    use crate::models::{ilw_symbol_im, kdv_symbol_im};
    use crate::spectral::make_grid;

    #[test]
    fn zero_data_gives_zero_errors() {
        let g = make_grid(64, 20.0).unwrap();
        let cfg = IntegratorConfig::new(0.01, 0.1);
        let r = deep_water_study(&Field::zeros(g), &[1.0, 2.0], 0.1, &cfg).unwrap();
        assert_eq!(r.errors, vec![0.0, 0.0]);
        let r = shallow_water_study(&Field::zeros(g), &[0.5, 0.25], 0.1, &cfg).unwrap();
        assert_eq!(r.errors, vec![0.0, 0.0]);
    }

    #[test]
    fn single_delta_has_no_verdict() {
        let g = make_grid(64, 20.0).unwrap();
        let u0 = ic::gaussian(&g, 0.1, 0.0, 2.0);
        let r = deep_water_study(&u0, &[3.0], 0.05, &IntegratorConfig::new(0.01, 0.0)).unwrap();
        assert_eq!(r.monotone, None);
        assert_eq!(r.fitted_rate, None);
        assert!(r.errors[0] > 0.0);
    }

    #[test]
    fn zero_time_gives_zero_errors() {
        let g = make_grid(64, 20.0).unwrap();
        let u0 = ic::sech2(&g, 1.0, 0.0, 2.0);
        let r =
            shallow_water_study(&u0, &[0.5, 0.25], 0.0, &IntegratorConfig::new(0.01, 1.0)).unwrap();
        assert!(r.errors.iter().all(|e| *e < 1e-15), "{:?}", r.errors);
    }

    #[test]
    fn delta_order_is_checked() {
        let g = make_grid(64, 20.0).unwrap();
        let u0 = Field::zeros(g);
        let cfg = IntegratorConfig::new(0.01, 0.1);
        assert!(deep_water_study(&u0, &[2.0, 1.0], 0.1, &cfg).is_err());
        assert!(shallow_water_study(&u0, &[0.1, 0.2], 0.1, &cfg).is_err());
        assert!(deep_water_study(&u0, &[-1.0, 1.0], 0.1, &cfg).is_err());
    }

    #[test]
    fn rescaled_symbol_tends_to_kdv_quadratically() {
        // v = (3/δ)u(x, 3t/δ): the rescaled linear symbol is (3/δ)Λ_ILW, which
        // should match the dispersion of v_t + v_xxx = 0, i.e. 8π³ξ³.
        let xi = 0.3;
        let gap = |d: f64| ((3.0 / d) * ilw_symbol_im(xi, d) - kdv_symbol_im(xi)).abs();
        let r1 = gap(0.1) / gap(0.05);
        let r2 = gap(0.05) / gap(0.025);
        assert!(
            (r1 - 4.0).abs() < 0.1 && (r2 - 4.0).abs() < 0.05,
            "{r1} {r2}"
        );
    }

    #[test]
    fn report_is_deterministic_and_serializes() {
        let g = make_grid(128, 40.0).unwrap();
        let u0 = ic::gaussian(&g, 0.5, 0.0, 2.0);
        let cfg = IntegratorConfig::new(0.01, 0.0);
        let a = deep_water_study(&u0, &[2.0, 4.0, 8.0], 0.2, &cfg).unwrap();
        let b = deep_water_study(&u0, &[2.0, 4.0, 8.0], 0.2, &cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.monotone, Some(true));
        let back: LimitStudyReport = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(back, a);
    }
}
