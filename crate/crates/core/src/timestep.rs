//! Integrating-factor RK4 for `∂_t û = Λ û + N(û)`.
//!
//! The linear multiplier is integrated exactly through `exp(Λ dt)`; classical
//! RK4 is applied to the transformed nonlinearity. The general variable
//! coefficient model has no constant symbol and runs with `Λ ≡ 0`, i.e. plain
//! explicit RK4, which needs a much smaller step.

use num_complex::Complex64;

use crate::analysis::{diagnostics, DiagnosticsRecord};
use crate::error::{Error, Result};
use crate::models::{linear_symbol, rhs, EquationSpec, SimState, BLOWUP_THRESHOLD};
use crate::spectral::{denormalize, normalize, symbol_values, FftPair, Field, TorusGrid};

/// Spectral tail fraction above which a run records a resolution warning.
pub const RESOLUTION_WARNING: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Ifrk4,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegratorConfig {
    pub dt: f64,
    pub t_final: f64,
    pub scheme: Scheme,
    pub snapshot_stride: usize,
    pub cfl_safety: f64,
}

impl IntegratorConfig {
    pub fn new(dt: f64, t_final: f64) -> Self {
        Self {
            dt,
            t_final,
            scheme: Scheme::Ifrk4,
            snapshot_stride: 1,
            cfl_safety: 0.5,
        }
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.snapshot_stride = stride;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if !(self.t_final.is_finite() && self.t_final >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "t_final must be non-negative, got {}",
                self.t_final
            )));
        }
        if self.snapshot_stride == 0 {
            return Err(Error::InvalidArgument(
                "snapshot stride must be positive".into(),
            ));
        }
        if !(self.cfl_safety > 0.0 && self.cfl_safety <= 1.0) {
            return Err(Error::InvalidArgument(
                "cfl_safety must lie in (0, 1]".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub snapshots: Vec<SimState>,
    pub diagnostics: Vec<DiagnosticsRecord>,
    /// Time at which the run was aborted, if it blew up.
    pub blowup: Option<f64>,
    pub warnings: Vec<String>,
}

impl Trajectory {
    pub fn last(&self) -> &SimState {
        self.snapshots
            .last()
            .expect("trajectory holds the initial snapshot")
    }
}

enum Nonlinearity {
    /// `-u ∂_x u`
    Advective,
    /// `-∂_x(u^k)`
    Flux(u32),
    /// Whole right-hand side evaluated through `models::rhs`.
    Full,
}

/// Reusable stepper; holds plans, symbol tables and scratch for one grid/model.
pub struct Integrator {
    spec: EquationSpec,
    grid: TorusGrid,
    lambda: Vec<Complex64>,
    ik: Vec<Complex64>,
    keep: Vec<bool>,
    nonlinearity: Nonlinearity,
    fft: FftPair,
    cached_dt: f64,
    half: Vec<Complex64>,
    full: Vec<Complex64>,
    u: Vec<Complex64>,
    ux: Vec<Complex64>,
    stages: [Vec<Complex64>; 4],
    work: Vec<Complex64>,
}

impl Integrator {
    pub fn new(spec: &EquationSpec, grid: TorusGrid) -> Result<Self> {
        spec.validate()?;
        let n = grid.n();
        let (lambda, nonlinearity) = match spec {
            EquationSpec::GeneralLinear(_) => (vec![Complex64::default(); n], Nonlinearity::Full),
            EquationSpec::Gbo { k } => (
                symbol_values(&grid, &linear_symbol(spec)?)?,
                Nonlinearity::Flux(*k),
            ),
            EquationSpec::Kdv => (
                symbol_values(&grid, &linear_symbol(spec)?)?,
                Nonlinearity::Flux(2),
            ),
            _ => (
                symbol_values(&grid, &linear_symbol(spec)?)?,
                Nonlinearity::Advective,
            ),
        };
        let nyq = grid.nyquist_index();
        let ik = (0..n)
            .map(|i| {
                if i == nyq {
                    Complex64::default()
                } else {
                    Complex64::new(0.0, 2.0 * std::f64::consts::PI * grid.wavenumber(i))
                }
            })
            .collect();
        let keep = (0..n)
            .map(|i| grid.below_dealias_cutoff(grid.mode(i)))
            .collect();
        let zeros = vec![Complex64::default(); n];
        Ok(Self {
            spec: spec.clone(),
            grid,
            lambda,
            ik,
            keep,
            nonlinearity,
            fft: FftPair::new(n),
            cached_dt: f64::NAN,
            half: zeros.clone(),
            full: zeros.clone(),
            u: zeros.clone(),
            ux: zeros.clone(),
            stages: [zeros.clone(), zeros.clone(), zeros.clone(), zeros.clone()],
            work: zeros,
        })
    }

    /// Largest `|Λ(ξ)|` on the grid, or a bound on the explicit operator for
    /// the general linear model.
    pub fn max_symbol(&self) -> f64 {
        match &self.spec {
            EquationSpec::GeneralLinear(g) => {
                let kmax = std::f64::consts::PI * self.grid.n() as f64 / self.grid.length();
                let pts = self.grid.points();
                let sup = |c: &crate::models::Coefficient| {
                    pts.iter().fold(0.0f64, |m, &x| m.max(c.eval(x, 0.0).abs()))
                };
                let mut s = sup(&g.b) * kmax.powi(g.j as i32);
                for (m, a) in g.a.iter().enumerate() {
                    s += sup(a) * kmax.powi(m as i32);
                }
                s
            }
            _ => self.lambda.iter().fold(0.0, |m, v| m.max(v.norm())),
        }
    }

    fn set_dt(&mut self, dt: f64) {
        if dt == self.cached_dt {
            return;
        }
        for ((h, f), l) in self
            .half
            .iter_mut()
            .zip(self.full.iter_mut())
            .zip(&self.lambda)
        {
            *h = (l * (0.5 * dt)).exp();
            *f = *h * *h;
        }
        self.cached_dt = dt;
    }

    /// Nonlinear part of the transformed right-hand side, raw DFT coefficients in and out.
    fn nonlinear(&mut self, v: &[Complex64], t: f64, out_slot: usize) -> Result<()> {
        let n = v.len();
        match self.nonlinearity {
            Nonlinearity::Full => {
                let mut spec = v.to_vec();
                normalize(&self.grid, &mut spec);
                let u = Field::from_spectrum(self.grid, &spec);
                let r = rhs(&self.spec, &SimState::new(u, t))?;
                let raw = denormalize(&self.grid, r.spectrum());
                self.stages[out_slot].copy_from_slice(&raw);
                return Ok(());
            }
            Nonlinearity::Advective => {
                self.u.copy_from_slice(v);
                for ((ux, a), k) in self.ux.iter_mut().zip(v).zip(&self.ik) {
                    *ux = a * k;
                }
                self.fft.inverse(&mut self.u);
                self.fft.inverse(&mut self.ux);
                for i in 0..n {
                    let a = self.u[i].re;
                    if !a.is_finite() || a.abs() >= BLOWUP_THRESHOLD {
                        return Err(Error::Blowup { t });
                    }
                    self.work[i] = Complex64::new(a * self.ux[i].re, 0.0);
                }
                self.fft.forward(&mut self.work);
                let out = &mut self.stages[out_slot];
                for ((o, w), &keep) in out.iter_mut().zip(&self.work).zip(&self.keep) {
                    *o = if keep { -w } else { Complex64::default() };
                }
            }
            Nonlinearity::Flux(k) => {
                self.u.copy_from_slice(v);
                self.fft.inverse(&mut self.u);
                for i in 0..n {
                    let a = self.u[i].re;
                    if !a.is_finite() || a.abs() >= BLOWUP_THRESHOLD {
                        return Err(Error::Blowup { t });
                    }
                    self.work[i] = Complex64::new(a.powi(k as i32), 0.0);
                }
                self.fft.forward(&mut self.work);
                let out = &mut self.stages[out_slot];
                for (i, o) in out.iter_mut().enumerate() {
                    *o = if self.keep[i] {
                        -self.ik[i] * self.work[i]
                    } else {
                        Complex64::default()
                    };
                }
            }
        }
        Ok(())
    }

    /// One IFRK4 step on raw DFT coefficients.
    pub(crate) fn step_raw(&mut self, v: &mut [Complex64], t: f64, dt: f64) -> Result<()> {
        self.set_dt(dt);
        let n = v.len();
        let h = 0.5 * dt;
        let mut trial = vec![Complex64::default(); n];

        self.nonlinear(v, t, 0)?;
        for i in 0..n {
            trial[i] = self.half[i] * (v[i] + h * self.stages[0][i]);
        }
        self.nonlinear(&trial, t + h, 1)?;
        for i in 0..n {
            trial[i] = self.half[i] * v[i] + h * self.stages[1][i];
        }
        self.nonlinear(&trial, t + h, 2)?;
        for i in 0..n {
            trial[i] = self.full[i] * v[i] + dt * self.half[i] * self.stages[2][i];
        }
        self.nonlinear(&trial, t + dt, 3)?;

        let [a, b, c, d] = &self.stages;
        for i in 0..n {
            v[i] = self.full[i] * v[i]
                + dt / 6.0 * (self.full[i] * a[i] + 2.0 * self.half[i] * (b[i] + c[i]) + d[i]);
        }
        Ok(())
    }

    pub fn step(&mut self, state: &SimState, dt: f64) -> Result<SimState> {
        let mut v = self.raw_spectrum(&state.u);
        let t = state.t + dt;
        self.step_raw(&mut v, state.t, dt)?;
        let u = self.field_from_raw(&v);
        crate::models::check_finite(&u, t)?;
        Ok(SimState::new(u, t))
    }

    fn raw_spectrum(&mut self, u: &Field) -> Vec<Complex64> {
        let mut v: Vec<Complex64> = u
            .samples()
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        self.fft.forward(&mut v);
        v
    }

    fn field_from_raw(&mut self, v: &[Complex64]) -> Field {
        let mut buf = v.to_vec();
        self.fft.inverse(&mut buf);
        Field::from_samples_unchecked(self.grid, buf.iter().map(|c| c.re).collect())
    }
}

/// Advances `state` by one IFRK4 step of size `dt`.
pub fn ifrk4_step(state: &SimState, dt: f64, spec: &EquationSpec) -> Result<SimState> {
    Integrator::new(spec, *state.u.grid())?.step(state, dt)
}

/// Integrates from `u0` at `t = 0` to `cfg.t_final` with fixed steps, the last
/// one shortened to land on `t_final`.
///
/// Snapshots are recorded every `snapshot_stride` steps and always at the
/// final time. A blowup ends the run early: the partial trajectory comes back
/// with `blowup` set.
pub fn run(u0: &Field, spec: &EquationSpec, cfg: &IntegratorConfig) -> Result<Trajectory> {
    cfg.validate()?;
    let grid = *u0.grid();
    let mut integ = Integrator::new(spec, grid)?;
    let mut traj = Trajectory {
        snapshots: Vec::new(),
        diagnostics: Vec::new(),
        blowup: None,
        warnings: Vec::new(),
    };

    let bound = cfg.cfl_safety / integ.max_symbol();
    if cfg.dt > bound {
        traj.warnings.push(format!(
            "dt = {} exceeds heuristic bound {:.3e} (cfl_safety / max|symbol|)",
            cfg.dt, bound
        ));
    }

    let record = |traj: &mut Trajectory, state: SimState| -> Result<()> {
        let d = diagnostics(&state, spec)?;
        if d.spectral_tail_fraction > RESOLUTION_WARNING
            && !traj.warnings.iter().any(|w| w.starts_with("resolution"))
        {
            traj.warnings.push(format!(
                "resolution: spectral tail fraction {:.3e} at t = {}",
                d.spectral_tail_fraction, state.t
            ));
        }
        traj.diagnostics.push(d);
        traj.snapshots.push(state);
        Ok(())
    };

    record(&mut traj, SimState::new(u0.clone(), 0.0))?;

    let full_steps = (cfg.t_final / cfg.dt + 1e-9).floor() as usize;
    let remainder = cfg.t_final - full_steps as f64 * cfg.dt;
    let partial = remainder > 1e-12 * cfg.t_final.max(cfg.dt);
    let total = full_steps + usize::from(partial);

    let mut v = integ.raw_spectrum(u0);
    let mut t = 0.0;
    for step in 1..=total {
        let (dt, t_next) = if step <= full_steps {
            let t_next = if step == total {
                cfg.t_final
            } else {
                step as f64 * cfg.dt
            };
            (cfg.dt, t_next)
        } else {
            (cfg.t_final - t, cfg.t_final)
        };
        let outcome = integ.step_raw(&mut v, t, dt).and_then(|_| {
            let u = integ.field_from_raw(&v);
            crate::models::check_finite(&u, t_next).map(|_| u)
        });
        match outcome {
            Ok(u) => {
                t = t_next;
                if step % cfg.snapshot_stride == 0 || step == total {
                    record(&mut traj, SimState::new(u, t))?;
                }
            }
            Err(Error::Blowup { t: tb }) => {
                traj.blowup = Some(tb);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{Coefficient, GeneralLinear};
    use crate::spectral::{apply_multiplier, make_grid, MultiplierSymbol, Parity};
    use std::f64::consts::PI;

    fn rel_l2(a: &Field, b: &Field) -> f64 {
        a.zip_with(b, |x, y| x - y).unwrap().l2_norm() / b.l2_norm()
    }

    #[test]
    fn tiny_mode_is_advanced_exactly() {
        let l = 100.0;
        let g = make_grid(256, l).unwrap();
        let eps = 1e-10;
        let u0 = Field::from_fn(g, |x| eps * (2.0 * PI * x / l).sin());
        let dt = 0.01;
        let next = ifrk4_step(&SimState::new(u0.clone(), 0.0), dt, &EquationSpec::Bo).unwrap();
        let lam = linear_symbol(&EquationSpec::Bo).unwrap();
        let prop = MultiplierSymbol::new(Parity::Hermitian, move |xi| (lam.eval(xi) * dt).exp());
        let expect = apply_multiplier(&u0, &prop).unwrap();
        assert!(rel_l2(&next.u, &expect) < 1e-13);
        assert_eq!(next.t, dt);
    }

    #[test]
    fn zero_stays_zero() {
        let g = make_grid(64, 10.0).unwrap();
        let traj = run(
            &Field::zeros(g),
            &EquationSpec::Bo,
            &IntegratorConfig::new(0.01, 0.1),
        )
        .unwrap();
        assert_eq!(traj.snapshots.len(), 11);
        assert_eq!(traj.last().u.sup_norm(), 0.0);
    }

    #[test]
    fn t_final_zero_gives_initial_snapshot() {
        let g = make_grid(64, 10.0).unwrap();
        let u0 = Field::from_fn(g, |x| (-x * x).exp());
        let traj = run(&u0, &EquationSpec::Bo, &IntegratorConfig::new(0.01, 0.0)).unwrap();
        assert_eq!(traj.snapshots.len(), 1);
        assert_eq!(traj.snapshots[0].t, 0.0);
    }

    #[test]
    fn partial_final_step_lands_on_t_final() {
        let g = make_grid(64, 20.0).unwrap();
        let u0 = Field::from_fn(g, |x| 0.3 * (-x * x).exp());
        let cfg = IntegratorConfig::new(0.03, 0.1).with_stride(2);
        let traj = run(&u0, &EquationSpec::Bh, &cfg).unwrap();
        let times: Vec<f64> = traj.snapshots.iter().map(|s| s.t).collect();
        assert_eq!(times.len(), 3);
        assert!((times[1] - 0.06).abs() < 1e-15);
        assert_eq!(*times.last().unwrap(), 0.1);
        assert!(times.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn linear_flow_is_exact_for_linear_data() {
        // Λ-only: the nonlinear term is O(ε) relative, below roundoff for ε = 1e-15.
        let l = 50.0;
        let g = make_grid(128, l).unwrap();
        let u0 = Field::from_fn(g, |x| {
            1e-15 * ((2.0 * PI * 3.0 * x / l).cos() + (2.0 * PI * 5.0 * x / l).sin())
        });
        for spec in [EquationSpec::Kdv, EquationSpec::Ilw { delta: 0.5 }] {
            let traj = run(&u0, &spec, &IntegratorConfig::new(0.37, 3.7)).unwrap();
            let lam = linear_symbol(&spec).unwrap();
            let prop =
                MultiplierSymbol::new(Parity::Hermitian, move |xi| (lam.eval(xi) * 3.7).exp());
            let expect = apply_multiplier(&u0, &prop).unwrap();
            let e = rel_l2(&traj.last().u, &expect);
            assert!(e < 1e-12, "{} {e} t={}", spec.name(), traj.last().t);
        }
    }

    #[test]
    fn blowup_is_flagged() {
        // gBO with k=5 and large data blows up quickly at this resolution.
        let g = make_grid(64, 10.0).unwrap();
        let u0 = Field::from_fn(g, |x| 50.0 * (-x * x).exp());
        let traj = run(
            &u0,
            &EquationSpec::Gbo { k: 5 },
            &IntegratorConfig::new(0.01, 1.0),
        )
        .unwrap();
        assert!(traj.blowup.is_some());
        assert!(!traj.snapshots.is_empty());
    }

    #[test]
    fn general_linear_matches_constant_coefficient_bo() {
        // b ≡ 1, j = 2, a ≡ 0 is the linear BO flow; explicit RK4 vs exact propagator.
        let l = 20.0;
        let g = make_grid(32, l).unwrap();
        let u0 = Field::from_fn(g, |x| {
            (2.0 * PI * x / l).cos() + 0.5 * (4.0 * PI * x / l).sin()
        });
        let spec = EquationSpec::GeneralLinear(GeneralLinear {
            j: 2,
            a: vec![],
            b: Coefficient::constant(1.0),
        });
        let traj = run(&u0, &spec, &IntegratorConfig::new(1e-3, 0.5)).unwrap();
        let lam = linear_symbol(&EquationSpec::Bo).unwrap();
        let prop = MultiplierSymbol::new(Parity::Hermitian, move |xi| (lam.eval(xi) * 0.5).exp());
        let expect = apply_multiplier(&u0, &prop).unwrap();
        assert!(rel_l2(&traj.last().u, &expect) < 1e-10);
    }

    #[test]
    fn config_validation() {
        assert!(IntegratorConfig::new(0.0, 1.0).validate().is_err());
        assert!(IntegratorConfig::new(0.1, -1.0).validate().is_err());
        assert!(IntegratorConfig::new(0.1, 1.0)
            .with_stride(0)
            .validate()
            .is_err());
    }
}
