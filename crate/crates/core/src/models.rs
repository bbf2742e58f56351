//! Right-hand sides `∂_t u = RHS(u)` for the Benjamin-Ono family and their
//! constant-coefficient linear parts.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{
    check_delta, dealias, derivative, hilbert, ilw_apply, ilw_dx_symbol, sgn, Field, IlwMode,
    MultiplierSymbol, Parity, TorusGrid, MAX_DERIVATIVE_ORDER,
};

/// States with `‖u‖∞` at or above this are treated as blown up.
pub const BLOWUP_THRESHOLD: f64 = 1e8;

/// Variable coefficient `(x, t) -> value`.
#[derive(Clone)]
pub struct Coefficient {
    f: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    label: String,
}

impl Coefficient {
    pub fn new(
        label: impl Into<String>,
        f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            f: Arc::new(f),
            label: label.into(),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(format!("{c}"), move |_, _| c)
    }

    pub fn eval(&self, x: f64, t: f64) -> f64 {
        (self.f)(x, t)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    fn sample(&self, grid: &TorusGrid, t: f64) -> Vec<f64> {
        grid.points().into_iter().map(|x| self.eval(x, t)).collect()
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coefficient({})", self.label)
    }
}

/// `∂_t w - b(x,t) H ∂_x^j w + Σ_m a_m(x,t) ∂_x^m w = 0`.
#[derive(Clone, Debug)]
pub struct GeneralLinear {
    pub j: u32,
    /// `a[m]` multiplies `∂_x^m w`; at most `MAX_DERIVATIVE_ORDER + 1` entries.
    pub a: Vec<Coefficient>,
    pub b: Coefficient,
}

impl GeneralLinear {
    /// Fails with `DegenerateCoefficient` at the first grid point where `b` vanishes.
    pub fn check_nondegenerate(&self, grid: &TorusGrid, t: f64) -> Result<Vec<f64>> {
        let b = self.b.sample(grid, t);
        for (x, v) in grid.points().into_iter().zip(&b) {
            if *v == 0.0 || !v.is_finite() {
                return Err(Error::DegenerateCoefficient { x, t });
            }
        }
        Ok(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelTag {
    Bo,
    Gbo,
    Bh,
    Ilw,
    Kdv,
    GeneralLinear,
}

#[derive(Clone, Debug)]
pub enum EquationSpec {
    /// `∂_t u - H∂_x²u + u∂_x u = 0`
    Bo,
    /// `∂_t u - H∂_x²u + ∂_x(u^k) = 0`
    Gbo {
        k: u32,
    },
    /// `∂_t u - Hu + u∂_x u = 0`
    Bh,
    /// `∂_t u - L_δ∂_x²u + (1/δ)∂_x u + u∂_x u = 0`
    Ilw {
        delta: f64,
    },
    /// `∂_t u + ∂_x³u + ∂_x(u²) = 0`
    Kdv,
    GeneralLinear(GeneralLinear),
}

impl EquationSpec {
    pub fn tag(&self) -> ModelTag {
        match self {
            EquationSpec::Bo => ModelTag::Bo,
            EquationSpec::Gbo { .. } => ModelTag::Gbo,
            EquationSpec::Bh => ModelTag::Bh,
            EquationSpec::Ilw { .. } => ModelTag::Ilw,
            EquationSpec::Kdv => ModelTag::Kdv,
            EquationSpec::GeneralLinear(_) => ModelTag::GeneralLinear,
        }
    }

    pub fn name(&self) -> String {
        match self {
            EquationSpec::Bo => "bo".into(),
            EquationSpec::Gbo { k } => format!("gbo(k={k})"),
            EquationSpec::Bh => "bh".into(),
            EquationSpec::Ilw { delta } => format!("ilw(delta={delta})"),
            EquationSpec::Kdv => "kdv".into(),
            EquationSpec::GeneralLinear(g) => format!("general(j={})", g.j),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            EquationSpec::Gbo { k } if *k < 2 => Err(Error::InvalidArgument(format!(
                "gbo requires k >= 2, got {k}"
            ))),
            EquationSpec::Ilw { delta } => check_delta(*delta),
            EquationSpec::GeneralLinear(g) => {
                if g.j > MAX_DERIVATIVE_ORDER {
                    return Err(Error::InvalidArgument(format!(
                        "general linear j = {} exceeds {MAX_DERIVATIVE_ORDER}",
                        g.j
                    )));
                }
                if g.a.len() > MAX_DERIVATIVE_ORDER as usize + 1 {
                    return Err(Error::InvalidArgument(format!(
                        "general linear supports a_0..a_{MAX_DERIVATIVE_ORDER}"
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SimState {
    pub u: Field,
    pub t: f64,
}

impl SimState {
    pub fn new(u: Field, t: f64) -> Self {
        Self { u, t }
    }
}

pub(crate) fn check_finite(u: &Field, t: f64) -> Result<()> {
    let s = u.sup_norm();
    if s.is_finite() && s < BLOWUP_THRESHOLD {
        Ok(())
    } else {
        Err(Error::Blowup { t })
    }
}

fn product(a: &Field, b: &Field) -> Field {
    dealias(&a.zip_with(b, |x, y| x * y).expect("same grid"))
}

/// Time derivative of `state.u` under `spec`, transcribed term by term.
pub fn rhs(spec: &EquationSpec, state: &SimState) -> Result<Field> {
    spec.validate()?;
    let u = &state.u;
    check_finite(u, state.t)?;
    let grid = *u.grid();
    let sub = |a: &Field, b: &Field| a.zip_with(b, |x, y| x - y).expect("same grid");

    let out = match spec {
        EquationSpec::Bo => {
            let disp = derivative(&hilbert(u), 2)?;
            sub(&disp, &product(u, &derivative(u, 1)?))
        }
        EquationSpec::Gbo { k } => {
            let disp = derivative(&hilbert(u), 2)?;
            let flux = dealias(&u.map(|v| v.powi(*k as i32)));
            sub(&disp, &derivative(&flux, 1)?)
        }
        EquationSpec::Bh => sub(&hilbert(u), &product(u, &derivative(u, 1)?)),
        EquationSpec::Ilw { delta } => {
            let ux = derivative(u, 1)?;
            let disp = ilw_apply(u, *delta, IlwMode::Dxx)?;
            let transport = ux.map(|v| v / delta);
            sub(&sub(&disp, &transport), &product(u, &ux))
        }
        EquationSpec::Kdv => {
            let uxxx = derivative(u, 3)?;
            let flux = derivative(&dealias(&u.map(|v| v * v)), 1)?;
            uxxx.zip_with(&flux, |a, b| -a - b)?
        }
        EquationSpec::GeneralLinear(g) => {
            let b = Field::from_samples_unchecked(grid, g.check_nondegenerate(&grid, state.t)?);
            let mut acc = product(&b, &derivative(&hilbert(u), g.j)?);
            for (m, a) in g.a.iter().enumerate() {
                let am = Field::from_samples_unchecked(grid, a.sample(&grid, state.t));
                acc = sub(&acc, &product(&am, &derivative(u, m as u32)?));
            }
            acc
        }
    };
    Ok(out)
}

/// Constant-coefficient linear part `Λ(ξ)` of the right-hand side.
///
/// Every value is purely imaginary and odd in `ξ`, so `exp(tΛ)` is unitary and
/// real-preserving.
pub fn linear_symbol(spec: &EquationSpec) -> Result<MultiplierSymbol> {
    spec.validate()?;
    let odd = |f: fn(f64) -> f64| {
        MultiplierSymbol::new(Parity::OddImaginary, move |xi| Complex64::new(0.0, f(xi)))
    };
    Ok(match spec {
        EquationSpec::Bo | EquationSpec::Gbo { .. } => odd(bo_symbol_im),
        EquationSpec::Bh => odd(|xi| -sgn(xi)),
        EquationSpec::Kdv => odd(kdv_symbol_im),
        EquationSpec::Ilw { delta } => {
            let delta = *delta;
            MultiplierSymbol::new(Parity::OddImaginary, move |xi| {
                Complex64::new(0.0, ilw_symbol_im(xi, delta))
            })
        }
        EquationSpec::GeneralLinear(_) => return Err(Error::NoConstantSymbol),
    })
}

/// `Im Λ_BO(ξ) = 4π²ξ² sgn(ξ)`.
pub fn bo_symbol_im(xi: f64) -> f64 {
    4.0 * PI * PI * xi * xi.abs()
}

/// `Im Λ_KdV(ξ) = 8π³ξ³`, from `-(2πiξ)³`.
pub fn kdv_symbol_im(xi: f64) -> f64 {
    8.0 * PI.powi(3) * xi.powi(3)
}

/// `Im Λ_ILW(ξ) = 2πξ (2πξ coth(2πδξ) - 1/δ)`, zero at `ξ = 0`.
///
/// The bracket is evaluated as `(z coth z - 1)/δ` with a series for small `z`
/// so the cancellation between the coth pole and the transport term is exact.
pub fn ilw_symbol_im(xi: f64, delta: f64) -> f64 {
    let z = 2.0 * PI * delta * xi;
    let bracket = if z.abs() < 1e-2 {
        let z2 = z * z;
        // z coth z - 1 = z²/3 - z⁴/45 + 2z⁶/945 - z⁸/4725
        z2 * (1.0 / 3.0 - z2 * (1.0 / 45.0 - z2 * (2.0 / 945.0 - z2 / 4725.0))) / delta
    } else {
        ilw_dx_symbol(xi, delta) - 1.0 / delta
    };
    2.0 * PI * xi * bracket
}
