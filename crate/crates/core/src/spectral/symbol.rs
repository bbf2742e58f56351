use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

/// Symmetry class of a Fourier multiplier.
///
/// Every class except `General` satisfies `m(-ξ) = conj(m(ξ))` and so maps real
/// fields to real fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    EvenReal,
    OddImaginary,
    Hermitian,
    General,
}

impl Parity {
    pub fn preserves_realness(self) -> bool {
        self != Parity::General
    }

    fn product(self, other: Parity) -> Parity {
        use Parity::*;
        match (self, other) {
            (General, _) | (_, General) => General,
            (EvenReal, EvenReal) | (OddImaginary, OddImaginary) => EvenReal,
            (EvenReal, OddImaginary) | (OddImaginary, EvenReal) => OddImaginary,
            _ => Hermitian,
        }
    }

    fn sum(self, other: Parity) -> Parity {
        use Parity::*;
        match (self, other) {
            (General, _) | (_, General) => General,
            (a, b) if a == b => a,
            _ => Hermitian,
        }
    }
}

type Evaluator = dyn Fn(f64) -> Complex64 + Send + Sync;

/// A Fourier multiplier `ξ -> m(ξ)` with its parity tag.
///
/// Evaluators must return the intended value at `ξ = 0` even when the
/// defining formula is singular there.
#[derive(Clone)]
pub struct MultiplierSymbol {
    eval: Arc<Evaluator>,
    parity: Parity,
}

impl fmt::Debug for MultiplierSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplierSymbol")
            .field("parity", &self.parity)
            .finish_non_exhaustive()
    }
}

/// Which composition of the ILW operator `L_δ` to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IlwMode {
    /// `L_δ` alone; annihilates the mean.
    L,
    /// `L_δ ∂_x`, symbol `2πξ coth(2πδξ)`, value `1/δ` at `ξ = 0`.
    Dx,
    /// `L_δ ∂_x²`, symbol `4π²ξ² i coth(2πδξ)`, value `0` at `ξ = 0`.
    Dxx,
}

impl MultiplierSymbol {
    pub fn new(parity: Parity, eval: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(eval),
            parity,
        }
    }

    pub fn eval(&self, xi: f64) -> Complex64 {
        (self.eval)(xi)
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn identity() -> Self {
        Self::new(Parity::EvenReal, |_| Complex64::new(1.0, 0.0))
    }

    /// `(2πiξ)^order`.
    pub fn derivative(order: u32) -> Self {
        let parity = if order.is_multiple_of(2) {
            Parity::EvenReal
        } else {
            Parity::OddImaginary
        };
        Self::new(parity, move |xi| {
            Complex64::new(0.0, 2.0 * PI * xi).powu(order)
        })
    }

    /// `-i sgn(ξ)` with `sgn(0) = 0`.
    pub fn hilbert() -> Self {
        Self::new(Parity::OddImaginary, |xi| Complex64::new(0.0, -sgn(xi)))
    }

    pub fn ilw(delta: f64, mode: IlwMode) -> Self {
        match mode {
            IlwMode::L => Self::new(Parity::OddImaginary, move |xi| {
                if xi == 0.0 {
                    Complex64::default()
                } else {
                    Complex64::new(0.0, -coth(2.0 * PI * delta * xi))
                }
            }),
            IlwMode::Dx => Self::new(Parity::EvenReal, move |xi| {
                Complex64::new(ilw_dx_symbol(xi, delta), 0.0)
            }),
            IlwMode::Dxx => Self::new(Parity::OddImaginary, move |xi| {
                Complex64::new(0.0, 2.0 * PI * xi * ilw_dx_symbol(xi, delta))
            }),
        }
    }

    pub fn compose(&self, other: &MultiplierSymbol) -> MultiplierSymbol {
        let (a, b) = (self.eval.clone(), other.eval.clone());
        Self::new(self.parity.product(other.parity), move |xi| a(xi) * b(xi))
    }

    pub fn add(&self, other: &MultiplierSymbol) -> MultiplierSymbol {
        let (a, b) = (self.eval.clone(), other.eval.clone());
        Self::new(self.parity.sum(other.parity), move |xi| a(xi) + b(xi))
    }

    pub fn scale(&self, c: f64) -> MultiplierSymbol {
        let a = self.eval.clone();
        Self::new(self.parity, move |xi| a(xi) * c)
    }
}

pub fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

pub fn coth(z: f64) -> f64 {
    1.0 / z.tanh()
}

/// `coth(z) - sgn(z)` without cancellation: `sgn(z) · 2 / (exp(2|z|) - 1)`.
pub fn coth_minus_sgn(z: f64) -> f64 {
    sgn(z) * 2.0 / (2.0 * z.abs()).exp_m1()
}

/// `2πξ coth(2πδξ)`, continued by its limit `1/δ` at `ξ = 0`.
pub fn ilw_dx_symbol(xi: f64, delta: f64) -> f64 {
    let z = 2.0 * PI * delta * xi;
    if z.abs() < 1e-4 {
        // z coth z = 1 + z²/3 - z⁴/45 + O(z⁶)
        let z2 = z * z;
        (1.0 + z2 / 3.0 - z2 * z2 / 45.0) / delta
    } else {
        2.0 * PI * xi * coth(z)
    }
}

/// `1 + coth(z) = -2 / expm1(-2z)`, finite for every `z ≠ 0`.
pub fn one_plus_coth(z: f64) -> f64 {
    -2.0 / (-2.0 * z).exp_m1()
}
