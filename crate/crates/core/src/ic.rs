//! Initial data on the torus.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::spectral::{Field, TorusGrid};

/// `amp · exp(-((x - center)/width)²)`, centered on the wrapped displacement.
pub fn gaussian(grid: &TorusGrid, amp: f64, center: f64, width: f64) -> Field {
    Field::from_fn(*grid, |x| {
        let s = grid.wrap(x, center) / width;
        amp * (-s * s).exp()
    })
}

/// Smooth compactly supported bump `amp · exp(1 - 1/(1 - s²))` for `|s| < 1`,
/// `s = (x - center)/radius`; peak value `amp`.
pub fn bump(grid: &TorusGrid, amp: f64, center: f64, radius: f64) -> Field {
    Field::from_fn(*grid, |x| {
        let s = grid.wrap(x, center) / radius;
        if s.abs() < 1.0 {
            amp * (1.0 - 1.0 / (1.0 - s * s)).exp()
        } else {
            0.0
        }
    })
}

/// `amp · sech²((x - center)/width)`.
pub fn sech2(grid: &TorusGrid, amp: f64, center: f64, width: f64) -> Field {
    Field::from_fn(*grid, |x| {
        let c = (grid.wrap(x, center) / width).cosh();
        amp / (c * c)
    })
}

/// Benjamin-Ono soliton on the line, `4c / (1 + c²(x - x0)²)`, speed `c`.
pub fn line_soliton(grid: &TorusGrid, c: f64, x0: f64) -> Field {
    Field::from_fn(*grid, |x| {
        let s = c * grid.wrap(x, x0);
        4.0 * c / (1.0 + s * s)
    })
}

/// Exact periodic traveling wave of `∂_t u - H∂_x²u + u∂_x u = 0` on the torus
/// of length `L`:
///
/// `φ(x) = 2κ sinh(a) / (cosh(a) - cos(κ(x - x0)))`, `κ = 2π/L`, moving at
/// speed `κ coth(a)`. Choosing `a = atanh(κ/c)` gives speed `c`; as `L → ∞`
/// the profile tends to the line soliton `4c/(1 + c²x²)` and it carries the
/// same mass `4π`.
pub fn periodic_soliton(grid: &TorusGrid, c: f64, x0: f64) -> Result<Field> {
    let kappa = 2.0 * PI / grid.length();
    if c.is_nan() || c <= kappa {
        return Err(Error::InvalidArgument(format!(
            "periodic soliton needs speed c > 2π/L = {kappa}, got {c}"
        )));
    }
    let a = (kappa / c).atanh();
    let (sh, ch) = (a.sinh(), a.cosh());
    Ok(Field::from_fn(*grid, |x| {
        2.0 * kappa * sh / (ch - (kappa * (x - x0)).cos())
    }))
}

/// Sum of `a cos(2πkx/L) + b sin(2πkx/L)` over `(k, a, b)` triples.
pub fn modes(grid: &TorusGrid, triples: &[(i64, f64, f64)]) -> Field {
    let l = grid.length();
    Field::from_fn(*grid, |x| {
        triples
            .iter()
            .map(|&(k, a, b)| {
                let th = 2.0 * PI * k as f64 * x / l;
                a * th.cos() + b * th.sin()
            })
            .sum()
    })
}
