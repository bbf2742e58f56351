use num_complex::Complex64;

use super::field::{ComplexField, Field};
use super::grid::TorusGrid;
use super::symbol::{IlwMode, MultiplierSymbol};
use crate::error::{Error, Result};

pub const MAX_DERIVATIVE_ORDER: u32 = 4;

/// Samples `m` at every grid wavenumber (FFT order).
///
/// For real-preserving symbols the unpaired Nyquist mode gets `Re m(ξ_N)`,
/// which is the Hermitian part of the symbol on the `±ξ_N` pair it stands for.
pub fn symbol_values(grid: &TorusGrid, m: &MultiplierSymbol) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(grid.n());
    for i in 0..grid.n() {
        let xi = grid.wavenumber(i);
        let v = m.eval(xi);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::SingularSymbol { xi });
        }
        out.push(v);
    }
    if m.parity().preserves_realness() {
        let nyq = grid.nyquist_index();
        out[nyq] = Complex64::new(out[nyq].re, 0.0);
    }
    Ok(out)
}

/// Applies a real-preserving multiplier; `General` symbols must go through
/// [`apply_multiplier_complex`].
pub fn apply_multiplier(u: &Field, m: &MultiplierSymbol) -> Result<Field> {
    if !m.parity().preserves_realness() {
        return Err(Error::InvalidArgument(
            "symbol does not preserve realness; use apply_multiplier_complex".into(),
        ));
    }
    Ok(apply_multiplier_complex(u, m)?.real())
}

pub fn apply_multiplier_complex(u: &Field, m: &MultiplierSymbol) -> Result<ComplexField> {
    let values = symbol_values(u.grid(), m)?;
    let spec: Vec<Complex64> = u
        .spectrum()
        .iter()
        .zip(&values)
        .map(|(c, s)| c * s)
        .collect();
    Ok(ComplexField::from_spectrum(*u.grid(), &spec))
}

pub fn hilbert(u: &Field) -> Field {
    apply_multiplier(u, &MultiplierSymbol::hilbert()).expect("hilbert symbol is finite")
}

pub fn ilw_apply(u: &Field, delta: f64, mode: IlwMode) -> Result<Field> {
    check_delta(delta)?;
    apply_multiplier(u, &MultiplierSymbol::ilw(delta, mode))
}

pub fn derivative(u: &Field, order: u32) -> Result<Field> {
    if order > MAX_DERIVATIVE_ORDER {
        return Err(Error::InvalidArgument(format!(
            "derivative order {order} exceeds {MAX_DERIVATIVE_ORDER}"
        )));
    }
    apply_multiplier(u, &MultiplierSymbol::derivative(order))
}

/// 2/3-rule truncation: zeroes every mode with `|k| > n/3`.
pub fn dealias(u: &Field) -> Field {
    let grid = *u.grid();
    let spec: Vec<Complex64> = u
        .spectrum()
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            if grid.below_dealias_cutoff(grid.mode(i)) {
                c
            } else {
                Complex64::default()
            }
        })
        .collect();
    Field::from_spectrum(grid, &spec)
}

pub(crate) fn check_delta(delta: f64) -> Result<()> {
    if delta.is_finite() && delta > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "delta must be positive, got {delta}"
        )))
    }
}
