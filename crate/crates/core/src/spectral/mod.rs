//! Periodic grids, spectra and Fourier multipliers.

mod fft;
mod field;
mod grid;
mod ops;
mod symbol;

pub(crate) use fft::FftPair;
pub(crate) use field::{denormalize, normalize};
pub use field::{ComplexField, Field};
pub use grid::{make_grid, TorusGrid, MIN_POINTS};
pub(crate) use ops::check_delta;
pub use ops::{
    apply_multiplier, apply_multiplier_complex, dealias, derivative, hilbert, ilw_apply,
    symbol_values, MAX_DERIVATIVE_ORDER,
};
pub use symbol::{
    coth, coth_minus_sgn, ilw_dx_symbol, one_plus_coth, sgn, IlwMode, MultiplierSymbol, Parity,
};
