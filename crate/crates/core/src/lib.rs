//! Pseudospectral laboratory for the Benjamin-Ono family of nonlocal
//! dispersive equations on a periodic domain.

pub mod analysis;
pub mod complex_ext;
pub mod error;
pub mod ic;
pub mod io;
pub mod limits;
pub mod models;
pub mod spectral;
pub mod timestep;

pub use error::{Error, Result};
