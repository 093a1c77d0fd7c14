//! Forward and inverse spectral problems for `−y″ + q(x) y(a) = λy` with
//! quasi-periodic conditions `y^(ν)(0) = γ y^(ν)(1)`, `ν = 0, 1`.
//!
//! Potentials live on uniform grids ([`Potential`]); eigenvalues are located
//! by Newton iteration on the characteristic function; the inverse side
//! rebuilds that function from eigenvalues and reads off the potential.

pub mod basis;
pub mod cli;
pub mod error;
pub mod forward;
pub mod inverse;
pub mod io;
pub mod samples;
pub mod spectral_core;

pub use error::{FrozenError, Result};
pub use forward::{compute_spectrum, verify_asymptotics, CharFn, SineSeries};
pub use spectral_core::{FrozenConfig, Potential, Spectrum};
