//! Reconstruction of the potential from one spectrum or from the periodic and
//! antiperiodic pair.

mod family;
mod one_spectrum;
mod operator;
pub(crate) mod product;
mod two_spectra;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{FrozenError, Result};
use crate::forward::SineSeries;
use crate::spectral_core::{Potential, Spectrum};

pub use family::{isobispectral_family, isospectral_family};
pub use one_spectrum::{algorithm1, algorithm2};
pub use operator::{OperatorKind, OperatorSpec, SINGULARITY_THRESHOLD};
pub use product::{delta_from_spectrum, recover_w, ProductCharFn};
pub use two_spectra::{algorithm3, algorithm4, check_growth, GrowthReport};

/// Relative tolerance for the exact degeneration of odd indices under `γ = ±1`.
pub const DEGENERATION_TOLERANCE: f64 = 1e-9;
/// Relative tolerance for the symmetry `w(x) = γ w(1 − x)` of a recovered kernel.
pub const SYMMETRY_TOLERANCE: f64 = 1e-6;
/// Relative tolerance for `w_0 + w_1 = 0` on `(1 − a, 1)`.
pub const GROWTH_TOLERANCE: f64 = 1e-6;

/// Truncation parameters shared by all reconstructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InverseOptions {
    /// Number of sine coefficients of `w`.
    pub k_terms: usize,
    /// Number of eigenvalues entering the product.
    pub n_trunc: usize,
    /// Grid of the output potential.
    pub grid_n: usize,
}

impl InverseOptions {
    pub fn new(k_terms: usize, n_trunc: usize, grid_n: usize) -> Result<Self> {
        if k_terms == 0 || n_trunc == 0 {
            return Err(FrozenError::InvalidArgument("k_terms and n_trunc must be positive".into()));
        }
        if grid_n < 16 || grid_n % 2 != 0 {
            return Err(FrozenError::InvalidArgument(format!(
                "grid N = {grid_n} must be even and >= 16"
            )));
        }
        Ok(Self { k_terms, n_trunc, grid_n })
    }

    /// `K = N_trunc = M` on a grid of 1024.
    pub fn for_spectrum(m: usize) -> Self {
        Self { k_terms: m.max(1), n_trunc: m.max(1), grid_n: 1024 }
    }
}

/// Residuals attached to every reconstruction.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    /// Largest `|b_K|` among the recovered kernels; small values mean the sine series has settled.
    pub tail_coefficient: f64,
    pub degeneration_residual: Option<f64>,
    pub symmetry_residual: Option<f64>,
    pub growth_violation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub potential: Potential,
    pub diagnostics: Diagnostics,
}

/// Periodic (`γ = 1`) and antiperiodic (`γ = −1`) spectra sharing one frozen point.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSpectra {
    spec0: Spectrum,
    spec1: Spectrum,
}

impl TwoSpectra {
    pub fn new(spec0: Spectrum, spec1: Spectrum) -> Result<Self> {
        if spec0.config().degenerate_sign() != Some(1.0) {
            return Err(FrozenError::InvalidArgument("first spectrum must be periodic (gamma = 1)".into()));
        }
        if spec1.config().degenerate_sign() != Some(-1.0) {
            return Err(FrozenError::InvalidArgument(
                "second spectrum must be antiperiodic (gamma = -1)".into(),
            ));
        }
        if spec0.config().a() != spec1.config().a() {
            return Err(FrozenError::InvalidArgument(format!(
                "frozen points differ: {} vs {}",
                spec0.config().a(),
                spec1.config().a()
            )));
        }
        Ok(Self { spec0, spec1 })
    }

    pub fn spec0(&self) -> &Spectrum {
        &self.spec0
    }

    pub fn spec1(&self) -> &Spectrum {
        &self.spec1
    }

    pub fn a(&self) -> f64 {
        self.spec0.config().a()
    }

    /// Recovered `(w_0, w_1)`.
    pub fn recover(&self, opts: &InverseOptions) -> Result<(SineSeries, SineSeries)> {
        let n0 = opts.n_trunc.min(self.spec0.len());
        let n1 = opts.n_trunc.min(self.spec1.len());
        Ok((recover_w(&self.spec0, opts.k_terms, n0)?, recover_w(&self.spec1, opts.k_terms, n1)?))
    }
}

/// Largest `|λ_{2k−1} − λ⁰_{2k−1}| / (1 + 4k²π²)` over the stored odd indices.
pub fn degeneration_residual(spec: &Spectrum) -> f64 {
    spec.values()
        .iter()
        .enumerate()
        .skip(1)
        .step_by(2)
        .map(|(n, &lam)| {
            let k = ((n + 1) / 2) as f64;
            (lam - spec.reference_lambda(n)).norm() / (1.0 + 4.0 * k * k * PI * PI)
        })
        .fold(0.0, f64::max)
}

/// Whether the odd-indexed eigenvalues sit on their reference values.
pub fn check_degeneration(spec: &Spectrum) -> bool {
    degeneration_residual(spec) <= DEGENERATION_TOLERANCE
}

pub(crate) fn require_degenerate(spec: &Spectrum) -> Result<f64> {
    let residual = degeneration_residual(spec);
    if residual > DEGENERATION_TOLERANCE {
        return Err(FrozenError::InconsistentSpectrum(format!(
            "odd-indexed eigenvalues miss their reference values (relative residual {residual:.3e})"
        )));
    }
    Ok(residual)
}

pub(crate) fn add_series(a: &SineSeries, b: &SineSeries, scale: f64) -> Result<SineSeries> {
    let k = a.len().max(b.len());
    let get = |s: &SineSeries, i: usize| s.coeffs().get(i).copied().unwrap_or_default();
    SineSeries::new((0..k).map(|i| scale * (get(a, i) + get(b, i))).collect())
}

pub(crate) fn sample_series(s: &SineSeries, n: usize) -> Vec<Complex64> {
    (0..=n).map(|j| s.eval(j as f64 / n as f64)).collect()
}
