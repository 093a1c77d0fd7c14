use num_complex::Complex64;

use super::{algorithm2, algorithm4, operator::OperatorSpec, InverseOptions, Reconstruction, TwoSpectra};
use crate::error::Result;
use crate::spectral_core::Spectrum;

/// Potentials sharing one periodic or antiperiodic spectrum, one per choice of
/// `q_a(1/2 − x) = p(x)` on `(0, 1/2)`.
///
/// Each `p` is sampled at `x_j = j/N`, `j = 0..=N/2`.
pub fn isospectral_family(
    spec: &Spectrum,
    p_list: &[Vec<Complex64>],
    opts: &InverseOptions,
) -> Result<Vec<Reconstruction>> {
    p_list
        .iter()
        .map(|p| algorithm2(spec, &OperatorSpec::constant(p.clone(), 0.5)?, opts))
        .collect()
}

/// Potentials sharing both spectra, one per choice of `q(a − x) = p(x)` on `(0, a)`.
///
/// Each `p` is sampled at `x_j = j/N`, `j = 0..=a·N`.
pub fn isobispectral_family(
    two: &TwoSpectra,
    p_list: &[Vec<Complex64>],
    opts: &InverseOptions,
) -> Result<Vec<Reconstruction>> {
    p_list
        .iter()
        .map(|p| algorithm4(two, &OperatorSpec::constant(p.clone(), two.a())?, opts))
        .collect()
}
