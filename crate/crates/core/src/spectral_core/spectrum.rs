use num_complex::Complex64;

use super::{reference_lambda, reference_rho, AlphaParam, FrozenConfig};

/// Eigenvalues `λ_0, λ_1, ...` listed with multiplicity.
///
/// Index `2k` pairs with the reference value `((2k+α)π)²`, index `2k−1`
/// with `((2k−α)π)²`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<Complex64>,
    config: FrozenConfig,
    alpha: AlphaParam,
}

impl Spectrum {
    pub fn new(values: Vec<Complex64>, config: FrozenConfig) -> Self {
        let alpha = config.alpha();
        Self { values, config, alpha }
    }

    /// The eigenvalues of the unperturbed problem (`q = 0`).
    pub fn reference(m: usize, config: FrozenConfig) -> Self {
        let alpha = config.alpha();
        let values = (0..m).map(|n| reference_lambda(n, alpha)).collect();
        Self { values, config, alpha }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn config(&self) -> &FrozenConfig {
        &self.config
    }

    pub fn gamma(&self) -> Complex64 {
        self.config.gamma()
    }

    pub fn alpha(&self) -> AlphaParam {
        self.alpha
    }

    pub fn reference_lambda(&self, n: usize) -> Complex64 {
        reference_lambda(n, self.alpha)
    }

    pub fn reference_rho(&self, n: usize) -> Complex64 {
        reference_rho(n, self.alpha)
    }

    /// The same eigenvalues attached to a different configuration.
    pub fn with_config(&self, config: FrozenConfig) -> Self {
        Self::new(self.values.clone(), config)
    }

    /// Keeps the first `m` eigenvalues.
    pub fn truncated(&self, m: usize) -> Self {
        Self::new(self.values[..m.min(self.len())].to_vec(), self.config)
    }

    /// Replaces one eigenvalue.
    pub fn with_value(&self, n: usize, value: Complex64) -> Self {
        let mut values = self.values.clone();
        values[n] = value;
        Self::new(values, self.config)
    }
}
