use num_complex::Complex64;

use super::{
    operator::OperatorSpec, recover_w, require_degenerate, sample_series, Diagnostics,
    InverseOptions, Reconstruction, SYMMETRY_TOLERANCE,
};
use crate::error::{FrozenError, Result};
use crate::spectral_core::{unshift, Potential, Spectrum};

/// Potential from a single non-degenerate spectrum (`γ ≠ ±1`).
pub fn algorithm1(spec: &Spectrum, opts: &InverseOptions) -> Result<Reconstruction> {
    let config = *spec.config();
    if config.degenerate_sign().is_some() {
        return Err(FrozenError::DegenerateCase);
    }
    let g = config.gamma();
    let w = recover_w(spec, opts.k_terms, opts.n_trunc.min(spec.len()))?;
    let samples = sample_series(&w, opts.grid_n);
    let n = opts.grid_n;
    let det = g * g * g - g;
    let qa = Potential::from_samples((0..=n).map(|j| (g * samples[j] - samples[n - j]) / det).collect())?;
    Ok(Reconstruction {
        potential: unshift(&qa, &config)?,
        diagnostics: Diagnostics { tail_coefficient: w.tail_magnitude(), ..Default::default() },
    })
}

/// Potential from a periodic or antiperiodic spectrum plus the operator `K`
/// linking `q_a(1/2 − x)` to `q_a(1/2 + x)`.
pub fn algorithm2(spec: &Spectrum, k_op: &OperatorSpec, opts: &InverseOptions) -> Result<Reconstruction> {
    let config = *spec.config();
    let Some(sign) = config.degenerate_sign() else {
        return Err(FrozenError::InvalidConfig("algorithm2 needs gamma = 1 or gamma = -1".into()));
    };
    let g = Complex64::new(sign, 0.0);
    let degeneration = require_degenerate(spec)?;
    k_op.validate(g)?;

    let w = recover_w(spec, opts.k_terms, opts.n_trunc.min(spec.len()))?;
    let n = opts.grid_n;
    let samples = sample_series(&w, n);
    let w_sup = samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let symmetry = (0..=n)
        .map(|j| (samples[j] - g * samples[n - j]).norm())
        .fold(0.0, f64::max);
    if symmetry > SYMMETRY_TOLERANCE * (1.0 + w_sup) {
        return Err(FrozenError::InconsistentSpectrum(format!(
            "recovered kernel violates w(x) = gamma w(1-x) by {symmetry:.3e}"
        )));
    }

    let half = n / 2;
    // u(x_j) = γ w(1/2 − x_j) on the sub-grid of (0, 1/2)
    let u: Vec<Complex64> = (0..=half).map(|j| g * samples[half - j]).collect();
    let v = k_op.apply_resolvent(&u, g)?;
    let mut left = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut right = left.clone();
    for j in 0..=half {
        let below = v[j];
        let above = u[j] - g * v[j];
        left[half - j] = below;
        right[half - j] = below;
        left[half + j] = above;
        right[half + j] = above;
    }
    left[half] = v[0];
    right[half] = u[0] - g * v[0];
    let qa = Potential::from_sides(left, right)?;
    Ok(Reconstruction {
        potential: unshift(&qa, &config)?,
        diagnostics: Diagnostics {
            tail_coefficient: w.tail_magnitude(),
            degeneration_residual: Some(degeneration),
            symmetry_residual: Some(symmetry),
            growth_violation: None,
        },
    })
}
