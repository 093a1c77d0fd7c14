use num_complex::Complex64;

use super::{
    add_series, operator::OperatorSpec, require_degenerate, sample_series, Diagnostics,
    InverseOptions, Reconstruction, TwoSpectra, GROWTH_TOLERANCE,
};
use crate::error::{FrozenError, Result};
use crate::spectral_core::{node_index, Potential};

/// Sup of `|w_0 + w_1|` over the open nodes of `(1 − a, 1)` against the tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthReport {
    pub max_violation: f64,
    /// `GROWTH_TOLERANCE · ‖w_0 + w_1‖_∞`.
    pub threshold: f64,
    pub pass: bool,
}

/// Potential from the two spectra when `a ∈ {0, 1}`.
pub fn algorithm3(two: &TwoSpectra, opts: &InverseOptions) -> Result<Reconstruction> {
    let a = two.a();
    if a != 0.0 && a != 1.0 {
        return Err(FrozenError::InvalidArgument(format!(
            "algorithm3 needs a = 0 or a = 1, got {a}"
        )));
    }
    let d0 = require_degenerate(two.spec0())?;
    let d1 = require_degenerate(two.spec1())?;
    let (w0, w1) = two.recover(opts)?;
    let q = add_series(&w0, &w1, 0.5)?.sample(opts.grid_n)?;
    let potential = if a == 1.0 { q.reversed() } else { q };
    Ok(Reconstruction {
        potential,
        diagnostics: Diagnostics {
            tail_coefficient: w0.tail_magnitude().max(w1.tail_magnitude()),
            degeneration_residual: Some(d0.max(d1)),
            ..Default::default()
        },
    })
}

fn growth_of(sum: &[Complex64], n: usize, ia: usize) -> GrowthReport {
    let norm = sum.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let max_violation = sum[n - ia + 1..n].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let threshold = GROWTH_TOLERANCE * norm;
    GrowthReport { max_violation, threshold, pass: max_violation <= threshold }
}

/// Checks that the recovered `w_0 + w_1` vanishes on `(1 − a, 1)`.
pub fn check_growth(two: &TwoSpectra, opts: &InverseOptions) -> Result<GrowthReport> {
    let n = opts.grid_n;
    let ia = node_index(two.a(), n)?;
    if ia == 0 {
        return Ok(GrowthReport { max_violation: 0.0, threshold: 0.0, pass: true });
    }
    let (w0, w1) = two.recover(opts)?;
    let sum = sample_series(&add_series(&w0, &w1, 1.0)?, n);
    Ok(growth_of(&sum, n, ia))
}

/// Potential from the two spectra for `a ∈ (0, 1/2]`, with `P` linking
/// `q(a − x)` to `q(a + x)` on `(0, a)`.
pub fn algorithm4(two: &TwoSpectra, p_op: &OperatorSpec, opts: &InverseOptions) -> Result<Reconstruction> {
    let n = opts.grid_n;
    let a = two.a();
    let ia = node_index(a, n)?;
    if ia == 0 || 2 * ia > n {
        return Err(FrozenError::InvalidArgument(format!(
            "algorithm4 needs a in (0, 1/2], got {a}; reflect the problem for a > 1/2"
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    p_op.validate(one)?;
    let d0 = require_degenerate(two.spec0())?;
    let d1 = require_degenerate(two.spec1())?;
    let (w0, w1) = two.recover(opts)?;
    let s0 = sample_series(&w0, n);
    let s1 = sample_series(&w1, n);
    let sum: Vec<Complex64> = s0.iter().zip(&s1).map(|(x, y)| x + y).collect();
    let growth = growth_of(&sum, n, ia);
    if !growth.pass {
        return Err(FrozenError::GrowthViolated { violation: growth.max_violation });
    }

    let v = p_op.apply_resolvent(&s0[..=ia], one)?;
    let mut left = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut right = left.clone();
    for j in 0..=ia {
        left[ia - j] = v[j];
        right[ia - j] = v[j];
        left[ia + j] = s0[j] - v[j];
        right[ia + j] = s0[j] - v[j];
    }
    left[ia] = v[0];
    right[ia] = s0[0] - v[0];
    for k in 2 * ia..=n {
        right[k] = 0.5 * sum[k - ia];
        if k > 2 * ia {
            left[k] = right[k];
        }
    }
    if 2 * ia == n {
        right[n] = left[n];
    }
    Ok(Reconstruction {
        potential: Potential::from_sides(left, right)?,
        diagnostics: Diagnostics {
            tail_coefficient: w0.tail_magnitude().max(w1.tail_magnitude()),
            degeneration_residual: Some(d0.max(d1)),
            symmetry_residual: None,
            growth_violation: Some(growth.max_violation),
        },
    })
}
