//! Problem parameters and scalar kernels shared by every solver.
//!
//! The boundary value problem is `−y″ + q(x) y(a) = λ y`, `y^(ν)(0) = γ y^(ν)(1)`,
//! with spectral parameter `λ = ρ²`. Everything here is a pure function.

mod potential;
mod spectrum;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{FrozenError, Result};

pub use potential::{node_index, Potential, SNAP_TOLERANCE};
pub use spectrum::Spectrum;

/// Below this `|ρ|` the quotient `sin(ρx)/ρ` is replaced by its Taylor series.
pub const PHI_SERIES_RADIUS: f64 = 1e-3;

/// Tolerance for recognising the periodic (`γ = 1`) and antiperiodic (`γ = −1`) cases.
pub const DEGENERATE_TOLERANCE: f64 = 1e-14;

/// Frozen point `a ∈ [0, 1]` and boundary coupling `γ ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrozenConfig {
    a: f64,
    gamma: Complex64,
}

impl FrozenConfig {
    pub fn new(a: f64, gamma: Complex64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) {
            return Err(FrozenError::InvalidConfig(format!("a = {a} outside [0, 1]")));
        }
        if gamma == Complex64::new(0.0, 0.0) || !gamma.re.is_finite() || !gamma.im.is_finite() {
            return Err(FrozenError::InvalidConfig(format!("gamma = {gamma} must be finite and nonzero")));
        }
        Ok(Self { a, gamma })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    pub fn alpha(&self) -> AlphaParam {
        compute_alpha(self.gamma).expect("gamma validated at construction")
    }

    /// `Some(±1.0)` in the periodic / antiperiodic case.
    pub fn degenerate_sign(&self) -> Option<f64> {
        degenerate_sign(self.gamma)
    }

    pub fn with_gamma(&self, gamma: Complex64) -> Result<Self> {
        Self::new(self.a, gamma)
    }

    pub fn with_a(&self, a: f64) -> Result<Self> {
        Self::new(a, self.gamma)
    }
}

pub fn degenerate_sign(gamma: Complex64) -> Option<f64> {
    if (gamma - 1.0).norm() <= DEGENERATE_TOLERANCE {
        Some(1.0)
    } else if (gamma + 1.0).norm() <= DEGENERATE_TOLERANCE {
        Some(-1.0)
    } else {
        None
    }
}

/// `α = arccos((1+γ²)/(2γ)) / π`, normalised into the region
/// `{Re α ∈ [0,1], Im α ≥ 0} ∪ {Re α ∈ (0,1), Im α < 0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaParam {
    value: Complex64,
}

impl AlphaParam {
    pub fn value(&self) -> Complex64 {
        self.value
    }

    /// Whether `α` is (numerically) an integer, i.e. `γ = ±1`.
    pub fn is_integer(&self) -> bool {
        self.value.im.abs() < 1e-14 && (self.value.re - self.value.re.round()).abs() < 1e-14
    }

    fn in_region(value: Complex64) -> bool {
        let (re, im) = (value.re, value.im);
        if im >= 0.0 {
            (0.0..=1.0).contains(&re)
        } else {
            re > 0.0 && re < 1.0
        }
    }

    /// Snaps roundoff near the region boundary so the region test is decisive.
    fn tidy(value: Complex64) -> Complex64 {
        let mut re = value.re;
        let mut im = value.im;
        for edge in [0.0, 1.0, 2.0, -1.0] {
            if (re - edge).abs() < 1e-12 {
                re = edge;
            }
        }
        if im.abs() < 1e-14 {
            im = 0.0;
        }
        Complex64::new(re, im)
    }
}

pub fn compute_alpha(gamma: Complex64) -> Result<AlphaParam> {
    if gamma == Complex64::new(0.0, 0.0) {
        return Err(FrozenError::InvalidConfig("gamma must be nonzero".into()));
    }
    let z = (1.0 + gamma * gamma) / (2.0 * gamma);
    let i = Complex64::i();
    let acos = -i * (z + i * (1.0 - z * z).sqrt()).ln();
    let base = acos / PI;
    let candidates = [base, -base, 2.0 - base, base + 2.0, base - 2.0, -base - 2.0];
    candidates
        .iter()
        .map(|&c| AlphaParam::tidy(c))
        .find(|&c| AlphaParam::in_region(c))
        .map(|value| AlphaParam { value })
        .ok_or_else(|| FrozenError::InvalidConfig(format!("no branch of arccos for gamma = {gamma}")))
}

/// `ρ⁰_n`: `(2k+α)π` for `n = 2k`, `(2k−α)π` for `n = 2k−1`.
pub fn reference_rho(n: usize, alpha: AlphaParam) -> Complex64 {
    let a = alpha.value;
    if n % 2 == 0 {
        (n as f64 + a) * PI
    } else {
        (n as f64 + 1.0 - a) * PI
    }
}

/// `λ⁰_n = (ρ⁰_n)²`.
pub fn reference_lambda(n: usize, alpha: AlphaParam) -> Complex64 {
    let r = reference_rho(n, alpha);
    r * r
}

/// Unperturbed characteristic function `Δ₀(λ) = 1 + γ² − 2γ cos √λ`.
pub fn delta0(lambda: Complex64, gamma: Complex64) -> Complex64 {
    1.0 + gamma * gamma - 2.0 * gamma * lambda.sqrt().cos()
}

/// `Δ₀` in the factored form `4γ sin((ρ+πα)/2) sin((ρ−πα)/2)`, accurate near its zeros.
pub fn delta0_factored(rho: Complex64, gamma: Complex64, alpha: AlphaParam) -> Complex64 {
    let pa = PI * alpha.value;
    4.0 * gamma * ((rho + pa) * 0.5).sin() * ((rho - pa) * 0.5).sin()
}

/// `sin(ρx)/ρ`, switching to `x − ρ²x³/6 + ρ⁴x⁵/120` for `|ρ| < 1e-3`.
pub fn phi(rho: Complex64, x: f64) -> Complex64 {
    if rho.norm() < PHI_SERIES_RADIUS {
        let r2 = rho * rho;
        let x2 = x * x;
        x * (1.0 - r2 * x2 / 6.0 + r2 * r2 * x2 * x2 / 120.0)
    } else {
        (rho * x).sin() / rho
    }
}

/// Reduction to `a = 0`: `q_a(x) = q(x+a)` on `(0,1−a)`, `q(x+a−1)/γ` on `(1−a,1)`.
pub fn shift_to_zero(q: &Potential, config: &FrozenConfig) -> Result<Potential> {
    let n = q.n();
    let ia = q.node_of(config.a())?;
    if ia == 0 {
        return Ok(q.clone());
    }
    let inv = 1.0 / config.gamma();
    let cut = n - ia;
    let mut left = Vec::with_capacity(n + 1);
    let mut right = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let (l, r) = if j < cut {
            (q.left(j + ia), q.right(j + ia))
        } else if j == cut {
            (q.left(n), q.right(0) * inv)
        } else {
            let k = j + ia - n;
            (q.left(k) * inv, q.right(k) * inv)
        };
        left.push(l);
        right.push(r);
    }
    close_ends(&mut left, &mut right);
    Potential::from_sides(left, right)
}

/// Inverse of [`shift_to_zero`]: `q(x) = γ q_a(x−a+1)` on `(0,a)`, `q_a(x−a)` on `(a,1)`.
pub fn unshift(qa: &Potential, config: &FrozenConfig) -> Result<Potential> {
    let n = qa.n();
    let ia = qa.node_of(config.a())?;
    if ia == 0 {
        return Ok(qa.clone());
    }
    let g = config.gamma();
    let mut left = Vec::with_capacity(n + 1);
    let mut right = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let (l, r) = if j < ia {
            let k = j + n - ia;
            (qa.left(k) * g, qa.right(k) * g)
        } else if j == ia {
            (qa.left(n) * g, qa.right(0))
        } else {
            (qa.left(j - ia), qa.right(j - ia))
        };
        left.push(l);
        right.push(r);
    }
    close_ends(&mut left, &mut right);
    Potential::from_sides(left, right)
}

/// Endpoint nodes only have one meaningful side.
fn close_ends(left: &mut [Complex64], right: &mut [Complex64]) {
    left[0] = right[0];
    let n = right.len() - 1;
    right[n] = left[n];
}

/// `(q(1−x), 1−a, 1/γ)`, a problem with the same spectrum.
pub fn reflect_problem(q: &Potential, config: &FrozenConfig) -> Result<(Potential, FrozenConfig)> {
    let reflected = FrozenConfig::new(1.0 - config.a(), 1.0 / config.gamma())?;
    Ok((q.reversed(), reflected))
}
