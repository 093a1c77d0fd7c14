//! `Δ` rebuilt from eigenvalues, and the sine coefficients of `w` read off it.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{FrozenError, Result};
use crate::forward::SineSeries;
use crate::spectral_core::{delta0, phi, reference_lambda, AlphaParam, Spectrum};

/// Order of the moment expansion used far from all included zeros.
const MOMENTS: usize = 48;
/// `|λ| ≥ FAR_FIELD · Λ` switches to the moment expansion.
const FAR_FIELD: f64 = 4.0;
const CIRCLE_POINTS: usize = 32;
/// Relative distance under which `λ` counts as sitting on a zero.
const COINCIDENCE: f64 = 1e-13;

/// Truncated ratio product `Δ₀(λ) ∏_{n<N} (λ_n − λ)/(λ⁰_n − λ)`.
///
/// Entries with `λ_n = λ⁰_n` contribute a factor of one and are dropped. For
/// `γ = 1` the `n = 0` factor is kept apart: `λ⁰_0 = 0` is also a zero of
/// `Δ₀`, and `Δ₀(λ)/λ = (2 sin(ρ/2)/ρ)²` is entire.
#[derive(Debug, Clone)]
pub struct ProductCharFn {
    gamma: Complex64,
    alpha: AlphaParam,
    degenerate: bool,
    n_trunc: usize,
    /// `(n, λ_n, λ⁰_n)` for every included, non-trivial factor.
    factors: Vec<(usize, Complex64, Complex64)>,
    /// `κ_0` when the periodic `n = 0` factor is split off.
    periodic_head: Option<Complex64>,
    /// Indices whose stored value coincides with its reference value.
    exact: Vec<usize>,
    radius: f64,
    moments: Vec<Complex64>,
}

impl ProductCharFn {
    pub fn new(spec: &Spectrum, n_trunc: usize) -> Result<Self> {
        if n_trunc == 0 || n_trunc > spec.len() {
            return Err(FrozenError::InvalidArgument(format!(
                "n_trunc = {n_trunc} must lie in 1..={}",
                spec.len()
            )));
        }
        let gamma = spec.gamma();
        let alpha = spec.alpha();
        let periodic = spec.config().degenerate_sign() == Some(1.0);
        let mut factors = Vec::new();
        let mut exact = Vec::new();
        let mut periodic_head = None;
        for (n, &lam) in spec.values().iter().enumerate() {
            let lam0 = spec.reference_lambda(n);
            if lam == lam0 {
                exact.push(n);
                continue;
            }
            if n >= n_trunc {
                continue;
            }
            if periodic && n == 0 {
                periodic_head = Some(lam - lam0);
            } else {
                factors.push((n, lam, lam0));
            }
        }
        let radius = factors
            .iter()
            .map(|&(_, l, l0)| l.norm().max(l0.norm()))
            .fold(0.0, f64::max);
        let moments = if radius > 0.0 { moments(&factors, radius) } else { Vec::new() };
        Ok(Self {
            gamma,
            alpha,
            degenerate: spec.config().degenerate_sign().is_some(),
            n_trunc,
            factors,
            periodic_head,
            exact,
            radius,
            moments,
        })
    }

    pub fn eval(&self, lambda: Complex64) -> Result<Complex64> {
        Ok(delta0(lambda, self.gamma) - self.deficit(lambda)?)
    }

    /// `Δ₀(λ) − Δ(λ)`, computed without forming the difference of two nearly equal values.
    pub fn deficit(&self, lambda: Complex64) -> Result<Complex64> {
        let tol = COINCIDENCE * (1.0 + lambda.norm());
        let on_zero = reference_indices_near(lambda, self.alpha, tol);
        if !on_zero.is_empty() {
            // an exactly known eigenvalue here forces Δ(λ) = 0
            let explained = on_zero
                .iter()
                .any(|&n| self.exact.contains(&n) || (self.degenerate && n % 2 == 1));
            if explained {
                return Ok(delta0(lambda, self.gamma));
            }
            if let Some(&n) = on_zero.iter().find(|&&n| n >= self.n_trunc) {
                if on_zero.iter().all(|&m| m >= self.n_trunc) {
                    return Err(FrozenError::PoleInTail { index: n });
                }
            }
        }
        let r = self.circle_radius(lambda);
        let near_pole = self.factors.iter().any(|&(_, _, l0)| (l0 - lambda).norm() < r);
        if near_pole {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..CIRCLE_POINTS {
                let t = 2.0 * PI * j as f64 / CIRCLE_POINTS as f64;
                acc += self.deficit_direct(lambda + r * Complex64::from_polar(1.0, t));
            }
            return Ok(acc / CIRCLE_POINTS as f64);
        }
        Ok(self.deficit_direct(lambda))
    }

    fn circle_radius(&self, lambda: Complex64) -> f64 {
        let base = 1e-6 * (1.0 + lambda.norm());
        let others = reference_candidates(lambda, self.alpha)
            .into_iter()
            .map(|n| (reference_lambda(n, self.alpha) - lambda).norm())
            .filter(|&d| d > 2.0 * base)
            .fold(f64::INFINITY, f64::min);
        base.min(0.25 * others)
    }

    fn deficit_direct(&self, lambda: Complex64) -> Complex64 {
        let log_sum = self.log_ratio(lambda);
        let d0 = delta0(lambda, self.gamma);
        let mut deficit = -d0 * expm1(log_sum);
        if let Some(kappa0) = self.periodic_head {
            // Δ₀·(λ_0 − λ)/(−λ) = Δ₀ − (Δ₀/λ)·κ_0 with Δ₀/λ = (2 sin(ρ/2)/ρ)²
            let s = 2.0 * phi(lambda.sqrt(), 0.5);
            deficit += s * s * kappa0 * log_sum.exp();
        }
        deficit
    }

    /// `Σ log((λ_n − λ)/(λ⁰_n − λ))` over the included factors.
    fn log_ratio(&self, lambda: Complex64) -> Complex64 {
        if self.factors.is_empty() {
            return Complex64::new(0.0, 0.0);
        }
        if lambda.norm() >= FAR_FIELD * self.radius {
            let z = self.radius / lambda;
            let mut zm = Complex64::new(1.0, 0.0);
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, q) in self.moments.iter().enumerate() {
                zm *= z;
                acc -= q * zm / (m + 1) as f64;
            }
            return acc;
        }
        self.factors
            .iter()
            .map(|&(_, l, l0)| log1p((l - l0) / (l0 - lambda)))
            .sum()
    }

    pub fn n_trunc(&self) -> usize {
        self.n_trunc
    }
}

/// `Q_m = Σ (t^m − s^m)` for `t = λ_n/Λ`, `s = λ⁰_n/Λ`, by `d_{m+1} = t d_m + s^m (t − s)`.
fn moments(factors: &[(usize, Complex64, Complex64)], radius: f64) -> Vec<Complex64> {
    let mut q = vec![Complex64::new(0.0, 0.0); MOMENTS];
    for &(_, l, l0) in factors {
        let (t, s) = (l / radius, l0 / radius);
        let diff = t - s;
        let mut d = diff;
        let mut sm = s;
        for slot in q.iter_mut() {
            *slot += d;
            d = t * d + sm * diff;
            sm *= s;
        }
    }
    q
}

fn log1p(u: Complex64) -> Complex64 {
    let re = 0.5 * (2.0 * u.re + u.norm_sqr()).ln_1p();
    Complex64::new(re, u.im.atan2(1.0 + u.re))
}

fn expm1(z: Complex64) -> Complex64 {
    let half = (0.5 * z.im).sin();
    Complex64::new(z.re.exp_m1() * z.im.cos() - 2.0 * half * half, z.re.exp() * z.im.sin())
}

/// Reference indices whose zeros lie within a few spacings of `λ`.
fn reference_candidates(lambda: Complex64, alpha: AlphaParam) -> Vec<usize> {
    let rho = lambda.sqrt();
    let a = alpha.value();
    let mut out = Vec::new();
    for r in [rho, -rho] {
        let x = r / PI;
        // even n: ρ⁰ = (n + α)π ; odd n: ρ⁰ = (n + 1 − α)π
        for guess in [(x - a).re, (x - 1.0 + a).re] {
            if !guess.is_finite() {
                continue;
            }
            let base = guess.round() as i64;
            for n in base - 2..=base + 2 {
                if n >= 0 && !out.contains(&(n as usize)) {
                    out.push(n as usize);
                }
            }
        }
    }
    out
}

/// Reference indices `n` with `|λ⁰_n − λ| ≤ tol`.
pub(crate) fn reference_indices_near(lambda: Complex64, alpha: AlphaParam, tol: f64) -> Vec<usize> {
    reference_candidates(lambda, alpha)
        .into_iter()
        .filter(|&n| (reference_lambda(n, alpha) - lambda).norm() <= tol)
        .collect()
}

/// `Δ(λ)` from the first `n_trunc` eigenvalues.
pub fn delta_from_spectrum(spec: &Spectrum, lambda: Complex64, n_trunc: usize) -> Result<Complex64> {
    ProductCharFn::new(spec, n_trunc)?.eval(lambda)
}

/// Sine coefficients `b_k = 2πk (Δ₀ − Δ)(π²k²)` of the kernel `w`.
pub fn recover_w(spec: &Spectrum, k_terms: usize, n_trunc: usize) -> Result<SineSeries> {
    let product = ProductCharFn::new(spec, n_trunc)?;
    recover_from(&product, k_terms)
}

pub(crate) fn recover_from(product: &ProductCharFn, k_terms: usize) -> Result<SineSeries> {
    if k_terms == 0 {
        return Err(FrozenError::InvalidArgument("k_terms must be positive".into()));
    }
    let coeffs = (1..=k_terms)
        .map(|k| {
            let rho = PI * k as f64;
            Ok(2.0 * rho * product.deficit(Complex64::new(rho * rho, 0.0))?)
        })
        .collect::<Result<Vec<_>>>()?;
    SineSeries::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_core::FrozenConfig;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn reference_spectrum_gives_delta0() {
        let config = FrozenConfig::new(0.0, c(2.0, 0.5)).unwrap();
        let spec = Spectrum::reference(20, config);
        for lam in [c(3.0, 1.0), c(-50.0, 0.0), c(400.0, 7.0)] {
            assert_eq!(delta_from_spectrum(&spec, lam, 20).unwrap(), delta0(lam, config.gamma()));
        }
        assert!(recover_w(&spec, 10, 20).unwrap().coeffs().iter().all(|b| b.norm() == 0.0));
    }

    #[test]
    fn periodic_zero_potential_product() {
        let config = FrozenConfig::new(0.0, c(1.0, 0.0)).unwrap();
        // stored as a generic list so that every factor is exercised
        let spec = Spectrum::reference(401, config);
        let lam = c(PI * PI, 0.0);
        let d = delta_from_spectrum(&spec, lam, 400).unwrap();
        assert!((d - 4.0).norm() < 1e-6);
    }

    #[test]
    fn pole_in_tail_is_reported() {
        let config = FrozenConfig::new(0.0, c(2.0, 0.0)).unwrap();
        let mut spec = Spectrum::reference(10, config);
        for n in 0..10 {
            spec = spec.with_value(n, spec.values()[n] + c(0.5, 0.1));
        }
        let tail = spec.reference_lambda(7);
        assert_eq!(
            delta_from_spectrum(&spec, tail, 4),
            Err(FrozenError::PoleInTail { index: 7 })
        );
        assert!(delta_from_spectrum(&spec, tail, 10).is_ok());
    }

    #[test]
    fn included_pole_is_removable() {
        let config = FrozenConfig::new(0.0, c(2.0, 0.0)).unwrap();
        let spec = Spectrum::reference(12, config).with_value(3, c(100.0, 2.0));
        let pole = spec.reference_lambda(3);
        let at = delta_from_spectrum(&spec, pole, 12).unwrap();
        let near = delta_from_spectrum(&spec, pole + c(1e-3, 1e-3), 12).unwrap();
        assert!((at - near).norm() < 1e-2 * (1.0 + at.norm()));
        // the only non-trivial factor: Δ₀(λ)(λ_3 − λ)/(λ⁰_3 − λ) has a finite limit
        let rho = pole.sqrt();
        let h = 1e-4;
        let derivative = (delta0((rho + h) * (rho + h), config.gamma())
            - delta0((rho - h) * (rho - h), config.gamma()))
            / (2.0 * h)
            / (2.0 * rho);
        let expected = -derivative * (spec.values()[3] - pole);
        assert!((at - expected).norm() < 1e-6 * (1.0 + expected.norm()));
    }

    #[test]
    fn far_field_matches_direct_sum() {
        let config = FrozenConfig::new(0.0, c(0.5, 0.5)).unwrap();
        let mut spec = Spectrum::reference(30, config);
        for n in 0..30 {
            let v = spec.values()[n] + c(0.7 / (1.0 + n as f64), -0.2);
            spec = spec.with_value(n, v);
        }
        let product = ProductCharFn::new(&spec, 30).unwrap();
        let lam = c(product.radius * 4.5, product.radius * 0.3);
        let far = product.log_ratio(lam);
        let direct: Complex64 = product
            .factors
            .iter()
            .map(|&(_, l, l0)| ((l - lam) / (l0 - lam)).ln())
            .sum();
        assert!((far - direct).norm() < 1e-13);
    }

    #[test]
    fn complex_helpers() {
        for z in [c(1e-9, 2e-9), c(0.3, -0.4), c(-0.2, 1.5)] {
            assert!((expm1(z) - (z.exp() - 1.0)).norm() < 1e-15 * (1.0 + z.norm()) + 1e-24);
            assert!((log1p(z) - (1.0 + z).ln()).norm() < 1e-15);
        }
        assert!((expm1(c(1e-12, 0.0)).re - (1e-12 + 5e-25)).abs() < 1e-27);
    }
}
