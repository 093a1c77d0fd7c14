//! Forward problem: the main-equation kernel `w`, the characteristic function
//! `Δ(λ)` by the determinant route and by its integral representation, and
//! eigenvalue location.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{FrozenError, Result};
use crate::inverse::product::ProductCharFn;
use crate::spectral_core::{
    delta0, phi, reference_lambda, reference_rho, reflect_problem, FrozenConfig, Potential,
    Spectrum,
};

const NEWTON_MAX_ITER: usize = 50;
const NEWTON_RESIDUAL_TOL: f64 = 1e-11;
const NEWTON_STEP_TOL: f64 = 1e-14;
/// Roots closer than this in the ρ-plane are treated as a collision.
const COLLISION_RADIUS: f64 = 1e-4;
/// Below this `|ρ⁰|` Newton runs in the λ-plane, where the root is simple.
const LAMBDA_PLANE_RADIUS: f64 = 1.0;
/// Phase recurrences are re-seeded with a direct exponential this often.
const PHASE_RESEED: usize = 64;

/// Finite sine expansion `w(x) = Σ_{k=1}^{K} b_k sin(πkx)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SineSeries {
    coeffs: Vec<Complex64>,
}

impl SineSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(FrozenError::InvalidArgument("sine series needs K >= 1".into()));
        }
        if coeffs.iter().any(|b| !b.re.is_finite() || !b.im.is_finite()) {
            return Err(FrozenError::InvalidArgument("non-finite sine coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    /// `b_1, ..., b_K`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `|b_K|`, a cheap indicator of how well the truncation has converged.
    pub fn tail_magnitude(&self) -> f64 {
        self.coeffs.last().map_or(0.0, |b| b.norm())
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &b)| b * (PI * (i + 1) as f64 * x).sin())
            .sum()
    }

    pub fn sample(&self, n: usize) -> Result<Potential> {
        Potential::from_fn(n, |x| self.eval(x))
    }

    /// `‖w‖²_{L₂(0,1)} = ½ Σ |b_k|²`.
    pub fn l2_norm_sqr(&self) -> f64 {
        0.5 * self.coeffs.iter().map(|b| b.norm_sqr()).sum::<f64>()
    }

    /// `∫₀¹ w(x) sin(ρx)/ρ dx` from the closed form of each term.
    pub fn sine_transform(&self, rho: Complex64) -> Complex64 {
        // the integral is even in ρ
        let rho = if rho.re < 0.0 { -rho } else { rho };
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &b)| b * sine_term(i + 1, rho))
            .sum()
    }
}

/// `∫₀¹ sin(πkx) sin(ρx)/ρ dx = (−1)^{k+1} πk sin ρ / (ρ (π²k² − ρ²))`, for `Re ρ ≥ 0`.
fn sine_term(k: usize, rho: Complex64) -> Complex64 {
    let pk = PI * k as f64;
    let delta = pk - rho;
    if delta.norm() < 0.5 {
        // sin ρ = (−1)^{k+1} sin δ, so the sign cancels and sin δ/δ is regular
        pk * sinc(delta) / (rho * (pk + rho))
    } else {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        sign * pk * phi(rho, 1.0) / ((pk - rho) * (pk + rho))
    }
}

fn sinc(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        let z2 = z * z;
        1.0 - z2 / 6.0 + z2 * z2 / 120.0
    } else {
        z.sin() / z
    }
}

/// Which representation of `w` feeds the integral form of `Δ`.
#[derive(Debug, Clone)]
pub enum CharForm {
    Grid(Potential),
    Sine(SineSeries),
    /// Product over the first `n_trunc` eigenvalues of a spectrum.
    Product { spectrum: Spectrum, n_trunc: usize },
}

/// The characteristic function `Δ(λ)` with convention `λ = ρ²`.
#[derive(Debug, Clone)]
pub struct CharFn {
    gamma: Complex64,
    form: CharForm,
}

impl CharFn {
    pub fn integral(w: Potential, gamma: Complex64) -> Self {
        Self { gamma, form: CharForm::Grid(w) }
    }

    pub fn sine(w: SineSeries, gamma: Complex64) -> Self {
        Self { gamma, form: CharForm::Sine(w) }
    }

    pub fn product(spectrum: Spectrum, n_trunc: usize) -> Self {
        Self { gamma: spectrum.gamma(), form: CharForm::Product { spectrum, n_trunc } }
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    pub fn form(&self) -> &CharForm {
        &self.form
    }

    pub fn eval(&self, lambda: Complex64) -> Result<Complex64> {
        match &self.form {
            CharForm::Grid(w) => Ok(eval_delta_fundrep(lambda, w, self.gamma)),
            CharForm::Sine(s) => Ok(eval_delta_sine(lambda, s, self.gamma)),
            CharForm::Product { spectrum, n_trunc } => {
                ProductCharFn::new(spectrum, *n_trunc)?.eval(lambda)
            }
        }
    }
}

/// `C, C′, S, S′` of the frozen-argument equation at one point, and `W = C S′ − C′ S`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalSolutions {
    pub c: Complex64,
    pub c_prime: Complex64,
    pub s: Complex64,
    pub s_prime: Complex64,
    pub w: Complex64,
}

/// `(∫ q(t) sin ρ(x−t)/ρ dt, ∫ q(t) cos ρ(x−t) dt)` between two grid nodes.
///
/// For `|ρ| ≥ 1` the phases `e^{±iρ(x−t_j)}` are advanced by a recurrence and
/// re-seeded every [`PHASE_RESEED`] nodes; smaller `ρ` evaluates the kernels
/// directly so the division by `ρ` never amplifies cancellation.
pub(crate) fn trig_kernel(
    q: &Potential,
    from: usize,
    to: usize,
    rho: Complex64,
    x: f64,
) -> (Complex64, Complex64) {
    let mut isin = Complex64::new(0.0, 0.0);
    let mut icos = Complex64::new(0.0, 0.0);
    if from == to {
        return (isin, icos);
    }
    if rho.norm() < 1.0 {
        q.quadrature(from, to, |j, w, v| {
            let s = x - q.x(j);
            isin += w * v * phi(rho, s);
            icos += w * v * (rho * s).cos();
        });
        return (isin, icos);
    }
    let (lo, hi) = (from.min(to), from.max(to));
    let i = Complex64::i();
    let h = q.h();
    let step_fwd = (-i * rho * h).exp();
    let step_back = (i * rho * h).exp();
    let mut plus = Vec::with_capacity(hi - lo + 1);
    let mut minus = Vec::with_capacity(hi - lo + 1);
    let mut e = Complex64::new(0.0, 0.0);
    let mut f = Complex64::new(0.0, 0.0);
    for j in lo..=hi {
        if (j - lo) % PHASE_RESEED == 0 {
            let s = x - q.x(j);
            e = (i * rho * s).exp();
            f = (-i * rho * s).exp();
        } else {
            e *= step_fwd;
            f *= step_back;
        }
        plus.push(e);
        minus.push(f);
    }
    let half_i = 0.5 / i;
    q.quadrature(from, to, |j, w, v| {
        let (e, f) = (plus[j - lo], minus[j - lo]);
        isin += w * v * (e - f) * half_i;
        icos += w * v * (e + f) * 0.5;
    });
    (isin / rho, icos)
}

/// Kernel of the integral representation, built from `q` by the main equation.
///
/// `a > 1/2` is handled through the reflected problem `(q(1−x), 1−a, 1/γ)`,
/// whose characteristic function is `Δ/γ²`.
pub fn build_w(q: &Potential, config: &FrozenConfig) -> Result<Potential> {
    let n = q.n();
    let ia = q.node_of(config.a())?;
    if 2 * ia > n {
        let (qr, cr) = reflect_problem(q, config)?;
        let g2 = config.gamma() * config.gamma();
        return Ok(build_w(&qr, &cr)?.map(|z| z * g2));
    }
    let g = config.gamma();
    let g2 = g * g;
    // value of the branch valid on the interval just left (side = -1) or right (side = +1) of node j
    let branch_value = |interval_start: usize, j: usize, from_right: bool| -> Complex64 {
        // q(arg ± 0): arguments increasing in x take the same side, decreasing take the opposite
        let inc = |k: usize| if from_right { q.right(k) } else { q.left(k) };
        let dec = |k: usize| if from_right { q.left(k) } else { q.right(k) };
        if interval_start < ia {
            g2 * inc(ia + j) + dec(ia - j)
        } else if interval_start < n - ia {
            g * dec(ia + n - j) + g2 * inc(ia + j)
        } else {
            g * (dec(ia + n - j) + inc(j + ia - n))
        }
    };
    let mut left = Vec::with_capacity(n + 1);
    let mut right = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let r = if j < n { branch_value(j, j, true) } else { branch_value(j - 1, j, false) };
        let l = if j > 0 { branch_value(j - 1, j, false) } else { r };
        left.push(l);
        right.push(r);
    }
    Potential::from_sides(left, right)
}

/// Fundamental solutions at the grid node `x`.
pub fn fundamental_solutions(
    x: f64,
    lambda: Complex64,
    q: &Potential,
    config: &FrozenConfig,
) -> Result<FundamentalSolutions> {
    let ia = q.node_of(config.a())?;
    let ix = q.node_of(x)?;
    Ok(fundamental_at(q, ia, ix, lambda))
}

fn fundamental_at(q: &Potential, ia: usize, ix: usize, lambda: Complex64) -> FundamentalSolutions {
    let rho = lambda.sqrt();
    let x = q.x(ix);
    let s_arg = x - q.x(ia);
    let (iphi, icos) = trig_kernel(q, ia, ix, rho, x);
    let s = phi(rho, s_arg);
    let s_prime = (rho * s_arg).cos();
    let c = s_prime + iphi;
    let c_prime = -lambda * s + icos;
    FundamentalSolutions { c, c_prime, s, s_prime, w: c * s_prime - c_prime * s }
}

/// `Δ(λ)` as the 2×2 boundary determinant.
pub fn eval_delta_det(lambda: Complex64, q: &Potential, config: &FrozenConfig) -> Result<Complex64> {
    let ia = q.node_of(config.a())?;
    Ok(delta_det_at(q, ia, config.gamma(), lambda))
}

fn delta_det_at(q: &Potential, ia: usize, g: Complex64, lambda: Complex64) -> Complex64 {
    let f0 = fundamental_at(q, ia, 0, lambda);
    let f1 = fundamental_at(q, ia, q.n(), lambda);
    (f0.c - g * f1.c) * (f0.s_prime - g * f1.s_prime) - (f0.s - g * f1.s) * (f0.c_prime - g * f1.c_prime)
}

/// `Δ(λ) = Δ₀(λ) − ∫₀¹ w(x) sin(ρx)/ρ dx` with `w` on the grid.
pub fn eval_delta_fundrep(lambda: Complex64, w: &Potential, gamma: Complex64) -> Complex64 {
    let rho = lambda.sqrt();
    // kernel centred at x = 0 gives ∫ w(t) sin(−ρt)/ρ dt
    let (iphi, _) = trig_kernel(w, 0, w.n(), rho, 0.0);
    delta0(lambda, gamma) + iphi
}

/// `Δ(λ)` with `w` given by its sine coefficients.
pub fn eval_delta_sine(lambda: Complex64, w: &SineSeries, gamma: Complex64) -> Complex64 {
    delta0(lambda, gamma) - w.sine_transform(lambda.sqrt())
}

/// `Δ` for `γ = 1` from the half-interval cosine transform of `w(1/2 − x)`:
/// `(2/ρ) sin(ρ/2) (2ρ sin(ρ/2) − ∫₀^{1/2} w(1/2−x) cos ρx dx)`.
pub fn eval_delta_periodic_factored(lambda: Complex64, w: &Potential) -> Complex64 {
    let rho = lambda.sqrt();
    2.0 * phi(rho, 0.5) * periodic_reduced(w, rho)
}

/// `Δ` for `γ = −1`: `2 cos(ρ/2) (2 cos(ρ/2) + ∫₀^{1/2} w(1/2−x) sin(ρx)/ρ dx)`.
pub fn eval_delta_antiperiodic_factored(lambda: Complex64, w: &Potential) -> Complex64 {
    let rho = lambda.sqrt();
    2.0 * (rho * 0.5).cos() * antiperiodic_reduced(w, rho)
}

fn periodic_reduced(w: &Potential, rho: Complex64) -> Complex64 {
    let half = w.n() / 2;
    let (_, icos) = trig_kernel(w, 0, half, rho, 0.5);
    2.0 * rho * (rho * 0.5).sin() - icos
}

fn antiperiodic_reduced(w: &Potential, rho: Complex64) -> Complex64 {
    let half = w.n() / 2;
    let (iphi, _) = trig_kernel(w, 0, half, rho, 0.5);
    2.0 * (rho * 0.5).cos() + iphi
}

/// Linear or quadratic-model Newton solve result.
struct Root {
    rho: Complex64,
}

fn scale_of(gamma: Complex64, rho: Complex64) -> f64 {
    1.0 + gamma.norm_sqr() + 2.0 * gamma.norm() * rho.cos().norm()
}

/// Complex Newton iteration with a central finite-difference derivative.
fn newton(
    f: &dyn Fn(Complex64) -> Complex64,
    start: Complex64,
    scale: &dyn Fn(Complex64) -> f64,
    damping: Option<f64>,
) -> std::result::Result<Complex64, String> {
    let mut z = start;
    let mut value = f(z);
    for iter in 0..NEWTON_MAX_ITER {
        // one step always runs: a small residual alone can hide a sizeable offset
        if iter > 0 && value.norm() < NEWTON_RESIDUAL_TOL * (1.0 + scale(z)) {
            return Ok(z);
        }
        let h = 1e-6 * (1.0 + z.norm());
        let deriv = (f(z + h) - f(z - h)) / (2.0 * h);
        if deriv.norm() == 0.0 || !deriv.re.is_finite() {
            return Err(format!("vanishing derivative at {z}"));
        }
        let mut step = value / deriv;
        if let Some(cap) = damping {
            step *= 0.5;
            if step.norm() > cap {
                step *= cap / step.norm();
            }
        }
        z -= step;
        value = f(z);
        if step.norm() < NEWTON_STEP_TOL * (1.0 + z.norm()) {
            return Ok(z);
        }
    }
    if value.norm() < 1e3 * NEWTON_RESIDUAL_TOL * (1.0 + scale(z)) {
        // stalled at the roundoff floor
        return Ok(z);
    }
    Err(format!("no convergence after {NEWTON_MAX_ITER} iterations (|g| = {:.3e})", value.norm()))
}

/// Root of the even function `g(ρ)` near `start`, as a ρ with `Re ρ ≥ 0`.
fn locate_root(
    g: &dyn Fn(Complex64) -> Complex64,
    start: Complex64,
    scale: &dyn Fn(Complex64) -> f64,
    index: usize,
) -> Result<Root> {
    let solve = |damping: Option<f64>| -> std::result::Result<Complex64, String> {
        if start.norm() < LAMBDA_PLANE_RADIUS {
            let in_lambda = |lam: Complex64| g(lam.sqrt());
            let lam_scale = |lam: Complex64| scale(lam.sqrt());
            newton(&in_lambda, start * start, &lam_scale, damping).map(|lam| lam.sqrt())
        } else {
            newton(g, start, scale, damping)
        }
    };
    let oriented = |r: Complex64| if (r - start).norm() <= (-r - start).norm() { r } else { -r };
    let strays = |r: Complex64| (oriented(r) - start).norm() > PI / 2.0;
    let first = solve(None);
    let rho = match first {
        Ok(r) if !strays(r) => r,
        _ => match solve(Some(0.5)) {
            Ok(r) => r,
            Err(detail) => {
                return match first {
                    Ok(r) => Ok(Root { rho: oriented(r) }),
                    Err(_) => Err(FrozenError::RootIsolation { index, detail }),
                }
            }
        },
    };
    Ok(Root { rho: oriented(rho) })
}

/// First `m` eigenvalues of `(q, a, γ)`, ordered by the reference indexing.
///
/// In the periodic and antiperiodic cases the odd-indexed eigenvalues are the
/// exact reference values and the even ones are zeros of the reduced factor
/// of `Δ`; otherwise Newton runs on the determinant.
pub fn compute_spectrum(q: &Potential, config: &FrozenConfig, m: usize) -> Result<Spectrum> {
    if m == 0 {
        return Err(FrozenError::InvalidArgument("need at least one eigenvalue".into()));
    }
    let alpha = config.alpha();
    let gamma = config.gamma();
    let ia = q.node_of(config.a())?;
    let mut rhos = vec![Complex64::new(0.0, 0.0); m];

    match config.degenerate_sign() {
        Some(sign) => {
            let w = build_w(q, config)?;
            let g: Box<dyn Fn(Complex64) -> Complex64> = if sign > 0.0 {
                Box::new(move |rho| periodic_reduced(&w, rho))
            } else {
                Box::new(move |rho| antiperiodic_reduced(&w, rho))
            };
            let scale = |rho: Complex64| 2.0 * (1.0 + rho.norm()) * (rho.im * 0.5).cosh();
            for (n, slot) in rhos.iter_mut().enumerate() {
                let start = reference_rho(n, alpha);
                *slot = if n % 2 == 1 { start } else { locate_root(&*g, start, &scale, n)?.rho };
            }
            let mut values: Vec<Complex64> = rhos.iter().map(|r| r * r).collect();
            for (n, v) in values.iter_mut().enumerate() {
                if n % 2 == 1 {
                    *v = reference_lambda(n, alpha);
                }
            }
            Ok(Spectrum::new(values, *config))
        }
        None => {
            let g = |rho: Complex64| delta_det_at(q, ia, gamma, rho * rho);
            let scale = |rho: Complex64| scale_of(gamma, rho);
            for (n, slot) in rhos.iter_mut().enumerate() {
                *slot = locate_root(&g, reference_rho(n, alpha), &scale, n)?.rho;
            }
            resolve_collisions(&mut rhos, &g, &scale, alpha)?;
            Ok(Spectrum::new(rhos.iter().map(|r| r * r).collect(), *config))
        }
    }
}

/// Separates indices whose Newton runs landed on the same root.
fn resolve_collisions(
    rhos: &mut [Complex64],
    g: &dyn Fn(Complex64) -> Complex64,
    scale: &dyn Fn(Complex64) -> f64,
    alpha: crate::spectral_core::AlphaParam,
) -> Result<()> {
    let m = rhos.len();
    for i in 0..m {
        for j in i + 1..m {
            if (rhos[i] - rhos[j]).norm() >= COLLISION_RADIUS {
                continue;
            }
            let (ri, rj) = (reference_rho(i, alpha), reference_rho(j, alpha));
            let centre = (rhos[i] + rhos[j]) * 0.5;
            let h = (ri - rj).norm().max(1e-3);
            let (r1, r2) = quadratic_roots(g, centre, h);
            let p1 = newton(g, r1, scale, None)
                .map_err(|detail| FrozenError::RootIsolation { index: i, detail })?;
            let deflated = |z: Complex64| g(z) / (z - p1);
            let p2 = newton(&deflated, r2, scale, None).unwrap_or(p1);
            // the root nearer the reference value of index i keeps index i
            let (a, b) = if (p1 - ri).norm() + (p2 - rj).norm() <= (p2 - ri).norm() + (p1 - rj).norm() {
                (p1, p2)
            } else {
                (p2, p1)
            };
            rhos[i] = a;
            rhos[j] = b;
        }
    }
    Ok(())
}

/// Roots of the quadratic through `g(c−h), g(c), g(c+h)`.
fn quadratic_roots(g: &dyn Fn(Complex64) -> Complex64, c: Complex64, h: f64) -> (Complex64, Complex64) {
    let (gm, g0, gp) = (g(c - h), g(c), g(c + h));
    let a = (gp - 2.0 * g0 + gm) / (2.0 * h * h);
    let b = (gp - gm) / (2.0 * h);
    if a.norm() < 1e-300 {
        let r = c - g0 / b;
        return (r, r);
    }
    let disc = (b * b - 4.0 * a * g0).sqrt();
    // numerically stable pairing of the two roots
    let q = if (b.conj() * disc).re >= 0.0 { -0.5 * (b + disc) } else { -0.5 * (b - disc) };
    let d1 = q / a;
    let d2 = if q.norm() > 0.0 { g0 / q } else { d1 };
    (c + d1, c + d2)
}

/// Residuals of a spectrum against the reference eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticResidues {
    /// `κ_n = λ_n − λ⁰_n`.
    pub kappa: Vec<Complex64>,
    /// `ε_n = ρ_n − ρ⁰_n` with the square root branch nearest `ρ⁰_n`.
    pub eps: Vec<Complex64>,
    /// `Σ |κ_n|²` over the first quarter of the indices.
    pub first_quarter: f64,
    /// `Σ |κ_n|²` over the last quarter of the indices.
    pub last_quarter: f64,
}

impl AsymptoticResidues {
    /// The finite-data proxy for square summability of `κ`.
    pub fn tail_decays(&self) -> bool {
        self.last_quarter < self.first_quarter || (self.last_quarter == 0.0 && self.first_quarter == 0.0)
    }

    /// Running sums of `|κ_n|²`.
    pub fn partial_sums(&self) -> Vec<f64> {
        self.kappa
            .iter()
            .scan(0.0, |acc, k| {
                *acc += k.norm_sqr();
                Some(*acc)
            })
            .collect()
    }
}

pub fn verify_asymptotics(spec: &Spectrum) -> AsymptoticResidues {
    let mut kappa = Vec::with_capacity(spec.len());
    let mut eps = Vec::with_capacity(spec.len());
    for (n, &lam) in spec.values().iter().enumerate() {
        let r0 = spec.reference_rho(n);
        let r = lam.sqrt();
        let r = if (r - r0).norm() <= (-r - r0).norm() { r } else { -r };
        kappa.push(lam - spec.reference_lambda(n));
        eps.push(r - r0);
    }
    let quarter = (spec.len() / 4).max(1).min(spec.len());
    let first_quarter = kappa[..quarter].iter().map(|k| k.norm_sqr()).sum();
    let last_quarter = kappa[spec.len() - quarter..].iter().map(|k| k.norm_sqr()).sum();
    AsymptoticResidues { kappa, eps, first_quarter, last_quarter }
}
