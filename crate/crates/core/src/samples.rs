//! Random test potentials with controlled smoothness.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use crate::error::Result;
use crate::spectral_core::Potential;

/// Random complex trigonometric polynomial `Σ_{k≤d} c_k e^{2πikx} + s_k e^{−2πikx}` with `|c| ≤ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    cos: Vec<Complex64>,
    sin: Vec<Complex64>,
}

fn coeff(rng: &mut impl Rng) -> Complex64 {
    let r = rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, rng.gen_range(0.0..2.0 * PI))
}

impl TrigPoly {
    pub fn random(rng: &mut impl Rng, degree: usize) -> Self {
        let cos = (0..=degree).map(|_| coeff(rng)).collect();
        let sin = (0..=degree).map(|k| if k == 0 { Complex64::default() } else { coeff(rng) }).collect();
        Self { cos, sin }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let mut acc = Complex64::default();
        for (k, (c, s)) in self.cos.iter().zip(&self.sin).enumerate() {
            let t = 2.0 * PI * k as f64 * x;
            acc += c * t.cos() + s * t.sin();
        }
        acc
    }
}

/// Plain trigonometric polynomial on the grid.
pub fn trig_potential(rng: &mut impl Rng, degree: usize, n: usize) -> Result<Potential> {
    let p = TrigPoly::random(rng, degree);
    Potential::from_fn(n, |x| p.eval(x))
}

/// `sin^p(πx) sin^p(π(x − a)) T(x)`: vanishes to order `p` at `0`, `a` and `1`,
/// which keeps the kernel `w` smooth with zero boundary values.
pub fn windowed_potential(rng: &mut impl Rng, a: f64, power: i32, degree: usize, n: usize) -> Result<Potential> {
    let p = TrigPoly::random(rng, degree);
    Potential::from_fn(n, |x| window(x, a, power) * p.eval(x))
}

pub fn window(x: f64, a: f64, power: i32) -> f64 {
    if a == 0.0 || a == 1.0 {
        (PI * x).sin().powi(power)
    } else {
        ((PI * x).sin() * (PI * (x - a)).sin()).powi(power)
    }
}

/// `q` with `q(1/2 − x) = c·q(1/2 + x)`, built from `h(x) = sin³(2πx) P(x)` on `(0, 1/2)`.
pub fn reflected_potential(rng: &mut impl Rng, c: Complex64, degree: usize, n: usize) -> Result<Potential> {
    let p = TrigPoly::random(rng, degree);
    let h = |x: f64| (2.0 * PI * x).sin().powi(3) * p.eval(x);
    Potential::from_fn(n, |x| if x >= 0.5 { h(x - 0.5) } else { c * h(0.5 - x) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn coefficients_stay_in_the_unit_disc() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let p = TrigPoly::random(&mut rng, 6);
        assert!(p.cos.iter().chain(&p.sin).all(|c| c.norm() <= 1.0));
    }

    #[test]
    fn windowed_vanishes_at_marks() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        let q = windowed_potential(&mut rng, 0.25, 3, 4, 64).unwrap();
        for j in [0, 16, 64] {
            assert!(q.samples()[j].norm() < 1e-12);
        }
    }

    #[test]
    fn reflected_relation_holds() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let c = Complex64::new(0.5, 0.0);
        let q = reflected_potential(&mut rng, c, 3, 64).unwrap();
        for j in 0..=32 {
            assert!((q.samples()[32 - j] - c * q.samples()[32 + j]).norm() < 1e-12);
        }
    }
}
