//! Gram matrices of the two-sided system `sin((2n + α)πx)`, `n ∈ ℤ`, on `L₂(0, 1)`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::Result;
use crate::spectral_core::Potential;

/// Truncation `n = −N..=N` of the Gram matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GramTruncation {
    pub alpha: Complex64,
    pub half_width: usize,
    /// Row `i` belongs to the index `n = i − N`.
    pub matrix: DMatrix<Complex64>,
}

impl GramTruncation {
    pub fn dim(&self) -> usize {
        2 * self.half_width + 1
    }

    pub fn index(&self, n: i64) -> usize {
        (n + self.half_width as i64) as usize
    }

    pub fn entry(&self, m: i64, n: i64) -> Complex64 {
        self.matrix[(self.index(m), self.index(n))]
    }

    /// `max |G − G*|`.
    pub fn hermitian_defect(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Largest deviation from Simpson quadrature of the inner products over
    /// the 5×5 block `m, n ∈ −2..=2` (clipped to the truncation).
    pub fn quadrature_check(&self, grid: usize) -> Result<f64> {
        let r = self.half_width.min(2) as i64;
        let mut worst = 0.0f64;
        for m in -r..=r {
            for n in -r..=r {
                let u = 2.0 * m as f64 + self.alpha;
                let v = 2.0 * n as f64 + self.alpha;
                let integrand = Potential::from_fn(grid, |x| (u * PI * x).sin() * (v * PI * x).sin().conj())?;
                worst = worst.max((integrand.integral() - self.entry(m, n)).norm());
            }
        }
        Ok(worst)
    }
}

/// `sin(πz)/(2πz)`, equal to `1/2` at the origin.
fn half_sinc(z: Complex64) -> Complex64 {
    let w = PI * z;
    if w.norm() < 1e-4 {
        let w2 = w * w;
        0.5 * (1.0 - w2 / 6.0 + w2 * w2 / 120.0)
    } else {
        w.sin() / (2.0 * w)
    }
}

/// `∫₀¹ sin((2m+α)πx) · conj(sin((2n+α)πx)) dx` in closed form.
pub fn gram_entry(alpha: Complex64, m: i64, n: i64) -> Complex64 {
    let u = 2.0 * m as f64 + alpha;
    let v = 2.0 * n as f64 + alpha.conj();
    half_sinc(u - v) - half_sinc(u + v)
}

pub fn gram_matrix(alpha: Complex64, half_width: usize) -> GramTruncation {
    let d = 2 * half_width + 1;
    let h = half_width as i64;
    let matrix = DMatrix::from_fn(d, d, |i, j| gram_entry(alpha, i as i64 - h, j as i64 - h));
    GramTruncation { alpha, half_width, matrix }
}

/// Smallest and largest eigenvalues of the truncated Gram matrix.
pub fn frame_bounds(alpha: Complex64, half_width: usize) -> (f64, f64) {
    let g = gram_matrix(alpha, half_width);
    // symmetrize away roundoff before the Hermitian solver
    let herm = (&g.matrix + g.matrix.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigenvalues();
    let lo = eig.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo, hi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RieszRow {
    pub half_width: usize,
    pub a1: f64,
    pub a2: f64,
    /// `A2 / A1`, infinite when `A1 ≤ 0`.
    pub cond: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RieszReport {
    pub alpha: Complex64,
    pub rows: Vec<RieszRow>,
    /// `A1` never increases along increasing `N`.
    pub a1_non_increasing: bool,
    /// `A2` never decreases along increasing `N`.
    pub a2_non_decreasing: bool,
}

/// Frame bounds along a list of truncations. The monotonicity flags compare
/// successive rows sorted by `N`, with a small allowance for roundoff.
pub fn riesz_report(alpha: Complex64, half_widths: &[usize]) -> RieszReport {
    let mut sorted = half_widths.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let rows: Vec<RieszRow> = sorted
        .iter()
        .map(|&n| {
            let (a1, a2) = frame_bounds(alpha, n);
            let cond = if a1 > 0.0 { a2 / a1 } else { f64::INFINITY };
            RieszRow { half_width: n, a1, a2, cond }
        })
        .collect();
    let slack = 1e-12;
    let a1_non_increasing = rows.windows(2).all(|w| w[1].a1 <= w[0].a1 + slack);
    let a2_non_decreasing = rows.windows(2).all(|w| w[1].a2 >= w[0].a2 - slack);
    RieszReport { alpha, rows, a1_non_increasing, a2_non_decreasing }
}
