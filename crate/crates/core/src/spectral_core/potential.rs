use num_complex::Complex64;

use crate::error::{FrozenError, Result};

/// Tolerance for deciding that `a * N` is an integer.
pub const SNAP_TOLERANCE: f64 = 1e-9;

/// A complex function on `[0, 1]` sampled at the uniform nodes `x_j = j / N`.
///
/// Every node carries a left and a right limit. They coincide for continuous
/// data; piecewise formulas (shifts, the main equation) produce jumps exactly
/// at grid nodes and keep both one-sided values, so quadrature never straddles
/// a discontinuity.
#[derive(Debug, Clone, PartialEq)]
pub struct Potential {
    left: Vec<Complex64>,
    right: Vec<Complex64>,
}

impl Potential {
    /// Continuous samples `f(x_0), ..., f(x_N)`.
    pub fn from_samples(samples: Vec<Complex64>) -> Result<Self> {
        Self::from_sides(samples.clone(), samples)
    }

    pub fn from_sides(left: Vec<Complex64>, right: Vec<Complex64>) -> Result<Self> {
        if left.len() != right.len() {
            return Err(FrozenError::InvalidPotential(format!(
                "left/right sample counts differ ({} vs {})",
                left.len(),
                right.len()
            )));
        }
        let n = left.len().saturating_sub(1);
        if n < 16 || n % 2 != 0 {
            return Err(FrozenError::InvalidPotential(format!(
                "grid size N = {n} must be even and >= 16"
            )));
        }
        if left.iter().chain(right.iter()).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(FrozenError::InvalidPotential("non-finite sample".into()));
        }
        Ok(Self { left, right })
    }

    /// Samples a function at the grid nodes.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let samples = (0..=n).map(|j| f(j as f64 / n as f64)).collect();
        Self::from_samples(samples)
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::from_samples(vec![Complex64::new(0.0, 0.0); n + 1])
    }

    /// Number of grid intervals.
    pub fn n(&self) -> usize {
        self.left.len() - 1
    }

    pub fn h(&self) -> f64 {
        1.0 / self.n() as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        j as f64 / self.n() as f64
    }

    pub fn left(&self, j: usize) -> Complex64 {
        self.left[j]
    }

    pub fn right(&self, j: usize) -> Complex64 {
        self.right[j]
    }

    /// Right limits; the conventional value at each node.
    pub fn samples(&self) -> &[Complex64] {
        &self.right
    }

    pub fn left_samples(&self) -> &[Complex64] {
        &self.left
    }

    pub fn is_jump(&self, j: usize) -> bool {
        self.left[j] != self.right[j]
    }

    /// Interior nodes where the one-sided limits differ.
    pub fn jumps(&self) -> Vec<usize> {
        (1..self.n()).filter(|&j| self.is_jump(j)).collect()
    }

    /// Grid index of `x`, failing unless `x * N` is within [`SNAP_TOLERANCE`] of an integer.
    pub fn node_of(&self, x: f64) -> Result<usize> {
        node_index(x, self.n())
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            left: self.left.iter().map(|&z| f(z)).collect(),
            right: self.right.iter().map(|&z| f(z)).collect(),
        }
    }

    /// Pointwise combination; one-sided limits are combined side by side.
    pub fn zip_with(
        &self,
        other: &Potential,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        if self.n() != other.n() {
            return Err(FrozenError::InvalidPotential(format!(
                "grid mismatch: {} vs {}",
                self.n(),
                other.n()
            )));
        }
        let left = self.left.iter().zip(&other.left).map(|(&a, &b)| f(a, b)).collect();
        let right = self.right.iter().zip(&other.right).map(|(&a, &b)| f(a, b)).collect();
        Ok(Self { left, right })
    }

    /// Visits composite-Simpson quadrature nodes for `∫_{x_from}^{x_to} q(t) dt`.
    ///
    /// The callback receives `(node, weight, value)` with the weight already
    /// carrying `h` and the orientation sign. Pieces between jumps are handled
    /// separately; a piece with an odd interval count closes with the 3/8 rule,
    /// a single interval falls back to the trapezoid rule.
    pub fn quadrature(&self, from: usize, to: usize, mut visit: impl FnMut(usize, f64, Complex64)) {
        if from == to {
            return;
        }
        let (lo, hi, sign) = if from < to { (from, to, 1.0) } else { (to, from, -1.0) };
        let h = self.h() * sign;
        let mut start = lo;
        for j in lo + 1..=hi {
            if j == hi || self.is_jump(j) {
                self.piece(start, j, h, &mut visit);
                start = j;
            }
        }
    }

    fn piece(&self, p0: usize, p1: usize, h: f64, visit: &mut impl FnMut(usize, f64, Complex64)) {
        let value = |j: usize| -> Complex64 {
            if j == p1 {
                self.left[j]
            } else {
                self.right[j]
            }
        };
        let m = p1 - p0;
        match m {
            0 => {}
            1 => {
                visit(p0, 0.5 * h, value(p0));
                visit(p1, 0.5 * h, value(p1));
            }
            _ => {
                let simpson_end = if m % 2 == 0 { p1 } else { p1 - 3 };
                if simpson_end > p0 {
                    let w = h / 3.0;
                    visit(p0, w, value(p0));
                    for j in p0 + 1..simpson_end {
                        let c = if (j - p0) % 2 == 1 { 4.0 } else { 2.0 };
                        visit(j, c * w, value(j));
                    }
                    visit(simpson_end, w, value(simpson_end));
                }
                if simpson_end < p1 {
                    let w = 3.0 * h / 8.0;
                    let s = simpson_end;
                    visit(s, w, value(s));
                    visit(s + 1, 3.0 * w, value(s + 1));
                    visit(s + 2, 3.0 * w, value(s + 2));
                    visit(s + 3, w, value(s + 3));
                }
            }
        }
    }

    /// `∫_{x_from}^{x_to} q(t) g(t) dt` for a smooth weight `g`.
    pub fn integrate_weighted(
        &self,
        from: usize,
        to: usize,
        g: impl Fn(f64) -> Complex64,
    ) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        self.quadrature(from, to, |j, w, v| acc += w * v * g(self.x(j)));
        acc
    }

    pub fn integral(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        self.quadrature(0, self.n(), |_, w, v| acc += w * v);
        acc
    }

    pub fn l2_norm(&self) -> f64 {
        let mut acc = 0.0;
        self.quadrature(0, self.n(), |_, w, v| acc += w * v.norm_sqr());
        acc.max(0.0).sqrt()
    }

    pub fn l2_distance(&self, other: &Potential) -> Result<f64> {
        Ok(self.zip_with(other, |a, b| a - b)?.l2_norm())
    }

    /// `‖self − other‖ / ‖other‖` in L₂.
    pub fn relative_l2_error(&self, truth: &Potential) -> Result<f64> {
        let norm = truth.l2_norm();
        let dist = self.l2_distance(truth)?;
        Ok(if norm > 0.0 { dist / norm } else { dist })
    }

    pub fn sup_norm(&self) -> f64 {
        self.left
            .iter()
            .chain(&self.right)
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `q(1 − x)`: node `j` maps to node `N − j` with one-sided limits exchanged.
    pub fn reversed(&self) -> Self {
        Self {
            left: self.right.iter().rev().copied().collect(),
            right: self.left.iter().rev().copied().collect(),
        }
    }
}

/// Grid index of `x` on a grid with `n` intervals.
pub fn node_index(x: f64, n: usize) -> Result<usize> {
    let scaled = x * n as f64;
    let idx = scaled.round();
    if (scaled - idx).abs() > SNAP_TOLERANCE || idx < 0.0 || idx > n as f64 {
        return Err(FrozenError::NotSnapped { a: x, n });
    }
    Ok(idx as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(Potential::zeros(15).is_err());
        assert!(Potential::zeros(8).is_err());
        assert!(Potential::zeros(16).is_ok());
        let mut s = vec![c(0.0); 17];
        s[3] = Complex64::new(f64::NAN, 0.0);
        assert!(Potential::from_samples(s).is_err());
    }

    #[test]
    fn simpson_is_exact_for_cubics() {
        for n in [16usize, 18, 34] {
            let q = Potential::from_fn(n, |x| c(x * x * x - 2.0 * x + 1.0)).unwrap();
            let exact = 0.25 - 1.0 + 1.0;
            assert!((q.integral().re - exact).abs() < 1e-14, "n = {n}");
        }
    }

    #[test]
    fn odd_pieces_use_three_eighths() {
        let q = Potential::from_fn(16, |x| c(x * x)).unwrap();
        // nodes 0..5 is an odd piece; ∫_0^{5/16} x^2 dx
        let got = q.integrate_weighted(0, 5, |_| c(1.0));
        let exact = (5.0f64 / 16.0).powi(3) / 3.0;
        assert!((got.re - exact).abs() < 1e-15);
        let back = q.integrate_weighted(5, 0, |_| c(1.0));
        assert!((back.re + exact).abs() < 1e-15);
    }

    #[test]
    fn jumps_split_quadrature() {
        let n = 16;
        let mut left = Vec::new();
        let mut right = Vec::new();
        for j in 0..=n {
            let x = j as f64 / n as f64;
            let below = x;
            let above = x + 1.0;
            left.push(c(if j <= 4 { below } else { above }));
            right.push(c(if j < 4 { below } else { above }));
        }
        let q = Potential::from_sides(left, right).unwrap();
        assert_eq!(q.jumps(), vec![4]);
        // ∫_0^1 x dx + ∫_{1/4}^1 1 dx
        assert!((q.integral().re - (0.5 + 0.75)).abs() < 1e-14);
    }

    #[test]
    fn snapping() {
        assert_eq!(node_index(0.25, 1024).unwrap(), 256);
        assert!(node_index(0.3, 1024).is_err());
        assert_eq!(node_index(0.3, 1000).unwrap(), 300);
    }

    #[test]
    fn reversal_is_an_involution() {
        let q = Potential::from_fn(32, |x| Complex64::new(x, x * x)).unwrap();
        assert_eq!(q.reversed().reversed(), q);
        assert_eq!(q.reversed().right(0), q.left(32));
    }
}
