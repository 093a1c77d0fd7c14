//! Periodic and antiperiodic spectra together. At a = 0 they determine q;
//! at a = 1/4 the lower quarter still needs a link.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use frozen_hill::inverse::{algorithm3, algorithm4, InverseOptions, OperatorSpec, TwoSpectra};
use frozen_hill::samples::windowed_potential;
use frozen_hill::spectral_core::Potential;
use frozen_hill::{compute_spectrum, FrozenConfig};

fn pair(q: &Potential, a: f64, m: usize) -> frozen_hill::Result<TwoSpectra> {
    let s0 = compute_spectrum(q, &FrozenConfig::new(a, Complex64::new(1.0, 0.0))?, m)?;
    let s1 = compute_spectrum(q, &FrozenConfig::new(a, Complex64::new(-1.0, 0.0))?, m)?;
    TwoSpectra::new(s0, s1)
}

fn main() -> frozen_hill::Result<()> {
    let n = 1024;
    let m = 80;
    let opts = InverseOptions::new(m, m, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);

    let q = windowed_potential(&mut rng, 0.0, 3, 4, n)?;
    let rec = algorithm3(&pair(&q, 0.0, m)?, &opts)?;
    println!("a = 0:   rel L2 error {:.3e}", rec.potential.relative_l2_error(&q)?);

    let a = 0.25;
    let q = windowed_potential(&mut rng, a, 5, 3, n)?;
    let ia = n / 4;
    // q(a − x) on the sub-grid of (0, a)
    let p: Vec<Complex64> = (0..=ia).map(|j| q.samples()[ia - j]).collect();
    let rec = algorithm4(&pair(&q, a, m)?, &OperatorSpec::constant(p, a)?, &opts)?;
    println!("a = 1/4: rel L2 error {:.3e}", rec.potential.relative_l2_error(&q)?);
    Ok(())
}
