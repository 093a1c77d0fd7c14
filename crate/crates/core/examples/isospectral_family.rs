//! Different potentials sharing one periodic spectrum, and different
//! potentials sharing both spectra at a = 1/4.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use frozen_hill::inverse::{isobispectral_family, isospectral_family, InverseOptions, TwoSpectra};
use frozen_hill::samples::windowed_potential;
use frozen_hill::{compute_spectrum, FrozenConfig};

fn bump(j: usize, len: usize, height: f64) -> Complex64 {
    let t = j as f64 / len as f64;
    Complex64::new(height * (std::f64::consts::PI * t).sin().powi(4), 0.0)
}

fn main() -> frozen_hill::Result<()> {
    let n = 1024;
    let m = 60;
    let opts = InverseOptions::new(m, m, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let q = windowed_potential(&mut rng, 0.0, 3, 3, n)?;

    let periodic = FrozenConfig::new(0.0, Complex64::new(1.0, 0.0))?;
    let spec = compute_spectrum(&q, &periodic, m)?;
    let half = n / 2;
    let ps: Vec<Vec<Complex64>> = [0.0, 1.0, -2.0]
        .iter()
        .map(|&h| (0..=half).map(|j| bump(j, half, h)).collect())
        .collect();
    let family = isospectral_family(&spec, &ps, &opts)?;
    for (i, member) in family.iter().enumerate() {
        let again = compute_spectrum(&member.potential, &periodic, 10)?;
        let gap = again.values().iter().zip(spec.values()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
        println!("member {i}: ||q_i - q_0|| = {:.3e}, spectral gap {gap:.1e}",
            member.potential.l2_distance(&family[0].potential)?);
    }

    let a = 0.25;
    let q = windowed_potential(&mut rng, a, 5, 3, n)?;
    let two = TwoSpectra::new(
        compute_spectrum(&q, &FrozenConfig::new(a, Complex64::new(1.0, 0.0))?, m)?,
        compute_spectrum(&q, &FrozenConfig::new(a, Complex64::new(-1.0, 0.0))?, m)?,
    )?;
    let ia = n / 4;
    let ps: Vec<Vec<Complex64>> = [0.5, 1.5].iter().map(|&h| (0..=ia).map(|j| bump(j, ia, h)).collect()).collect();
    let family = isobispectral_family(&two, &ps, &opts)?;
    println!("two members sharing both spectra differ by {:.3e}",
        family[0].potential.l2_distance(&family[1].potential)?);
    Ok(())
}
