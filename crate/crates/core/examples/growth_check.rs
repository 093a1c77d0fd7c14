//! The support test on w_0 + w_1 that tells whether two spectra can come
//! from one potential at a given frozen point.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use frozen_hill::inverse::{check_growth, InverseOptions, TwoSpectra};
use frozen_hill::samples::windowed_potential;
use frozen_hill::{compute_spectrum, FrozenConfig};

fn main() -> frozen_hill::Result<()> {
    let n = 1000;
    let a = 0.3;
    let m = 80;
    let opts = InverseOptions::new(m, m, n)?;
    let periodic = FrozenConfig::new(a, Complex64::new(1.0, 0.0))?;
    let anti = FrozenConfig::new(a, Complex64::new(-1.0, 0.0))?;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let q = windowed_potential(&mut rng, a, 5, 4, n)?;
    let other = windowed_potential(&mut rng, a, 5, 4, n)?;

    let matched = TwoSpectra::new(compute_spectrum(&q, &periodic, m)?, compute_spectrum(&q, &anti, m)?)?;
    let mixed = TwoSpectra::new(compute_spectrum(&q, &periodic, m)?, compute_spectrum(&other, &anti, m)?)?;
    for (name, two) in [("same potential", &matched), ("two potentials", &mixed)] {
        let r = check_growth(two, &opts)?;
        println!("{name}: max |w0 + w1| on (1-a, 1) = {:.3e}, threshold {:.3e}, pass = {}",
            r.max_violation, r.threshold, r.pass);
    }
    Ok(())
}
