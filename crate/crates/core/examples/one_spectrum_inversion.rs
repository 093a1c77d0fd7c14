//! Recover a potential from a single spectrum when γ² ≠ 1.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use frozen_hill::inverse::{algorithm1, recover_w, InverseOptions};
use frozen_hill::samples::windowed_potential;
use frozen_hill::{compute_spectrum, FrozenConfig};

fn main() -> frozen_hill::Result<()> {
    let n = 2048;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let config = FrozenConfig::new(0.25, Complex64::new(2.0, 0.0))?;
    let q = windowed_potential(&mut rng, config.a(), 3, 4, n)?;

    for m in [20, 40, 80] {
        let spec = compute_spectrum(&q, &config, m)?;
        let opts = InverseOptions::new(m, m, n)?;
        let rec = algorithm1(&spec, &opts)?;
        println!(
            "M = {m:>3}: rel L2 error {:.3e}, |b_K| = {:.2e}",
            rec.potential.relative_l2_error(&q)?,
            rec.diagnostics.tail_coefficient
        );
    }

    // the intermediate kernel, first few sine coefficients
    let spec = compute_spectrum(&q, &config, 40)?;
    let w = recover_w(&spec, 6, 40)?;
    for (k, b) in w.coeffs().iter().enumerate() {
        println!("b_{} = {b:.6e}", k + 1);
    }
    Ok(())
}
