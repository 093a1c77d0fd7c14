//! Eigenvalues of a random trigonometric potential against the reference
//! values, with the two evaluations of the characteristic function side by side.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use frozen_hill::forward::{build_w, eval_delta_det, eval_delta_fundrep};
use frozen_hill::samples::trig_potential;
use frozen_hill::{compute_spectrum, verify_asymptotics, FrozenConfig};

fn main() -> frozen_hill::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let q = trig_potential(&mut rng, 4, 2000)?;
    let config = FrozenConfig::new(0.3, Complex64::new(2.0, 0.5))?;

    let spec = compute_spectrum(&q, &config, 16)?;
    let res = verify_asymptotics(&spec);
    println!("alpha = {:.6}", config.alpha().value());
    println!("{:>3} {:>30} {:>30} {:>10}", "n", "lambda_n", "reference", "|eps_n|");
    for n in 0..spec.len() {
        println!(
            "{n:>3} {:>30.10} {:>30.10} {:>10.2e}",
            spec.values()[n],
            spec.reference_lambda(n),
            res.eps[n].norm()
        );
    }

    let w = build_w(&q, &config)?;
    let lam = Complex64::new(40.0, 3.0);
    let det = eval_delta_det(lam, &q, &config)?;
    let kernel = eval_delta_fundrep(lam, &w, config.gamma());
    println!("Delta({lam}) by determinant {det:.12}, by kernel {kernel:.12}");
    Ok(())
}
