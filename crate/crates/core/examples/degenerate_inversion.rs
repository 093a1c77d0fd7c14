//! Periodic boundary conditions: the spectrum alone does not fix q, so a
//! prescribed link between the two halves of q is supplied.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use frozen_hill::inverse::{algorithm1, algorithm2, InverseOptions, OperatorSpec};
use frozen_hill::samples::reflected_potential;
use frozen_hill::{compute_spectrum, FrozenConfig};

fn main() -> frozen_hill::Result<()> {
    let n = 1024;
    let link = Complex64::new(0.5, 0.25);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    // q(1/2 − x) = link · q(1/2 + x)
    let q = reflected_potential(&mut rng, link, 3, n)?;
    let config = FrozenConfig::new(0.0, Complex64::new(1.0, 0.0))?;
    let spec = compute_spectrum(&q, &config, 60)?;
    let opts = InverseOptions::new(60, 60, n)?;

    match algorithm1(&spec, &opts) {
        Err(e) => println!("one-spectrum inversion refuses: {e}"),
        Ok(_) => unreachable!(),
    }

    let rec = algorithm2(&spec, &OperatorSpec::scalar(link, 0.5)?, &opts)?;
    println!("with the correct link: rel L2 error {:.3e}", rec.potential.relative_l2_error(&q)?);
    println!("degeneration residual {:.1e}", rec.diagnostics.degeneration_residual.unwrap_or(0.0));

    let wrong = algorithm2(&spec, &OperatorSpec::scalar(Complex64::new(-0.3, 0.0), 0.5)?, &opts)?;
    println!(
        "with another link the result differs by {:.3e} but has the same spectrum",
        wrong.potential.relative_l2_error(&q)?
    );

    match OperatorSpec::scalar(-config.gamma(), 0.5).and_then(|op| algorithm2(&spec, &op, &opts)) {
        Err(e) => println!("link -gamma is rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
