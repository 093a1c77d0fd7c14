//! Write a potential to disk, run the forward and inverse commands through
//! the library entry point, and compare.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use frozen_hill::cli::main_from;
use frozen_hill::io::{read_potential, write_potential};
use frozen_hill::samples::windowed_potential;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("frozen-hill-example");
    std::fs::create_dir_all(&dir)?;
    let (q_path, s_path, r_path) = (dir.join("q.txt"), dir.join("spec.txt"), dir.join("rec.txt"));

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let q = windowed_potential(&mut rng, 0.5, 3, 3, 1024)?;
    std::fs::write(&q_path, write_potential(&q, 0.5, Complex64::new(0.5, 0.5)))?;

    let p = |x: &std::path::Path| x.to_string_lossy().into_owned();
    let forward = ["frozen-hill", "forward", "--in", &p(&q_path), "--m", "60", "--out", &p(&s_path)];
    assert_eq!(main_from(forward.iter().map(|s| s.to_string())), 0);
    let inverse = ["frozen-hill", "inverse1", "--in", &p(&s_path), "--a", "0.5", "--m", "60", "--out", &p(&r_path)];
    assert_eq!(main_from(inverse.iter().map(|s| s.to_string())), 0);

    let rec = read_potential(&std::fs::read_to_string(&r_path)?)?;
    println!("relative L2 error after the file round trip: {:.3e}", rec.potential.relative_l2_error(&q)?);
    Ok(())
}
