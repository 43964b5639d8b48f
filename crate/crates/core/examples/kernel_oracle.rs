//! Reproducing kernels by the addition formula against the explicit orthonormal basis sum.

use conekit::geometry::{random_point, WeightSpec};
use conekit::kernels::{basis_sum, KernelConfig, KernelEvaluator, OrthoBasis};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> conekit::Result<()> {
    let nmax = 12;
    for w in [
        WeightSpec::surface(2, -1.0, 0.5)?,
        WeightSpec::cone(2, 0.0, 0.0)?,
        WeightSpec::cone(2, -0.5, 1.0)?,
    ] {
        let b = OrthoBasis::new(&w, nmax)?;
        let ev = KernelEvaluator::new(&KernelConfig::new(w), nmax)?;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut worst = 0.0f64;
        for _ in 0..50 {
            let p = random_point(w.domain, w.d, &mut rng);
            let q = random_point(w.domain, w.d, &mut rng);
            for n in 0..=nmax {
                let want = basis_sum(&b, n, &p, &q);
                worst = worst.max((ev.reprod(n, &p, &q) - want).abs() / (1.0 + want.abs()));
            }
        }
        println!(
            "{:?} gamma {} mu {}: {} basis functions, max error {worst:.2e}",
            w.domain,
            w.gamma,
            w.mu,
            b.len()
        );
    }
    Ok(())
}
