//! Positive cubature rules of degree n on (delta / n)-separated sets.

use conekit::cubature::{calibrate_delta, verify_exactness, weight_comparability};
use conekit::geometry::WeightSpec;

fn main() -> conekit::Result<()> {
    for w in [
        WeightSpec::surface(2, -1.0, 0.0)?,
        WeightSpec::cone(2, 0.0, 0.5)?,
    ] {
        for n in [4usize, 8, 16] {
            let c = calibrate_delta(&w, n, 0, 1.0, 1.0 / 16.0, 1e-8)?;
            let r = &c.rule;
            let (lo, hi) = weight_comparability(r, &w, c.delta / n as f64);
            let min_w = r.weights.iter().cloned().fold(f64::INFINITY, f64::min);
            println!(
                "{:?} n {n:>2}: delta {:.3}, {} nodes, residual {:.1e}, min weight {min_w:.2e}, lambda/cap in [{lo:.3}, {hi:.3}], exactness {:.1e}",
                w.domain,
                c.delta,
                r.nodes.len(),
                r.residual,
                verify_exactness(r, &w, 5)?
            );
        }
    }
    Ok(())
}
