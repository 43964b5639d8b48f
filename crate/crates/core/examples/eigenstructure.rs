//! Finite-difference check that the basis elements are eigenfunctions of the second-order operators.

use conekit::geometry::WeightSpec;
use conekit::kernels::eigen_check;

fn main() -> conekit::Result<()> {
    for w in [
        WeightSpec::surface(2, -1.0, 0.0)?,
        WeightSpec::cone(2, 0.0, 0.5)?,
    ] {
        println!("{:?} gamma {} mu {}", w.domain, w.gamma, w.mu);
        for c in eigen_check(&w, 8, 8, 1e-4, 0)? {
            println!(
                "  n {}: eigenvalue {:>8.2}, relative defect {:.2e}",
                c.n, c.eigenvalue, c.max_rel_err
            );
        }
    }
    Ok(())
}
