//! Growth of ||f||_inf / ||f||_2 and of ||(-D)^{r/2} f|| / ||f|| over polynomial spaces.

use conekit::approx::{bernstein_report, nikolskii_report};
use conekit::geometry::WeightSpec;

fn main() -> conekit::Result<()> {
    let w = WeightSpec::surface(2, -1.0, 0.0)?;
    let nk = nikolskii_report(&w, &[4, 8, 16, 32], 20, 0)?;
    for r in &nk.rows {
        println!(
            "n {:>2}: random {:.3}, extremal {:.3}",
            r.n, r.random, r.extremal
        );
    }
    println!(
        "log slopes: extremal {:.3}, random {:.3}; doubling index {}",
        nk.slope_extremal, nk.slope_random, nk.alpha
    );
    for r in bernstein_report(&w, &[8, 16, 32], &[1.0, 2.0], 10, 0)? {
        println!(
            "Bernstein n {:>2} r {}: random {:.3}, sup {:.3}",
            r.n, r.r, r.random, r.sup
        );
    }
    Ok(())
}
