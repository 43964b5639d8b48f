//! Marcinkiewicz-Zygmund constants of separated sets with their cell masses.

use conekit::cubature::{mz_constants, MzNorm};
use conekit::geometry::{build_separated_set, WeightSpec};

fn main() -> conekit::Result<()> {
    let w = WeightSpec::surface(2, -1.0, 0.0)?;
    for n in [4usize, 8, 16] {
        let s = build_separated_set(w.domain, w.d, 0.5 / n as f64, 0)?;
        for p in [MzNorm::One, MzNorm::Two, MzNorm::Infinity] {
            let c = mz_constants(&s, n, &w, p, 8, 3, 1)?;
            println!("n {n:>2} {p:?}: [{:.3}, {:.3}]", c.lower, c.upper);
        }
    }
    Ok(())
}
