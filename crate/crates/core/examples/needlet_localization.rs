//! Normalized localization of needlets across levels for two decay exponents.

use conekit::frames::{build_frame, needlet_decay_check, NeedletDecayOptions};
use conekit::geometry::WeightSpec;

fn main() -> conekit::Result<()> {
    let w = WeightSpec::surface(2, -1.0, 0.0)?;
    let frame = build_frame(&w, 5, 0.5)?;
    for kappa in [2.0, 4.0, 6.0] {
        let opts = NeedletDecayOptions {
            kappa,
            ..Default::default()
        };
        println!("kappa {kappa}");
        for l in needlet_decay_check(&frame, &opts)? {
            println!(
                "  level {}: sup {:.4e}, at the center {:.4} ({} evaluations)",
                l.j, l.sup, l.sup_center, l.evaluations
            );
        }
    }
    Ok(())
}
