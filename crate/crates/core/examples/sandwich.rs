//! Direct and inverse estimates: E_n against the K-functional and the modulus over a function corpus.

use conekit::approx::{corpus, sandwich_experiment, SandwichConfig};
use conekit::geometry::WeightSpec;

fn main() -> conekit::Result<()> {
    let w = WeightSpec::surface(2, -1.0, 0.0)?;
    let mut cfg = SandwichConfig::new(&w);
    cfg.n_project = 64;
    cfg.quad_degree = 128;
    cfg.ns = vec![4, 8, 16, 32];
    let rep = sandwich_experiment(&cfg, &corpus())?;
    for row in rep
        .rows
        .iter()
        .filter(|r| r.function == "abs_t_half" || r.function == "step_t")
    {
        println!(
            "{:<10} r {} n {:>2}: E_n {:.3e}  K {:.3e}  omega {:.3e}",
            row.function, row.r, row.n, row.e_n, row.k_hat, row.omega
        );
    }
    for b in &rep.bands {
        println!(
            "r {}: direct band {:.3}, inverse band {:.3}, omega/K in [{:.3}, {:.3}]",
            b.r, b.direct_band, b.inverse_band, b.ratio_min, b.ratio_max
        );
    }
    Ok(())
}
