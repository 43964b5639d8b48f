//! Maximal eps-separated sets on the conic surface and the solid cone with their partition cells.

use conekit::geometry::{build_separated_set, Domain, WeightSpec};

fn main() -> conekit::Result<()> {
    for (domain, w) in [
        (Domain::Surface, WeightSpec::surface(2, -1.0, 0.0)?),
        (Domain::Cone, WeightSpec::cone(2, 0.0, 0.5)?),
    ] {
        for eps in [0.3, 0.15, 0.1] {
            let s = build_separated_set(domain, 2, eps, 0)?;
            let masses = s.cell_masses(&w);
            let (lo, hi) = masses
                .iter()
                .fold((f64::INFINITY, 0.0f64), |a, &m| (a.0.min(m), a.1.max(m)));
            println!(
                "{domain:?} eps {eps:.2}: {} nodes on {} rings, min separation {:.4}, covering {:.4}, cell mass in [{lo:.2e}, {hi:.2e}], total {:.12}",
                s.len(),
                s.rings.len(),
                s.min_separation(),
                s.covering_estimate(5000, 1),
                masses.iter().sum::<f64>()
            );
        }
    }
    Ok(())
}
