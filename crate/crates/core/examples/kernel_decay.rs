//! Normalized localization suprema of the kernel L_n for a smooth and a sharp cut-off.

use conekit::geometry::WeightSpec;
use conekit::kernels::{decay_report, probe_pairs, DecayOptions, KernelConfig};
use conekit::specfun::Cutoff;

fn main() -> conekit::Result<()> {
    let w = WeightSpec::surface(2, -1.0, 0.0)?;
    let cfg = KernelConfig::new(w);
    for cutoff in [Cutoff::TypeA, Cutoff::Indicator] {
        let opts = DecayOptions {
            cutoff,
            ..Default::default()
        };
        println!("{cutoff:?}");
        for n in [8usize, 16, 32] {
            let pairs = probe_pairs(&w, n, 100, 0);
            let r = decay_report(&cfg, n, 4.0, &pairs, &opts)?;
            println!(
                "  n {n:>2}: N1 {:.3e}  N2 {:.3e}  N3 {:.4}",
                r.sup_n1, r.sup_n2, r.sup_n3
            );
        }
    }
    Ok(())
}
