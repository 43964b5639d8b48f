//! Needlet tight frame: Parseval identity and reconstruction of band-limited functions.

use conekit::approx::SpectralCoeffs;
use conekit::frames::{build_frame_with, FrameOptions};
use conekit::geometry::WeightSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> conekit::Result<()> {
    let w = WeightSpec::cone(2, 0.0, 0.0)?;
    let frame = build_frame_with(&w, 4, 0.5, &FrameOptions::default())?;
    for l in &frame.levels {
        println!(
            "level {}: rule degree {:>2}, eps {:.4}, {:>5} elements",
            l.j,
            l.rule_degree,
            l.eps,
            l.len()
        );
    }
    let deg = frame.exact_degree();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c = (0..w.dim_pi(deg))
        .map(|_| rng.gen_range(-1.0..1.0))
        .collect();
    let f = SpectralCoeffs::from_vec(&w, deg, c)?;
    let report = frame.parseval_check(&f)?;
    let back = frame.synthesize(&frame.analyze_spectral(&f)?)?.resized(deg);
    println!(
        "degree {deg}: sum of squared coefficients {:.12}, ||f||^2 {:.12}, defect {:.1e}, reconstruction error {:.1e}",
        report.frame_energy,
        report.norm_sq,
        report.defect,
        back.axpby(1.0, &f, -1.0).norm() / f.norm()
    );
    Ok(())
}
