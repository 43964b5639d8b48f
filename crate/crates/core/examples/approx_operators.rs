//! Projection, Cesaro means, translation, fractional powers and the near-best multiplier operator.

use conekit::approx::{
    cesaro_mean, frac_diff, near_best_spectral, project_fn, translate, Norm, NormEvaluator,
};
use conekit::geometry::{Point, WeightSpec};
use conekit::specfun::Cutoff;

fn main() -> conekit::Result<()> {
    let w = WeightSpec::cone(2, 0.0, 0.0)?;
    let f = project_fn(&w, 24, |p: &Point| (p.t - 0.5).abs(), 48)?;
    let ev = NormEvaluator::new(&w, 24, Norm::Inf);
    println!("|t - 1/2| projected to degree 24: ||f||_2 {:.6}", f.norm());
    for n in [4usize, 8, 12] {
        let c = cesaro_mean(&f, n, 3.0)?;
        let v = near_best_spectral(&f, n, Cutoff::TypeA);
        println!(
            "n {n:>2}: Cesaro sup error {:.4}, near-best sup error {:.4}",
            ev.norm(&c.axpby(1.0, &f, -1.0))?,
            ev.norm(&v.axpby(1.0, &f, -1.0))?
        );
    }
    for theta in [0.1, 0.5, 1.5] {
        println!(
            "translation theta {theta}: ||T f||_2 / ||f||_2 = {:.6}",
            translate(&f, theta)?.norm() / f.norm()
        );
    }
    let g = project_fn(&w, 6, |p: &Point| p.t * p.t - p.x[0], 12)?;
    println!(
        "||(-D)^(1/2) g||_2 = {:.6}, ||(-D) g||_2 = {:.6}",
        frac_diff(&g, 1.0)?.norm(),
        frac_diff(&g, 2.0)?.norm()
    );
    Ok(())
}
