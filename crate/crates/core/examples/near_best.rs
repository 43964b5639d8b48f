//! Discrete near-best operator from a positive cubature rule, applied to sampled functions.

use conekit::approx::{corpus, NearBest, Norm, NormEvaluator};
use conekit::geometry::WeightSpec;
use conekit::specfun::Cutoff;

fn main() -> conekit::Result<()> {
    let w = WeightSpec::surface(2, -1.0, 0.0)?;
    let fs = corpus();
    for n in [4usize, 8, 16] {
        let op = NearBest::build(&w, n, Cutoff::TypeA, 0)?;
        let ev = NormEvaluator::new(&w, 2 * n, Norm::Inf);
        let grid = ev.grid().to_vec();
        let mut line = format!("n {n:>2} ({} nodes):", op.rule.nodes.len());
        for c in fs
            .iter()
            .filter(|c| ["abs_t_half", "exp_t_x1", "cos_mix"].contains(&c.name))
        {
            let approx = op.apply(c.f)?;
            let err = approx
                .eval_many(&grid)?
                .iter()
                .zip(&grid)
                .map(|(v, p)| (v - (c.f)(p)).abs())
                .fold(0.0, f64::max);
            line += &format!("  {} {err:.2e}", c.name);
        }
        println!("{line}");
    }
    Ok(())
}
