//! Weighted measure of intrinsic caps: adaptive quadrature against the closed form.

use conekit::geometry::{cap_measure_formula, cap_measure_quad, Point, WeightSpec};

fn main() -> conekit::Result<()> {
    let weights = [
        WeightSpec::surface(2, -1.0, 0.0)?,
        WeightSpec::cone(2, 0.0, 0.0)?,
        WeightSpec::cone(2, 0.0, 1.0)?,
    ];
    for w in &weights {
        println!("{:?} gamma {} mu {}", w.domain, w.gamma, w.mu);
        println!(
            "{:>6} {:>6} {:>12} {:>12} {:>8}",
            "t", "r", "quad", "formula", "ratio"
        );
        for &t in &[0.0, 0.1, 0.5, 1.0] {
            let p = Point::on_ray(&[0.8, 0.0], t);
            for &r in &[0.02, 0.1, 0.5] {
                let q = cap_measure_quad(w, &p, r)?;
                let f = cap_measure_formula(w, &p, r);
                println!("{t:>6} {r:>6} {q:>12.4e} {f:>12.4e} {:>8.3}", q / f);
            }
        }
    }
    Ok(())
}
