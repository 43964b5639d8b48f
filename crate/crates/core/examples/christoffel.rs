//! Christoffel function against the cap measure of radius 1/n.

use conekit::geometry::{cap_measure_formula, Point, WeightSpec};
use conekit::kernels::{KernelConfig, KernelEvaluator};

fn main() -> conekit::Result<()> {
    let w = WeightSpec::surface(2, -1.0, 0.0)?;
    let ev = KernelEvaluator::new(&KernelConfig::new(w), 32)?;
    println!(
        "{:>6} {:>8} {:>8} {:>8} {:>8}",
        "t", "n=4", "n=8", "n=16", "n=32"
    );
    for &t in &[0.0, 0.001, 0.05, 0.3, 0.7, 0.99, 1.0] {
        let p = Point::on_ray(&[1.0, 0.0], t);
        let row: Vec<String> = [4usize, 8, 16, 32]
            .iter()
            .map(|&n| {
                let r = ev.christoffel(n, &p) / cap_measure_formula(&w, &p, 1.0 / n as f64);
                format!("{r:>8.4}")
            })
            .collect();
        println!("{t:>6} {}", row.join(" "));
    }
    Ok(())
}
