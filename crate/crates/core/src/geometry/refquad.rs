//! Product quadrature rules exact on polynomials of a given degree, used as ground truth.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::point::Point;
use super::weight::{Domain, WeightSpec};
use crate::error::Result;
use crate::specfun::{gauss_jacobi, gauss_legendre, JacobiParams};

/// Cubature rule: nodes, weights, polynomial exactness degree and moment residual.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CubatureRule {
    pub nodes: Vec<Point>,
    pub weights: Vec<f64>,
    pub degree: usize,
    pub residual: f64,
}

impl CubatureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(&Point) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| w * f(p))
            .sum()
    }
}

/// Product rule: heights times an inner rule on the sphere (surface) or the ball (cone).
#[derive(Clone, Debug)]
pub struct ReferenceQuadrature {
    pub weight: WeightSpec,
    pub degree: usize,
    pub t_nodes: Vec<f64>,
    pub t_weights: Vec<f64>,
    /// Unit directions (surface) or ball points (cone).
    pub inner_nodes: Vec<[f64; 3]>,
    pub inner_weights: Vec<f64>,
    /// Number of equispaced azimuths in the inner rule; the inner rule is azimuth-minor.
    pub n_azimuth: usize,
    pub rule: CubatureRule,
}

/// Exact product rule of the given degree for the weight.
pub fn reference_quadrature(w: &WeightSpec, degree: usize) -> Result<ReferenceQuadrature> {
    w.validate()?;
    let n = degree;
    let mt = (n + 1).div_ceil(2) + 1;
    let tr = gauss_jacobi(mt, JacobiParams::new(w.gamma, w.t_exponent())?, [0.0, 1.0])?;
    let na = n + 1;
    // sphere S^{d-1} rule
    let mut sph: Vec<([f64; 3], f64)> = Vec::new();
    match w.d {
        2 => {
            for q in 0..na {
                let ph = 2.0 * PI * q as f64 / na as f64;
                sph.push(([ph.cos(), ph.sin(), 0.0], 1.0 / na as f64));
            }
        }
        _ => {
            let gl = gauss_legendre(n.div_ceil(2) + 1, [-1.0, 1.0])?;
            for (z, wz) in gl.nodes.iter().zip(&gl.weights) {
                let s = ((1.0 - z) * (1.0 + z)).sqrt();
                for q in 0..na {
                    let ph = 2.0 * PI * q as f64 / na as f64;
                    sph.push(([s * ph.cos(), s * ph.sin(), *z], wz / na as f64));
                }
            }
        }
    }
    let inner: Vec<([f64; 3], f64)> = match w.domain {
        Domain::Surface => sph,
        Domain::Cone => {
            let mr = n / 4 + 2;
            let rr = gauss_jacobi(
                mr,
                JacobiParams::new(w.mu - 0.5, (w.d as f64 - 2.0) / 2.0)?,
                [0.0, 1.0],
            )?;
            let mut v = Vec::with_capacity(mr * sph.len());
            for (r, wr) in rr.nodes.iter().zip(&rr.weights) {
                let rho = r.sqrt();
                for (xi, ws) in &sph {
                    v.push(([rho * xi[0], rho * xi[1], rho * xi[2]], wr * ws));
                }
            }
            v
        }
    };
    let mut nodes = Vec::with_capacity(tr.len() * inner.len());
    let mut weights = Vec::with_capacity(nodes.capacity());
    for (t, wt) in tr.nodes.iter().zip(&tr.weights) {
        for (u, wu) in &inner {
            let mut p = Point::on_ray(&u[..w.d], *t);
            p.t = *t;
            nodes.push(p);
            weights.push(wt * wu);
        }
    }
    Ok(ReferenceQuadrature {
        weight: *w,
        degree,
        t_nodes: tr.nodes.clone(),
        t_weights: tr.weights.clone(),
        inner_nodes: inner.iter().map(|p| p.0).collect(),
        inner_weights: inner.iter().map(|p| p.1).collect(),
        n_azimuth: na,
        rule: CubatureRule {
            nodes,
            weights,
            degree,
            residual: 0.0,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lgamma(mut x: f64) -> f64 {
        let mut acc = 0.0;
        while x < 12.0 {
            acc -= x.ln();
            x += 1.0;
        }
        let x2 = x * x;
        acc + (x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * x)
            - 1.0 / (360.0 * x * x2)
            + 1.0 / (1260.0 * x2 * x2 * x)
    }

    fn beta(a: f64, b: f64) -> f64 {
        (lgamma(a) + lgamma(b) - lgamma(a + b)).exp()
    }

    /// Normalized moment of cos^{p} phi sin^{q} phi over the circle (p, q even), via Beta functions.
    fn circle_moment(p: usize, q: usize) -> f64 {
        if p % 2 == 1 || q % 2 == 1 {
            return 0.0;
        }
        beta((p as f64 + 1.0) / 2.0, (q as f64 + 1.0) / 2.0) / PI
    }

    /// Monomial oracle on the surface d = 2: x1^a x2^b t^c with x = t (cos, sin).
    fn surface_moment(w: &WeightSpec, a: usize, b: usize, c: usize) -> f64 {
        let e = w.t_exponent();
        let k = (a + b + c) as f64;
        circle_moment(a, b) * beta(e + 1.0 + k, w.gamma + 1.0) / beta(e + 1.0, w.gamma + 1.0)
    }

    /// Monomial oracle on the cone d = 2: x1^a x2^b t^c with x = t rho (cos, sin).
    fn cone_moment(w: &WeightSpec, a: usize, b: usize, c: usize) -> f64 {
        let e = w.t_exponent();
        let k = (a + b + c) as f64;
        let tpart = beta(e + 1.0 + k, w.gamma + 1.0) / beta(e + 1.0, w.gamma + 1.0);
        // radial: int rho^{a+b} (1-rho^2)^{mu-1/2} rho drho normalized; r = rho^2
        let m = (a + b) as f64 / 2.0;
        let rpart = beta(1.0 + m, w.mu + 0.5) / beta(1.0, w.mu + 0.5);
        circle_moment(a, b) * tpart * rpart
    }

    #[test]
    fn degree_zero_total_mass() {
        for w in [
            WeightSpec::surface(2, -1.0, 0.0).unwrap(),
            WeightSpec::cone(3, 1.5, 0.5).unwrap(),
        ] {
            let q = reference_quadrature(&w, 0).unwrap();
            assert!((q.rule.weights.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn exact_on_random_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for w in [
            WeightSpec::surface(2, -1.0, 0.0).unwrap(),
            WeightSpec::surface(2, -0.5, 1.5).unwrap(),
            WeightSpec::cone(2, 0.0, 0.0).unwrap(),
            WeightSpec::cone(2, -0.5, 1.0).unwrap(),
        ] {
            for n in [3usize, 8, 13] {
                let q = reference_quadrature(&w, n).unwrap();
                for _ in 0..50 {
                    let mut terms = Vec::new();
                    for _ in 0..6 {
                        let a = rng.gen_range(0..=n);
                        let b = rng.gen_range(0..=(n - a));
                        let c = rng.gen_range(0..=(n - a - b));
                        terms.push((a, b, c, rng.gen_range(-1.0..1.0)));
                    }
                    let f = |p: &Point| -> f64 {
                        terms
                            .iter()
                            .map(|&(a, b, c, k)| {
                                k * p.x[0].powi(a as i32)
                                    * p.x[1].powi(b as i32)
                                    * p.t.powi(c as i32)
                            })
                            .sum()
                    };
                    let got = q.rule.integrate(f);
                    let want: f64 = terms
                        .iter()
                        .map(|&(a, b, c, k)| {
                            k * match w.domain {
                                Domain::Surface => surface_moment(&w, a, b, c),
                                Domain::Cone => cone_moment(&w, a, b, c),
                            }
                        })
                        .sum();
                    let scale: f64 = terms.iter().map(|t| t.3.abs()).sum();
                    assert!(
                        (got - want).abs() < 1e-11 * scale,
                        "{w:?} n={n}: {got} vs {want}"
                    );
                }
            }
        }
    }
}
