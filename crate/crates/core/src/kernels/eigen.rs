//! Finite-difference verification that basis elements are eigenfunctions of the second-order
//! operators on the surface (beta = -1) and the cone (beta = 0).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::basis::OrthoBasis;
use crate::error::{Error, Result};
use crate::geometry::{random_unit, Domain, Point, WeightSpec};

/// Worst relative eigen-defect over the tested elements of one degree.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigenCheck {
    pub n: usize,
    pub eigenvalue: f64,
    pub max_rel_err: f64,
}

fn interior_points(w: &WeightSpec, count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let t: f64 = rng.gen_range(0.1..0.9);
            let xi = random_unit(w.d, &mut rng);
            match w.domain {
                Domain::Surface => Point::on_ray(&xi, t),
                Domain::Cone => {
                    let rho: f64 = rng.gen_range(0.0..0.9);
                    let mut p = Point::on_ray(&xi, t * rho);
                    p.t = t;
                    p
                }
            }
        })
        .collect()
}

/// Applies the second-order operator to every basis element at p by central differences.
fn apply_operator(b: &OrthoBasis, p: &Point, h: f64) -> Vec<f64> {
    let w = &b.weight;
    let d = w.d;
    let df = d as f64;
    let mut buf = Vec::new();
    let mut at = |q: Point| {
        b.eval_all(&q, &mut buf);
        buf.clone()
    };
    let f0 = at(*p);
    match w.domain {
        Domain::Surface => {
            let xi = p.direction(d);
            let fp = at(Point::on_ray(&xi[..d], p.t + h));
            let fm = at(Point::on_ray(&xi[..d], p.t - h));
            let t = p.t;
            (0..b.len())
                .map(|i| {
                    let m = b.label(i).m as f64;
                    let d2 = (fp[i] - 2.0 * f0[i] + fm[i]) / (h * h);
                    let d1 = (fp[i] - fm[i]) / (2.0 * h);
                    t * (1.0 - t) * d2 + (df - 1.0 - (df + w.gamma) * t) * d1
                        - m * (m + df - 2.0) / t * f0[i]
                })
                .collect()
        }
        Domain::Cone => {
            // coordinates z = (x_1..x_d, t), t stored at index d
            let shift = |dz: &[(usize, f64)]| {
                let mut q = *p;
                for &(k, v) in dz {
                    if k == d {
                        q.t += v;
                    } else {
                        q.x[k] += v;
                    }
                }
                q
            };
            let nvar = d + 1;
            let mut grad = vec![vec![0.0; b.len()]; nvar];
            let mut hess = vec![vec![vec![0.0; b.len()]; nvar]; nvar];
            for a in 0..nvar {
                let fp = at(shift(&[(a, h)]));
                let fm = at(shift(&[(a, -h)]));
                for i in 0..b.len() {
                    grad[a][i] = (fp[i] - fm[i]) / (2.0 * h);
                    hess[a][a][i] = (fp[i] - 2.0 * f0[i] + fm[i]) / (h * h);
                }
                for c in 0..a {
                    let fpp = at(shift(&[(a, h), (c, h)]));
                    let fpm = at(shift(&[(a, h), (c, -h)]));
                    let fmp = at(shift(&[(a, -h), (c, h)]));
                    let fmm = at(shift(&[(a, -h), (c, -h)]));
                    for i in 0..b.len() {
                        let v = (fpp[i] - fpm[i] - fmp[i] + fmm[i]) / (4.0 * h * h);
                        hess[a][c][i] = v;
                        hess[c][a][i] = v;
                    }
                }
            }
            let t = p.t;
            let x = &p.x[..d];
            (0..b.len())
                .map(|i| {
                    let mut v = t * (1.0 - t) * hess[d][d][i];
                    let mut x_grad = 0.0;
                    for a in 0..d {
                        v += 2.0 * (1.0 - t) * x[a] * hess[a][d][i];
                        v += (t - x[a] * x[a]) * hess[a][a][i];
                        for c in 0..a {
                            v -= 2.0 * x[a] * x[c] * hess[a][c][i];
                        }
                        x_grad += x[a] * grad[a][i];
                    }
                    v += (2.0 * w.mu + df) * grad[d][i];
                    v -= (2.0 * w.mu + w.gamma + df + 1.0) * (x_grad + t * grad[d][i]);
                    v
                })
                .collect()
        }
    }
}

/// Checks D S = -mu(n) S for every basis element of degree <= nmax at `points` interior points.
/// The defect is measured relative to |mu(n)| times the largest |S| over the sample.
pub fn eigen_check(
    w: &WeightSpec,
    nmax: usize,
    points: usize,
    h: f64,
    seed: u64,
) -> Result<Vec<EigenCheck>> {
    w.eigen_mu(0)?;
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(
            "finite-difference step must be positive".into(),
        ));
    }
    let b = OrthoBasis::new(w, nmax)?;
    let pts = interior_points(w, points, seed);
    let mut vals = Vec::with_capacity(pts.len());
    let mut ops = Vec::with_capacity(pts.len());
    let mut buf = Vec::new();
    for p in &pts {
        b.eval_all(p, &mut buf);
        vals.push(buf.clone());
        ops.push(apply_operator(&b, p, h));
    }
    let mut out = Vec::new();
    for n in 0..=nmax {
        let lam = w.eigen_mu(n)?;
        let mut worst: f64 = 0.0;
        for i in b.degree_range(n) {
            let scale = vals.iter().map(|v| v[i].abs()).fold(0.0, f64::max);
            for (v, o) in vals.iter().zip(&ops) {
                let err = (o[i] + lam * v[i]).abs();
                let rel = if n == 0 { err } else { err / (lam * scale) };
                worst = worst.max(rel);
            }
        }
        out.push(EigenCheck {
            n,
            eigenvalue: -lam,
            max_rel_err: worst,
        });
    }
    Ok(out)
}
