//! Reproducing kernels through the addition formulas: integrals of even zonal polynomials over a
//! tensor Gauss-Jacobi rule, with the degenerate exponents replaced by two-point averages.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Domain, Point, WeightSpec};
use crate::specfun::gegenbauer::even_zonal_factor;
use crate::specfun::{gauss_jacobi_cached, JacobiParams, QuadratureRule1D};

/// Configuration of kernel evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelConfig {
    pub weight: WeightSpec,
    /// Gauss-Jacobi nodes per axis; `None` picks kmax + 4 for the largest degree in use.
    pub quad_order_per_axis: Option<usize>,
}

impl KernelConfig {
    pub fn new(weight: WeightSpec) -> Self {
        Self {
            weight,
            quad_order_per_axis: None,
        }
    }
}

/// Prepared addition-formula integrator for kernel series up to degree `kmax`.
#[derive(Clone, Debug)]
pub struct AdditionKernel {
    pub weight: WeightSpec,
    pub kmax: usize,
    pub lambda: f64,
    /// (u, v1, v2, weight); u is unused on the surface.
    nodes: Vec<[f64; 4]>,
    /// Z_{2k} = g_k P_k^{(lambda - 1/2, -1/2)}(2 z^2 - 1).
    g: Vec<f64>,
    /// Constant making the degree-zero kernel equal to one.
    pub normalization: f64,
    /// Jacobi recurrence coefficients for P_k^{(lambda-1/2,-1/2)}.
    rec: Vec<[f64; 3]>,
}

fn axis_rule(exponent: f64, q: usize) -> Result<QuadratureRule1D> {
    if exponent <= -1.0 {
        Ok(QuadratureRule1D::endpoint_average())
    } else {
        Ok((*gauss_jacobi_cached(q, JacobiParams::new(exponent, exponent)?)?).clone())
    }
}

/// Symmetric rule restricted to non-negative nodes with weights folded.
fn fold(r: &QuadratureRule1D) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for (&x, &w) in r.nodes.iter().zip(&r.weights) {
        if x > 1e-15 {
            out.push((x, 2.0 * w));
        } else if x.abs() <= 1e-15 {
            out.push((0.0, w));
        }
    }
    out
}

impl AdditionKernel {
    pub fn new(cfg: &KernelConfig, kmax: usize) -> Result<Self> {
        let w = cfg.weight;
        w.validate()?;
        if !w.localizable() {
            return Err(Error::Unsupported(format!("no addition formula for {w:?}")));
        }
        let q = cfg.quad_order_per_axis.unwrap_or(kmax + 4).max(1);
        let d = w.d as f64;
        let v2 = axis_rule(w.gamma - 0.5, q)?;
        let mut nodes = Vec::new();
        match w.domain {
            Domain::Surface => {
                let v1 = axis_rule((d - 4.0) / 2.0, q)?;
                for &(a, wa) in &fold(&v1) {
                    for (&b, &wb) in v2.nodes.iter().zip(&v2.weights) {
                        nodes.push([0.0, a, b, wa * wb]);
                    }
                }
            }
            Domain::Cone => {
                let alpha = w.mu + (d - 1.0) / 2.0;
                let ur = axis_rule(w.mu - 1.0, q)?;
                let v1 = axis_rule(alpha - 1.0, q)?;
                for (&u, &wu) in ur.nodes.iter().zip(&ur.weights) {
                    for &(a, wa) in &fold(&v1) {
                        for (&b, &wb) in v2.nodes.iter().zip(&v2.weights) {
                            nodes.push([u, a, b, wu * wa * wb]);
                        }
                    }
                }
            }
        }
        let lambda = w.zonal_lambda();
        let g: Vec<f64> = (0..=kmax).map(|k| even_zonal_factor(k, lambda)).collect();
        let (a, b) = (lambda - 0.5, -0.5);
        let rec = (0..=kmax)
            .map(|k| {
                if k < 2 {
                    return [0.0; 3];
                }
                let n = k as f64;
                let s = 2.0 * n + a + b;
                let c1 = 2.0 * n * (n + a + b) * (s - 2.0);
                [
                    (s - 1.0) * (a * a - b * b) / c1,
                    (s - 2.0) * (s - 1.0) * s / c1,
                    2.0 * (n + a - 1.0) * (n + b - 1.0) * s / c1,
                ]
            })
            .collect();
        let mut k = Self {
            weight: w,
            kmax,
            lambda,
            nodes,
            g,
            normalization: 1.0,
            rec,
        };
        let total: f64 = k.nodes.iter().map(|n| n[3]).sum();
        k.normalization = 1.0 / total;
        Ok(k)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Translation T g(p, q): the average of g(2 z^2 - 1) over the addition-formula measure, exact
    /// for polynomials g of degree <= kmax.
    pub fn transform(&self, g: impl Fn(f64) -> f64, p: &Point, q: &Point) -> f64 {
        let d = self.weight.d;
        let (t, s) = (p.t, q.t);
        let xy: f64 = p.x[..d].iter().zip(&q.x[..d]).map(|(a, b)| a * b).sum();
        let bb = ((1.0 - t).max(0.0) * (1.0 - s).max(0.0)).sqrt();
        let rr = match self.weight.domain {
            Domain::Surface => 0.0,
            Domain::Cone => {
                let x2: f64 = p.x[..d].iter().map(|a| a * a).sum();
                let y2: f64 = q.x[..d].iter().map(|a| a * a).sum();
                ((t * t - x2).max(0.0) * (s * s - y2).max(0.0)).sqrt()
            }
        };
        let total: f64 = self
            .nodes
            .iter()
            .map(|nd| {
                let a = (0.5 * (t * s + xy + rr * nd[0])).max(0.0).sqrt();
                let z = nd[1] * a + nd[2] * bb;
                nd[3] * g(2.0 * z * z - 1.0)
            })
            .sum();
        total * self.normalization
    }

    /// Sum over k of coeffs[k] * P_k(p, q); coefficients beyond kmax are an error.
    pub fn series(&self, coeffs: &[f64], p: &Point, q: &Point) -> f64 {
        assert!(coeffs.len() <= self.kmax + 1, "series length exceeds kmax");
        let kk = coeffs.len();
        if kk == 0 {
            return 0.0;
        }
        let c: Vec<f64> = coeffs.iter().zip(&self.g).map(|(a, b)| a * b).collect();
        let d = self.weight.d;
        let (t, s) = (p.t, q.t);
        let xy: f64 = p.x[..d].iter().zip(&q.x[..d]).map(|(a, b)| a * b).sum();
        let bb = ((1.0 - t).max(0.0) * (1.0 - s).max(0.0)).sqrt();
        let rr = match self.weight.domain {
            Domain::Surface => 0.0,
            Domain::Cone => {
                let x2: f64 = p.x[..d].iter().map(|a| a * a).sum();
                let y2: f64 = q.x[..d].iter().map(|a| a * a).sum();
                ((t * t - x2).max(0.0) * (s * s - y2).max(0.0)).sqrt()
            }
        };
        let a_of_u = |u: f64| (0.5 * (t * s + xy + rr * u)).max(0.0).sqrt();
        let a_const = a_of_u(0.0);
        let al = self.lambda - 0.5;
        let p1c = (al + 0.5, al + 1.5);
        let mut total = 0.0;
        let mut last_u = f64::NAN;
        let mut a_u = a_const;
        for nd in &self.nodes {
            if self.weight.domain == Domain::Cone && nd[0] != last_u {
                last_u = nd[0];
                a_u = a_of_u(nd[0]);
            }
            let z = nd[1] * a_u + nd[2] * bb;
            let x = 2.0 * z * z - 1.0;
            // P_0 = 1, P_1 = ((a - b) + (a + b + 2) x)/2 with a = lambda - 1/2, b = -1/2
            let mut acc = c[0];
            if kk > 1 {
                let mut pm2 = 1.0;
                let mut pm1 = 0.5 * (p1c.0 + p1c.1 * x);
                acc += c[1] * pm1;
                for k in 2..kk {
                    let r = &self.rec[k];
                    let pk = (r[0] + r[1] * x) * pm1 - r[2] * pm2;
                    acc += c[k] * pk;
                    pm2 = pm1;
                    pm1 = pk;
                }
            }
            total += nd[3] * acc;
        }
        total * self.normalization
    }
}
