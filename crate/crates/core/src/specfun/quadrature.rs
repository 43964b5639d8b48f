use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::jacobi::{jacobi_eval, JacobiParams};
use crate::error::{Error, Result};

/// One-dimensional quadrature rule with positive weights summing to the unit weight mass.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadratureRule1D {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub exact_degree: usize,
}

impl QuadratureRule1D {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Two-point rule on {-1, 1}: the limit of the symmetric Jacobi weight as the exponent tends to -1.
    pub fn endpoint_average() -> Self {
        Self {
            nodes: vec![-1.0, 1.0],
            weights: vec![0.5, 0.5],
            exact_degree: 1,
        }
    }

    /// Affine image on [a, b]; the weight becomes (b - x)^alpha (x - a)^beta.
    pub fn mapped(&self, a: f64, b: f64) -> Self {
        Self {
            nodes: self
                .nodes
                .iter()
                .map(|&y| a + (b - a) * (y + 1.0) / 2.0)
                .collect(),
            weights: self.weights.clone(),
            exact_degree: self.exact_degree,
        }
    }
}

/// Gauss-Jacobi rule with `m` nodes for (b - x)^alpha (x - a)^beta on [a, b], unit mass.
pub fn gauss_jacobi(m: usize, p: JacobiParams, interval: [f64; 2]) -> Result<QuadratureRule1D> {
    let base = gauss_jacobi_cached(m, p)?;
    if interval == [-1.0, 1.0] {
        Ok((*base).clone())
    } else {
        Ok(base.mapped(interval[0], interval[1]))
    }
}

type Key = (usize, u64, u64);

fn cache() -> &'static Mutex<HashMap<Key, Arc<QuadratureRule1D>>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<QuadratureRule1D>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared, memoized Gauss-Jacobi rule on [-1, 1].
pub fn gauss_jacobi_cached(m: usize, p: JacobiParams) -> Result<Arc<QuadratureRule1D>> {
    let key = (m, p.alpha.to_bits(), p.beta.to_bits());
    if let Some(r) = cache().lock().unwrap().get(&key) {
        return Ok(r.clone());
    }
    let rule = Arc::new(golub_welsch(m, p)?);
    cache().lock().unwrap().insert(key, rule.clone());
    Ok(rule)
}

fn golub_welsch(m: usize, p: JacobiParams) -> Result<QuadratureRule1D> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "gauss_jacobi needs at least one node".into(),
        ));
    }
    let p = JacobiParams::new(p.alpha, p.beta)?;
    let (a, b) = (p.alpha, p.beta);
    let s = a + b;
    let mut t = DMatrix::<f64>::zeros(m, m);
    for k in 0..m {
        let kf = k as f64;
        t[(k, k)] = if k == 0 {
            (b - a) / (s + 2.0)
        } else {
            (b * b - a * a) / ((2.0 * kf + s) * (2.0 * kf + s + 2.0))
        };
        if k + 1 < m {
            let j = kf + 1.0;
            let off2 = if k == 0 {
                4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + s) * (2.0 + s) * (3.0 + s))
            } else {
                4.0 * j * (j + a) * (j + b) * (j + s)
                    / ((2.0 * j + s).powi(2) * (2.0 * j + s + 1.0) * (2.0 * j + s - 1.0))
            };
            let off = off2.sqrt();
            t[(k, k + 1)] = off;
            t[(k + 1, k)] = off;
        }
    }
    let eig = SymmetricEigen::try_new(t, f64::EPSILON, 10_000).ok_or(Error::EigenSolver {
        m,
        alpha: a,
        beta: b,
    })?;
    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| (eig.eigenvalues[i], eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));

    // Newton polish on P_m and weights from the derivative formula; fall back to the
    // eigenvector weights if polishing degrades anything.
    let dp = JacobiParams {
        alpha: a + 1.0,
        beta: b + 1.0,
    };
    let dfac = (m as f64 + s + 1.0) / 2.0;
    let mut nodes = Vec::with_capacity(m);
    let mut raw = Vec::with_capacity(m);
    let mut ok = true;
    for &(x0, _) in &pairs {
        let mut x = x0;
        for _ in 0..3 {
            let f = jacobi_eval(m, p, x);
            let df = dfac * jacobi_eval(m - 1, dp, x);
            if df == 0.0 || !df.is_finite() {
                break;
            }
            let step = f / df;
            if step.abs() > 1e-6 {
                break;
            }
            x -= step;
        }
        let df = dfac * jacobi_eval(m - 1, dp, x);
        let w = 1.0 / ((1.0 - x * x) * df * df);
        if !(w.is_finite() && w > 0.0) || x <= -1.0 || x >= 1.0 {
            ok = false;
        }
        nodes.push(x);
        raw.push(w);
    }
    let weights: Vec<f64> = if ok {
        let tot: f64 = raw.iter().sum();
        raw.iter().map(|w| w / tot).collect()
    } else {
        nodes = pairs.iter().map(|p| p.0).collect();
        let tot: f64 = pairs.iter().map(|p| p.1).sum();
        pairs.iter().map(|p| p.1 / tot).collect()
    };
    Ok(QuadratureRule1D {
        nodes,
        weights,
        exact_degree: 2 * m - 1,
    })
}

/// Gauss-Legendre rule on [a, b] with unit mass.
pub fn gauss_legendre(m: usize, interval: [f64; 2]) -> Result<QuadratureRule1D> {
    gauss_jacobi(
        m,
        JacobiParams {
            alpha: 0.0,
            beta: 0.0,
        },
        interval,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beta_fn(x: f64, y: f64) -> f64 {
        // Independent oracle: Beta through the Lanczos-free integer/half-integer recursion is awkward,
        // so use the reflection-free log-gamma from std's f64::ln_gamma substitute (Stirling series).
        (lgamma(x) + lgamma(y) - lgamma(x + y)).exp()
    }

    /// Stirling series after shifting the argument above 12.
    fn lgamma(mut x: f64) -> f64 {
        let mut acc = 0.0;
        while x < 12.0 {
            acc -= x.ln();
            x += 1.0;
        }
        let x2 = x * x;
        acc + (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * x)
            - 1.0 / (360.0 * x * x2)
            + 1.0 / (1260.0 * x2 * x2 * x)
            - 1.0 / (1680.0 * x2 * x2 * x2 * x)
    }

    #[test]
    fn single_node_midpoint() {
        let r = gauss_jacobi(1, JacobiParams::new(0.0, 0.0).unwrap(), [-1.0, 1.0]).unwrap();
        assert!(r.nodes[0].abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn legendre_fourth_moment() {
        let r = gauss_legendre(5, [-1.0, 1.0]).unwrap();
        let v = r.integrate(|x| x.powi(4));
        assert!((v - 1.0 / 5.0).abs() < 1e-14);
    }

    #[test]
    fn beta_oracle_on_unit_interval() {
        // weight (1 - t)^1.5 on [0,1], integrand t^3
        let g = 1.5;
        let r = gauss_jacobi(8, JacobiParams::new(g, 0.0).unwrap(), [0.0, 1.0]).unwrap();
        let v = r.integrate(|t| t.powi(3));
        let want = beta_fn(4.0, 2.5) / beta_fn(1.0, 2.5);
        assert!((v - want).abs() < 1e-12 * want, "{v} {want}");
    }

    #[test]
    fn moments_many_params() {
        for &(a, b) in &[
            (-0.5, -0.5),
            (0.0, 2.0),
            (3.0, -0.7),
            (1.5, 1.5),
            (-0.9, 0.3),
        ] {
            for m in [3usize, 10, 40] {
                let r = gauss_jacobi(m, JacobiParams::new(a, b).unwrap(), [0.0, 1.0]).unwrap();
                assert!(r.weights.iter().all(|&w| w > 0.0));
                assert!((r.weights.iter().sum::<f64>() - 1.0).abs() < 1e-13);
                // weight (1-t)^a t^b; moment of t^k is B(b+1+k, a+1)/B(b+1, a+1)
                for k in 0..(2 * m) {
                    let v = r.integrate(|t| t.powi(k as i32));
                    let want = beta_fn(b + 1.0 + k as f64, a + 1.0) / beta_fn(b + 1.0, a + 1.0);
                    assert!(
                        (v - want).abs() < 1e-12 * want.max(1e-300),
                        "a={a} b={b} m={m} k={k}: {v} vs {want}"
                    );
                }
            }
        }
    }
}
