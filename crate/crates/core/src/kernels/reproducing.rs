//! Reproducing kernels, localized kernels and Christoffel functions.

use serde::{Deserialize, Serialize};

use super::addition::{AdditionKernel, KernelConfig};
use super::basis::OrthoBasis;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::specfun::{cutoff_eval, Cutoff};

/// How a reproducing kernel is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelMethod {
    /// Sum of products of orthonormal basis elements.
    BasisSum,
    /// Integral of zonal polynomials from the addition formula.
    Addition,
}

/// Reproducing kernel of the space of orthogonal polynomials of degree n.
pub fn reprod_kernel(
    cfg: &KernelConfig,
    n: usize,
    p: &Point,
    q: &Point,
    method: KernelMethod,
) -> Result<f64> {
    match method {
        KernelMethod::BasisSum => {
            let b = OrthoBasis::new(&cfg.weight, n)?;
            Ok(basis_sum(&b, n, p, q))
        }
        KernelMethod::Addition => {
            let k = AdditionKernel::new(cfg, n)?;
            let mut c = vec![0.0; n + 1];
            c[n] = 1.0;
            Ok(k.series(&c, p, q))
        }
    }
}

/// Basis-sum kernel of degree n from a prepared basis.
pub fn basis_sum(b: &OrthoBasis, n: usize, p: &Point, q: &Point) -> f64 {
    let mut u = Vec::new();
    let mut v = Vec::new();
    b.eval_all(p, &mut u);
    b.eval_all(q, &mut v);
    b.degree_range(n).map(|i| u[i] * v[i]).sum()
}

/// Coefficients a(k/n) of the localized kernel, k = 0..=2n.
pub fn localized_coeffs(n: usize, cutoff: Cutoff) -> Vec<f64> {
    (0..=2 * n)
        .map(|k| cutoff_eval(cutoff, k as f64 / n as f64))
        .collect()
}

/// Coefficients a(k/n) mu(k)^{r/2} of the fractional localized kernel.
pub fn localized_frac_coeffs(
    cfg: &KernelConfig,
    n: usize,
    r: f64,
    cutoff: Cutoff,
) -> Result<Vec<f64>> {
    (0..=2 * n)
        .map(|k| {
            Ok(cutoff_eval(cutoff, k as f64 / n as f64) * cfg.weight.eigen_mu(k)?.powf(r / 2.0))
        })
        .collect()
}

/// Kernel evaluator with a prepared addition-formula rule, reusable across many point pairs.
#[derive(Clone, Debug)]
pub struct KernelEvaluator {
    pub cfg: KernelConfig,
    add: AdditionKernel,
}

impl KernelEvaluator {
    /// Evaluator for kernel series of degree up to kmax.
    pub fn new(cfg: &KernelConfig, kmax: usize) -> Result<Self> {
        Ok(Self {
            cfg: *cfg,
            add: AdditionKernel::new(cfg, kmax)?,
        })
    }

    pub fn kmax(&self) -> usize {
        self.add.kmax
    }

    /// Translation of a function of one variable, see [`AdditionKernel::transform`].
    pub fn transform(&self, g: impl Fn(f64) -> f64, p: &Point, q: &Point) -> f64 {
        self.add.transform(g, p, q)
    }

    pub fn series(&self, coeffs: &[f64], p: &Point, q: &Point) -> f64 {
        self.add.series(coeffs, p, q)
    }

    pub fn reprod(&self, n: usize, p: &Point, q: &Point) -> f64 {
        let mut c = vec![0.0; n + 1];
        c[n] = 1.0;
        self.series(&c, p, q)
    }

    pub fn localized(&self, n: usize, cutoff: Cutoff, p: &Point, q: &Point) -> f64 {
        self.series(&trim(localized_coeffs(n, cutoff)), p, q)
    }

    pub fn christoffel(&self, n: usize, p: &Point) -> f64 {
        1.0 / self.series(&vec![1.0; n + 1], p, p)
    }
}

fn trim(mut c: Vec<f64>) -> Vec<f64> {
    while c.len() > 1 && *c.last().unwrap() == 0.0 {
        c.pop();
    }
    c
}

/// Localized kernel L_n(p, q) = sum_k a(k/n) P_k(p, q).
pub fn localized_kernel(
    cfg: &KernelConfig,
    n: usize,
    cutoff: Cutoff,
    p: &Point,
    q: &Point,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "localized kernel needs n >= 1".into(),
        ));
    }
    let c = trim(localized_coeffs(n, cutoff));
    let k = AdditionKernel::new(cfg, c.len() - 1)?;
    Ok(k.series(&c, p, q))
}

/// Fractional localized kernel sum_k a(k/n) mu(k)^{r/2} P_k(p, q).
pub fn localized_kernel_frac(
    cfg: &KernelConfig,
    n: usize,
    r: f64,
    cutoff: Cutoff,
    p: &Point,
    q: &Point,
) -> Result<f64> {
    if n == 0 || !(r > 0.0) {
        return Err(Error::InvalidParameter(
            "fractional kernel needs n >= 1 and r > 0".into(),
        ));
    }
    let c = trim(localized_frac_coeffs(cfg, n, r, cutoff)?);
    let k = AdditionKernel::new(cfg, c.len() - 1)?;
    Ok(k.series(&c, p, q))
}

/// Christoffel function 1 / K_n(p, p), by the addition formula when available.
pub fn christoffel(cfg: &KernelConfig, n: usize, p: &Point) -> Result<f64> {
    if cfg.weight.localizable() {
        Ok(KernelEvaluator::new(cfg, n)?.christoffel(n, p))
    } else {
        let b = OrthoBasis::new(&cfg.weight, n)?;
        let mut v = Vec::new();
        b.eval_all(p, &mut v);
        Ok(1.0 / v.iter().map(|a| a * a).sum::<f64>())
    }
}
