//! Expansion coefficients in the orthonormal basis and projection of evaluable functions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{reference_quadrature, Point, WeightSpec};
use crate::kernels::OrthoBasis;

/// Coefficients f_i of f = sum_i f_i phi_i in the orthonormal basis of degree <= `degree`, in the
/// flat basis order (by degree, then height order, then inner index).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralCoeffs {
    pub weight: WeightSpec,
    pub degree: usize,
    pub coeffs: Vec<f64>,
}

impl SpectralCoeffs {
    pub fn zeros(w: &WeightSpec, degree: usize) -> Self {
        Self {
            weight: *w,
            degree,
            coeffs: vec![0.0; w.dim_pi(degree)],
        }
    }

    pub fn from_vec(w: &WeightSpec, degree: usize, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != w.dim_pi(degree) {
            return Err(Error::Shape(format!(
                "{} coefficients for degree {degree} (expected {})",
                coeffs.len(),
                w.dim_pi(degree)
            )));
        }
        Ok(Self {
            weight: *w,
            degree,
            coeffs,
        })
    }

    /// Flat index range of the degree-n block.
    pub fn block(&self, n: usize) -> std::ops::Range<usize> {
        let lo = if n == 0 { 0 } else { self.weight.dim_pi(n - 1) };
        lo..self.weight.dim_pi(n)
    }

    /// Degree of each coefficient.
    pub fn degrees(&self) -> Vec<usize> {
        (0..=self.degree)
            .flat_map(|n| std::iter::repeat(n).take(self.weight.dim_vn(n)))
            .collect()
    }

    /// L2(w) norm, by orthonormality.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Squared norm of the degree-n component.
    pub fn block_energy(&self, n: usize) -> f64 {
        if n > self.degree {
            return 0.0;
        }
        self.coeffs[self.block(n)].iter().map(|c| c * c).sum()
    }

    /// Coefficients truncated or zero-padded to degree n.
    pub fn resized(&self, n: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(self.weight.dim_pi(n), 0.0);
        Self {
            weight: self.weight,
            degree: n,
            coeffs: c,
        }
    }

    /// Applies the degree multiplier m(k) to every coefficient.
    pub fn multiply(&self, m: impl Fn(usize) -> f64) -> Self {
        let mut out = self.clone();
        for n in 0..=self.degree {
            let f = m(n);
            for c in &mut out.coeffs[self.block(n)] {
                *c *= f;
            }
        }
        out
    }

    /// Fallible variant of `multiply`.
    pub fn try_multiply(&self, m: impl Fn(usize) -> Result<f64>) -> Result<Self> {
        let ms: Vec<f64> = (0..=self.degree).map(m).collect::<Result<_>>()?;
        Ok(self.multiply(|k| ms[k]))
    }

    /// Component of exact degree n.
    pub fn proj(&self, n: usize) -> Self {
        self.multiply(|k| if k == n { 1.0 } else { 0.0 })
    }

    /// a * self + b * other, both padded to the larger degree.
    pub fn axpby(&self, a: f64, other: &Self, b: f64) -> Self {
        let n = self.degree.max(other.degree);
        let (x, y) = (self.resized(n), other.resized(n));
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(u, v)| a * u + b * v)
            .collect();
        Self {
            weight: self.weight,
            degree: n,
            coeffs,
        }
    }

    pub fn basis(&self) -> Result<OrthoBasis> {
        OrthoBasis::new(&self.weight, self.degree)
    }

    pub fn eval(&self, p: &Point) -> Result<f64> {
        Ok(self.eval_many(std::slice::from_ref(p))?[0])
    }

    pub fn eval_many(&self, pts: &[Point]) -> Result<Vec<f64>> {
        let b = self.basis()?;
        Ok(b.eval_series_batch(std::slice::from_ref(&self.coeffs), pts)
            .into_iter()
            .map(|v| v[0])
            .collect())
    }
}

/// Values of several expansions of a common weight and degree at the given points: out[point][series].
pub fn eval_batch(
    w: &WeightSpec,
    degree: usize,
    series: &[Vec<f64>],
    pts: &[Point],
) -> Result<Vec<Vec<f64>>> {
    let b = OrthoBasis::new(w, degree)?;
    Ok(b.eval_series_batch(series, pts))
}

/// Inner products of several functions with every basis element of degree <= n, using the product
/// reference rule of the given degree. The inner basis factor depends only on the direction (or ball
/// point) x / t, so it is evaluated once per inner node and shared by every height.
pub fn project_many<F>(
    w: &WeightSpec,
    n: usize,
    fs: &[F],
    quad_degree: usize,
) -> Result<Vec<SpectralCoeffs>>
where
    F: Fn(&Point) -> f64 + Sync,
{
    let q = reference_quadrature(w, quad_degree)?;
    let b = OrthoBasis::new(w, n)?;
    let il = b.inner_len();
    let d = w.d;
    let inner: Vec<Vec<f64>> = q
        .inner_nodes
        .par_iter()
        .map(|u| {
            let mut v = Vec::new();
            b.eval_inner(&Point::new(&u[..d], 1.0), &mut v);
            v
        })
        .collect();
    let pos: Vec<(usize, usize)> = (0..b.len()).map(|i| b.positions(i)).collect();
    let nf = fs.len();
    let len = nf * b.len();
    let tot = q
        .t_nodes
        .par_iter()
        .zip(&q.t_weights)
        .fold(
            || vec![0.0; len],
            |mut out, (&t, &wt)| {
                let mut acc = vec![0.0; nf * il];
                for (u, (iv, wu)) in q.inner_nodes.iter().zip(inner.iter().zip(&q.inner_weights)) {
                    let mut p = Point::on_ray(&u[..d], t);
                    p.t = t;
                    for (k, f) in fs.iter().enumerate() {
                        let s = wt * wu * f(&p);
                        if s != 0.0 {
                            for (a, v) in acc[k * il..(k + 1) * il].iter_mut().zip(iv) {
                                *a += s * v;
                            }
                        }
                    }
                }
                let mut rad = Vec::new();
                b.eval_radial(t, &mut rad);
                for k in 0..nf {
                    for (i, &(r, qq)) in pos.iter().enumerate() {
                        out[k * b.len() + i] += rad[r] * acc[k * il + qq];
                    }
                }
                out
            },
        )
        .reduce(
            || vec![0.0; len],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(tot
        .chunks(b.len().max(1))
        .take(nf)
        .map(|c| SpectralCoeffs {
            weight: *w,
            degree: n,
            coeffs: c.to_vec(),
        })
        .collect())
}

/// Coefficients of f up to degree n with the reference rule of degree `quad_degree`; exact when
/// f is a polynomial and quad_degree >= n + deg f.
pub fn project_fn(
    w: &WeightSpec,
    n: usize,
    f: impl Fn(&Point) -> f64 + Sync,
    quad_degree: usize,
) -> Result<SpectralCoeffs> {
    Ok(project_many(w, n, &[f], quad_degree)?.remove(0))
}
