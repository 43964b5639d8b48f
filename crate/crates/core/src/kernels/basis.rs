//! Orthogonal bases on the surface and the cone, factorized into a height part and an inner part.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Domain, Point, WeightSpec};
use crate::specfun::harmonics::{harmonic_dim, harmonic_offset, solid_harmonics};
use crate::specfun::jacobi::{c_ratio_shift_first, jacobi_eval_all, jacobi_norm};
use crate::specfun::JacobiParams;

/// Label of a basis element: degree n, height order m, ball radial index j (0 on the surface),
/// harmonic degree l and harmonic index h.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisIndex {
    pub n: usize,
    pub m: usize,
    pub j: usize,
    pub l: usize,
    pub h: usize,
}

/// Orthonormal basis of the polynomials of degree <= nmax for a weight; element (n, m, k) equals
/// radial_m(n - m; t) * inner_{m,k}(point).
#[derive(Clone, Debug)]
pub struct OrthoBasis {
    pub weight: WeightSpec,
    pub nmax: usize,
    index: Vec<BasisIndex>,
    degree_off: Vec<usize>,
    inner_off: Vec<usize>,
    rad_off: Vec<usize>,
    /// 1 / sqrt of the height-part norm, laid out like the radial values.
    rad_scale: Vec<f64>,
    /// 1 / sqrt of the ball-part norm per (m, j) for the cone.
    ball_scale: Vec<Vec<f64>>,
    /// Flat positions (radial, inner) of each element.
    pos: Vec<(u32, u32)>,
}

impl OrthoBasis {
    pub fn new(w: &WeightSpec, nmax: usize) -> Result<Self> {
        w.validate()?;
        let d = w.d;
        let e0 = w.t_exponent();
        let mut inner_off = vec![0usize; nmax + 2];
        for m in 0..=nmax {
            inner_off[m + 1] = inner_off[m] + inner_dim(w, m);
        }
        let mut rad_off = vec![0usize; nmax + 2];
        let mut rad_scale = Vec::new();
        for m in 0..=nmax {
            rad_off[m + 1] = rad_off[m] + (nmax - m + 1);
            let p = JacobiParams::new(2.0 * m as f64 + e0, w.gamma)?;
            let c = c_ratio_shift_first(e0, w.gamma, 2 * m);
            for i in 0..=(nmax - m) {
                rad_scale.push(1.0 / (c * jacobi_norm(i, p)).sqrt());
            }
        }
        let b0 = (d as f64 - 2.0) / 2.0;
        let a = w.mu - 0.5;
        let ball_scale: Vec<Vec<f64>> = (0..=nmax)
            .map(|m| {
                (0..=m / 2)
                    .map(|j| {
                        if w.domain == Domain::Cone {
                            let l = m - 2 * j;
                            let c = c_ratio_shift_first(b0, a, l);
                            1.0 / (c * jacobi_norm(
                                j,
                                JacobiParams {
                                    alpha: a,
                                    beta: b0 + l as f64,
                                },
                            ))
                            .sqrt()
                        } else {
                            1.0
                        }
                    })
                    .collect()
            })
            .collect();
        let mut index = Vec::new();
        let mut pos = Vec::new();
        let mut degree_off = vec![0usize];
        for n in 0..=nmax {
            for m in 0..=n {
                let mut k = 0;
                for (j, l) in inner_labels(w, m) {
                    for h in 0..harmonic_dim(d, l) {
                        index.push(BasisIndex { n, m, j, l, h });
                        pos.push(((rad_off[m] + n - m) as u32, (inner_off[m] + k) as u32));
                        k += 1;
                    }
                }
            }
            degree_off.push(index.len());
        }
        Ok(Self {
            weight: *w,
            nmax,
            index,
            degree_off,
            inner_off,
            rad_off,
            rad_scale,
            ball_scale,
            pos,
        })
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn label(&self, i: usize) -> BasisIndex {
        self.index[i]
    }

    pub fn labels(&self) -> &[BasisIndex] {
        &self.index
    }

    /// Flat index range of the elements of exact degree n.
    pub fn degree_range(&self, n: usize) -> std::ops::Range<usize> {
        self.degree_off[n]..self.degree_off[n + 1]
    }

    /// Number of elements of degree <= n.
    pub fn dim_upto(&self, n: usize) -> usize {
        self.degree_off[n + 1]
    }

    pub fn radial_len(&self) -> usize {
        self.rad_off[self.nmax + 1]
    }

    pub fn inner_len(&self) -> usize {
        self.inner_off[self.nmax + 1]
    }

    /// Flat positions (radial, inner) of element i.
    pub fn positions(&self, i: usize) -> (usize, usize) {
        let (r, q) = self.pos[i];
        (r as usize, q as usize)
    }

    /// Normalized height factors t^m P_i^{(2m+e, gamma)}(1 - 2t) / sqrt(norm), for m + i <= nmax.
    pub fn eval_radial(&self, t: f64, out: &mut Vec<f64>) {
        let w = &self.weight;
        let e0 = w.t_exponent();
        out.clear();
        out.resize(self.radial_len(), 0.0);
        let mut tm = 1.0;
        for m in 0..=self.nmax {
            let p = JacobiParams {
                alpha: 2.0 * m as f64 + e0,
                beta: w.gamma,
            };
            let sl = &mut out[self.rad_off[m]..self.rad_off[m + 1]];
            jacobi_eval_all(p, 1.0 - 2.0 * t, sl);
            for (i, v) in sl.iter_mut().enumerate() {
                *v *= tm * self.rad_scale[self.rad_off[m] + i];
            }
            tm *= t;
        }
    }

    /// Normalized inner factors: sphere harmonics of x/t (surface) or ball basis of x/t (cone).
    pub fn eval_inner(&self, p: &Point, out: &mut Vec<f64>) {
        let w = &self.weight;
        let d = w.d;
        out.clear();
        out.resize(self.inner_len(), 0.0);
        if p.t <= 0.0 {
            out[0] = 1.0;
            return;
        }
        let mut u = [0.0; 3];
        for i in 0..d {
            u[i] = p.x[i] / p.t;
        }
        let mut y = Vec::new();
        match w.domain {
            Domain::Surface => {
                let r = u[..d].iter().map(|a| a * a).sum::<f64>().sqrt();
                if r > 0.0 {
                    for c in u.iter_mut().take(d) {
                        *c /= r;
                    }
                }
                solid_harmonics(d, self.nmax, &u[..d], &mut y);
                out.copy_from_slice(&y[..self.inner_len()]);
            }
            Domain::Cone => {
                solid_harmonics(d, self.nmax, &u[..d], &mut y);
                let r2 = u[..d].iter().map(|a| a * a).sum::<f64>().min(1.0);
                let b0 = (d as f64 - 2.0) / 2.0;
                let a = w.mu - 0.5;
                // P_j^{(a, b0 + l)}(2 r2 - 1) for all l, j with l + 2 j <= nmax
                let mut jac: Vec<Vec<f64>> = Vec::with_capacity(self.nmax + 1);
                for l in 0..=self.nmax {
                    let mut v = vec![0.0; (self.nmax - l) / 2 + 1];
                    jacobi_eval_all(
                        JacobiParams {
                            alpha: a,
                            beta: b0 + l as f64,
                        },
                        2.0 * r2 - 1.0,
                        &mut v,
                    );
                    jac.push(v);
                }
                for m in 0..=self.nmax {
                    let mut k = self.inner_off[m];
                    for j in 0..=m / 2 {
                        let l = m - 2 * j;
                        let s = jac[l][j] * self.ball_scale[m][j];
                        let o = harmonic_offset(d, l);
                        for h in 0..harmonic_dim(d, l) {
                            out[k] = s * y[o + h];
                            k += 1;
                        }
                    }
                }
            }
        }
    }

    /// All orthonormal basis values at p, in flat order.
    pub fn eval_all(&self, p: &Point, out: &mut Vec<f64>) {
        let mut rad = Vec::new();
        let mut inn = Vec::new();
        self.eval_radial(p.t, &mut rad);
        self.eval_inner(p, &mut inn);
        out.clear();
        out.extend(
            self.pos
                .iter()
                .map(|&(r, q)| rad[r as usize] * inn[q as usize]),
        );
    }

    /// Values of the expansions sum_i coeffs[k][i] phi_i at every point: out[point][k]. Points sharing
    /// a height reuse the radial combination, so the cost per point is about (1 + series) * inner_len.
    pub fn eval_series_batch(&self, coeffs: &[Vec<f64>], pts: &[Point]) -> Vec<Vec<f64>> {
        use rayon::prelude::*;
        use std::collections::HashMap;
        let il = self.inner_len();
        let ns = coeffs.len();
        let mut by_t: HashMap<u64, Vec<usize>> = HashMap::new();
        for (i, p) in pts.iter().enumerate() {
            by_t.entry(p.t.to_bits()).or_default().push(i);
        }
        let mut groups: Vec<(u64, Vec<usize>)> = by_t.into_iter().collect();
        groups.sort_by_key(|g| g.1[0]);
        let parts: Vec<Vec<(usize, Vec<f64>)>> = groups
            .par_iter()
            .map(|(tb, idx)| {
                let mut rad = Vec::new();
                self.eval_radial(f64::from_bits(*tb), &mut rad);
                let mut comb = vec![0.0; ns * il];
                for (k, c) in coeffs.iter().enumerate() {
                    for (&(r, q), ci) in self.pos.iter().zip(c) {
                        comb[k * il + q as usize] += ci * rad[r as usize];
                    }
                }
                let mut inn = Vec::new();
                idx.iter()
                    .map(|&i| {
                        self.eval_inner(&pts[i], &mut inn);
                        let v = (0..ns)
                            .map(|k| {
                                comb[k * il..(k + 1) * il]
                                    .iter()
                                    .zip(&inn)
                                    .map(|(a, b)| a * b)
                                    .sum()
                            })
                            .collect();
                        (i, v)
                    })
                    .collect()
            })
            .collect();
        let mut out = vec![Vec::new(); pts.len()];
        for part in parts {
            for (i, v) in part {
                out[i] = v;
            }
        }
        out
    }

    /// Squared norm of the unnormalized element (closed form).
    pub fn norm(&self, i: usize) -> f64 {
        let b = self.index[i];
        let (r, _) = self.positions(i);
        let tn = 1.0 / self.rad_scale[r].powi(2);
        let bn = 1.0 / self.ball_scale[b.m][b.j].powi(2);
        tn * bn
    }

    /// Flat index of a label.
    pub fn find(&self, n: usize, m: usize, k: usize) -> Result<usize> {
        if n > self.nmax || m > n || k >= inner_dim(&self.weight, m) {
            return Err(Error::InvalidParameter(format!(
                "basis index (n={n}, m={m}, k={k}) out of range"
            )));
        }
        let mut i = self.degree_off[n];
        for mm in 0..m {
            i += inner_dim(&self.weight, mm);
        }
        Ok(i + k)
    }
}

/// Dimension of the inner space for height order m.
pub fn inner_dim(w: &WeightSpec, m: usize) -> usize {
    inner_labels(w, m).map(|(_, l)| harmonic_dim(w.d, l)).sum()
}

fn inner_labels(w: &WeightSpec, m: usize) -> Box<dyn Iterator<Item = (usize, usize)>> {
    match w.domain {
        Domain::Surface => Box::new(std::iter::once((0, m))),
        Domain::Cone => Box::new((0..=m / 2).map(move |j| (j, m - 2 * j))),
    }
}

/// Unnormalized basis element S^n_{m,k} (surface) or J^n_{m,k} (cone) at p.
pub fn basis_eval(w: &WeightSpec, n: usize, m: usize, k: usize, p: &Point) -> Result<f64> {
    let b = OrthoBasis::new(w, n)?;
    let i = b.find(n, m, k)?;
    let mut v = Vec::new();
    b.eval_all(p, &mut v);
    Ok(v[i] * b.norm(i).sqrt())
}

/// Squared norm of the unnormalized element.
pub fn basis_norm(w: &WeightSpec, n: usize, m: usize, k: usize) -> Result<f64> {
    let b = OrthoBasis::new(w, n)?;
    Ok(b.norm(b.find(n, m, k)?))
}
