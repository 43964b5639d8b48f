//! Moment matrix A[i, z] = phi_i(z) of an orthonormal basis at a node set, applied without being
//! stored: phi_i factors as radial(t) * inner(x / t) and nodes sharing a height share radial values.

use rayon::prelude::*;

use crate::error::Result;
use crate::geometry::{Point, WeightSpec};
use crate::kernels::OrthoBasis;

/// Factorized moment operator for the basis of degree <= n at fixed nodes.
pub struct MomentOperator {
    pub basis: OrthoBasis,
    /// Node ranges [start, end) sharing one height.
    groups: Vec<(usize, usize)>,
    rad: Vec<Vec<f64>>,
    inner: Vec<f64>,
    inner_len: usize,
    pos: Vec<(u32, u32)>,
    nodes: usize,
}

impl MomentOperator {
    pub fn new(w: &WeightSpec, n: usize, nodes: &[Point]) -> Result<Self> {
        let basis = OrthoBasis::new(w, n)?;
        let mut groups = Vec::new();
        let mut s = 0;
        for i in 1..=nodes.len() {
            if i == nodes.len() || nodes[i].t.to_bits() != nodes[s].t.to_bits() {
                groups.push((s, i));
                s = i;
            }
        }
        let rad = groups
            .par_iter()
            .map(|&(a, _)| {
                let mut v = Vec::new();
                basis.eval_radial(nodes[a].t, &mut v);
                v
            })
            .collect();
        let il = basis.inner_len();
        let mut inner = vec![0.0; nodes.len() * il];
        inner
            .par_chunks_mut(il.max(1))
            .zip(nodes.par_iter())
            .for_each(|(row, p)| {
                let mut v = Vec::new();
                basis.eval_inner(p, &mut v);
                row.copy_from_slice(&v);
            });
        let pos = (0..basis.len()).map(|i| {
            let (r, q) = basis.positions(i);
            (r as u32, q as u32)
        });
        let pos = pos.collect();
        Ok(Self {
            basis,
            groups,
            rad,
            inner,
            inner_len: il,
            pos,
            nodes: nodes.len(),
        })
    }

    /// Number of moments (rows).
    pub fn rows(&self) -> usize {
        self.basis.len()
    }

    /// Number of nodes (columns).
    pub fn cols(&self) -> usize {
        self.nodes
    }

    /// y = A x.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let il = self.inner_len;
        self.groups
            .par_iter()
            .zip(&self.rad)
            .map(|(&(a, b), rad)| {
                let mut u = vec![0.0; il];
                for z in a..b {
                    let xz = x[z];
                    if xz != 0.0 {
                        for (uq, iv) in u.iter_mut().zip(&self.inner[z * il..(z + 1) * il]) {
                            *uq += xz * iv;
                        }
                    }
                }
                self.pos
                    .iter()
                    .map(|&(r, q)| rad[r as usize] * u[q as usize])
                    .collect::<Vec<f64>>()
            })
            .reduce(
                || vec![0.0; self.rows()],
                |mut acc, v| {
                    for (a, b) in acc.iter_mut().zip(&v) {
                        *a += b;
                    }
                    acc
                },
            )
    }

    /// x = A^T y.
    pub fn apply_t(&self, y: &[f64]) -> Vec<f64> {
        let il = self.inner_len;
        let mut out = vec![0.0; self.nodes];
        let parts: Vec<Vec<f64>> = self
            .groups
            .par_iter()
            .zip(&self.rad)
            .map(|(&(a, b), rad)| {
                let mut c = vec![0.0; il];
                for (&(r, q), yi) in self.pos.iter().zip(y) {
                    c[q as usize] += yi * rad[r as usize];
                }
                (a..b)
                    .map(|z| {
                        self.inner[z * il..(z + 1) * il]
                            .iter()
                            .zip(&c)
                            .map(|(p, q)| p * q)
                            .sum()
                    })
                    .collect()
            })
            .collect();
        for (&(a, _), v) in self.groups.iter().zip(parts) {
            out[a..a + v.len()].copy_from_slice(&v);
        }
        out
    }

    /// Dense column z of A.
    pub fn column(&self, z: usize) -> Vec<f64> {
        let g = self.groups.partition_point(|&(_, b)| b <= z);
        let rad = &self.rad[g];
        let inn = &self.inner[z * self.inner_len..(z + 1) * self.inner_len];
        self.pos
            .iter()
            .map(|&(r, q)| rad[r as usize] * inn[q as usize])
            .collect()
    }
}
