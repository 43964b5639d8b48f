//! Lawson-Hanson active-set nonnegative least squares.

use nalgebra::{DMatrix, DVector};

/// Result of a nonnegative least-squares solve.
#[derive(Clone, Debug)]
pub struct NnlsSolution {
    pub x: Vec<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
}

fn ls_on(a: &DMatrix<f64>, b: &DVector<f64>, set: &[usize]) -> Vec<f64> {
    let sub = a.select_columns(set.iter());
    let qr = sub.clone().qr();
    let qtb = qr.q().transpose() * b;
    let r = qr.r();
    let k = set.len();
    let mut s = vec![0.0; k];
    for i in (0..k).rev() {
        let mut acc = qtb[i];
        for j in i + 1..k {
            acc -= r[(i, j)] * s[j];
        }
        s[i] = if r[(i, i)].abs() > 1e-300 {
            acc / r[(i, i)]
        } else {
            0.0
        };
    }
    s
}

/// Minimizes ||A x - b|| subject to x >= 0. The entering column is the one with the largest
/// gradient, ties broken by the lowest index; `tol` bounds the gradient at termination.
pub fn nnls(a: &DMatrix<f64>, b: &DVector<f64>, tol: f64, max_iter: usize) -> NnlsSolution {
    let n = a.ncols();
    let mut x = vec![0.0; n];
    let mut passive = vec![false; n];
    let mut iterations = 0;
    let grad = |x: &[f64]| {
        let xv = DVector::from_column_slice(x);
        a.transpose() * (b - a * xv)
    };
    loop {
        let w = grad(&x);
        let mut best: Option<usize> = None;
        for j in 0..n {
            if !passive[j] && w[j] > tol && best.map_or(true, |k| w[j] > w[k]) {
                best = Some(j);
            }
        }
        let Some(j) = best else { break };
        if iterations >= max_iter {
            break;
        }
        passive[j] = true;
        loop {
            iterations += 1;
            let set: Vec<usize> = (0..n).filter(|&k| passive[k]).collect();
            let s = ls_on(a, b, &set);
            if s.iter().all(|&v| v > 0.0) {
                for (k, &i) in set.iter().enumerate() {
                    x[i] = s[k];
                }
                break;
            }
            let mut alpha = f64::INFINITY;
            for (k, &i) in set.iter().enumerate() {
                if s[k] <= 0.0 {
                    let den = x[i] - s[k];
                    if den > 0.0 {
                        alpha = alpha.min(x[i] / den);
                    }
                }
            }
            if !alpha.is_finite() {
                alpha = 0.0;
            }
            for (k, &i) in set.iter().enumerate() {
                x[i] += alpha * (s[k] - x[i]);
                if x[i] <= 1e-15 * (1.0 + s[k].abs()) {
                    x[i] = 0.0;
                    passive[i] = false;
                }
            }
            if iterations >= max_iter || !passive.iter().any(|&p| p) {
                break;
            }
        }
    }
    let xv = DVector::from_column_slice(&x);
    let residual_norm = (a * xv - b).norm();
    NnlsSolution {
        x,
        residual_norm,
        iterations,
    }
}
