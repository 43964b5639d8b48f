//! Empirical Marcinkiewicz-Zygmund constants of separated sets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{reference_quadrature, Point, SeparatedSet, WeightSpec};
use crate::kernels::OrthoBasis;

/// Norm index of the inequality.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum MzNorm {
    One,
    Two,
    Infinity,
}

impl std::str::FromStr for MzNorm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(MzNorm::One),
            "2" => Ok(MzNorm::Two),
            "inf" | "infinity" => Ok(MzNorm::Infinity),
            _ => Err(Error::InvalidParameter(format!("unknown norm index {s}"))),
        }
    }
}

/// Extreme ratios over random polynomials.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MzConstants {
    pub p: MzNorm,
    pub n: usize,
    pub trials: usize,
    /// p finite: min over trials of sum_z m_z min_cell |f|^p / ||f||_p^p.
    /// p infinite: min over trials of max_z |f(z)| / ||f||_inf.
    pub lower: f64,
    /// p finite: max over trials of sum_z m_z max_cell |f|^p / ||f||_p^p.
    /// p infinite: max over trials of ||f||_inf / max_z |f(z)|.
    pub upper: f64,
}

/// Random polynomials of degree <= n with uniform orthonormal coefficients in [-1, 1].
pub fn random_coefficients(b: &OrthoBasis, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..b.len()).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect()
}

/// Measures the MZ constants of the node set with cell masses m_z for random f of degree <= n.
/// Cell extremes are sampled on a parameter grid with `grid` values per coordinate; the norms
/// use the reference quadrature of degree 4n plus, for p infinite, the cell samples.
pub fn mz_constants(
    s: &SeparatedSet,
    n: usize,
    w: &WeightSpec,
    p: MzNorm,
    trials: usize,
    grid: usize,
    seed: u64,
) -> Result<MzConstants> {
    if s.domain != w.domain || s.d != w.d {
        return Err(Error::InvalidParameter(
            "separated set and weight live on different domains".into(),
        ));
    }
    let b = OrthoBasis::new(w, n)?;
    let coeffs = random_coefficients(&b, trials, seed);
    let masses = s.cell_masses(w);
    let mut samples: Vec<Point> = Vec::new();
    let mut owner: Vec<usize> = Vec::new();
    for i in 0..s.len() {
        for q in s.cell_samples(i, grid) {
            samples.push(q);
            owner.push(i);
        }
    }
    let sv = b.eval_series_batch(&coeffs, &samples);
    let nv = b.eval_series_batch(&coeffs, &s.nodes);
    let rq = reference_quadrature(w, 4 * n.max(1))?;
    let qv = b.eval_series_batch(&coeffs, &rq.rule.nodes);
    let pe = match p {
        MzNorm::One => 1,
        MzNorm::Two => 2,
        MzNorm::Infinity => 0,
    };
    let (mut lower, mut upper) = (f64::INFINITY, 0.0f64);
    for k in 0..trials {
        let mut cmin = vec![f64::INFINITY; s.len()];
        let mut cmax = vec![0.0f64; s.len()];
        for (v, &o) in sv.iter().zip(&owner) {
            let a = v[k].abs();
            cmin[o] = cmin[o].min(a);
            cmax[o] = cmax[o].max(a);
        }
        for (z, v) in nv.iter().enumerate() {
            let a = v[k].abs();
            cmin[z] = cmin[z].min(a);
            cmax[z] = cmax[z].max(a);
        }
        if pe == 0 {
            let sup = cmax
                .iter()
                .cloned()
                .fold(0.0, f64::max)
                .max(qv.iter().map(|v| v[k].abs()).fold(0.0, f64::max));
            let at_nodes = nv.iter().map(|v| v[k].abs()).fold(0.0, f64::max);
            lower = lower.min(at_nodes / sup);
            upper = upper.max(sup / at_nodes);
        } else {
            let norm: f64 = qv
                .iter()
                .zip(&rq.rule.weights)
                .map(|(v, wt)| wt * v[k].abs().powi(pe))
                .sum();
            let lo: f64 = cmin.iter().zip(&masses).map(|(a, m)| m * a.powi(pe)).sum();
            let hi: f64 = cmax.iter().zip(&masses).map(|(a, m)| m * a.powi(pe)).sum();
            lower = lower.min(lo / norm);
            upper = upper.max(hi / norm);
        }
    }
    Ok(MzConstants {
        p,
        n,
        trials,
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_separated_set, Domain};

    #[test]
    fn constant_function_sums_to_mass() {
        let w = WeightSpec::surface(2, -1.0, 0.0).unwrap();
        let s = build_separated_set(Domain::Surface, 2, 0.1, 1).unwrap();
        let total: f64 = s.cell_masses(&w).iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        let c = mz_constants(&s, 0, &w, MzNorm::One, 3, 3, 1).unwrap();
        assert!(c.lower <= 1.0 + 1e-12 && c.upper >= 1.0 - 1e-12);
        assert!(c.upper / c.lower < 1.0 + 1e-9);
    }

    #[test]
    fn constants_bracket_one_and_are_stable() {
        let w = WeightSpec::surface(2, -1.0, 0.0).unwrap();
        let mut ups = Vec::new();
        for n in [4usize, 8, 16] {
            let s = build_separated_set(Domain::Surface, 2, 0.5 / n as f64, 2).unwrap();
            let c1 = mz_constants(&s, n, &w, MzNorm::One, 4, 4, 3).unwrap();
            assert!(c1.lower <= 1.0 && c1.upper >= 1.0, "{c1:?}");
            let ci = mz_constants(&s, n, &w, MzNorm::Infinity, 4, 4, 3).unwrap();
            assert!(ci.upper >= 1.0 && ci.lower <= 1.0);
            ups.push(c1.upper);
        }
        let (lo, hi) = ups
            .iter()
            .fold((f64::MAX, 0.0f64), |a, &b| (a.0.min(b), a.1.max(b)));
        assert!(hi / lo < 2.0, "{ups:?}");
    }
}
