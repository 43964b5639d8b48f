//! Positive cubature on separated sets: least-norm moment matching around the cell-mass prior,
//! with a nonnegative least-squares fallback, pruning and certification.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::moment::MomentOperator;
use super::nnls::nnls;
use crate::error::{Error, Result};
use crate::geometry::{
    build_separated_set, cap_measure_formula, reference_quadrature, CubatureRule, Point,
    SeparatedSet, WeightSpec,
};

/// Solver settings.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CubatureOptions {
    /// Maximal moment violation accepted.
    pub residual_tol: f64,
    /// Conjugate-gradient stopping threshold on the normal-equation residual.
    pub cg_tol: f64,
    pub max_cg: usize,
    /// Gradient tolerance of the nonnegative least-squares fallback.
    pub nnls_tol: f64,
    /// The fallback is only attempted when rows * columns stays below this size.
    pub nnls_max_entries: usize,
}

impl Default for CubatureOptions {
    fn default() -> Self {
        Self {
            residual_tol: 1e-8,
            cg_tol: 1e-13,
            max_cg: 5000,
            nnls_tol: 1e-10,
            nnls_max_entries: 2_000_000,
        }
    }
}

fn max_moment_violation(op: &MomentOperator, lambda: &[f64]) -> f64 {
    let m = op.apply(lambda);
    m.iter()
        .enumerate()
        .map(|(i, v)| (v - if i == 0 { 1.0 } else { 0.0 }).abs())
        .fold(0.0, f64::max)
}

/// Solves (A D A^T) y = e_1 by conjugate gradients and returns lambda = D A^T y.
fn least_norm(op: &MomentOperator, prior: &[f64], opts: &CubatureOptions) -> Vec<f64> {
    let m = op.rows();
    let apply = |y: &[f64]| {
        let mut v = op.apply_t(y);
        for (a, d) in v.iter_mut().zip(prior) {
            *a *= d;
        }
        op.apply(&v)
    };
    let mut y = vec![0.0; m];
    let mut r = vec![0.0; m];
    r[0] = 1.0;
    let mut p = r.clone();
    let mut rr: f64 = r.iter().map(|v| v * v).sum();
    for _ in 0..opts.max_cg {
        if rr.sqrt() <= opts.cg_tol {
            break;
        }
        let ap = apply(&p);
        let pap: f64 = p.iter().zip(&ap).map(|(a, b)| a * b).sum();
        if pap <= 0.0 {
            break;
        }
        let alpha = rr / pap;
        for i in 0..m {
            y[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let rr2: f64 = r.iter().map(|v| v * v).sum();
        let beta = rr2 / rr;
        rr = rr2;
        for i in 0..m {
            p[i] = r[i] + beta * p[i];
        }
    }
    let mut lam = op.apply_t(&y);
    for (a, d) in lam.iter_mut().zip(prior) {
        *a *= d;
    }
    lam
}

/// Drops the few nodes with nonpositive least-norm weight and solves again on the rest, for at
/// most eight rounds; gives up when a round would remove more than 5% of the nodes.
fn prune_and_resolve(
    s: &SeparatedSet,
    n: usize,
    w: &WeightSpec,
    prior: &[f64],
    mut lam: Vec<f64>,
    opts: &CubatureOptions,
) -> Result<Option<CubatureRule>> {
    let mut idx: Vec<usize> = (0..s.len()).collect();
    for _ in 0..8 {
        let keep: Vec<usize> = (0..idx.len()).filter(|&i| lam[i] > 0.0).collect();
        if (idx.len() - keep.len()) * 20 > idx.len() || keep.len() < w.dim_pi(n) {
            return Ok(None);
        }
        idx = keep.iter().map(|&i| idx[i]).collect();
        let nodes: Vec<Point> = idx.iter().map(|&z| s.nodes[z]).collect();
        let pr: Vec<f64> = idx.iter().map(|&z| prior[z]).collect();
        let op = MomentOperator::new(w, n, &nodes)?;
        lam = least_norm(&op, &pr, opts);
        let res = max_moment_violation(&op, &lam);
        if res > opts.residual_tol {
            return Ok(None);
        }
        if lam.iter().all(|&l| l > 0.0) {
            return Ok(Some(CubatureRule {
                nodes,
                weights: lam,
                degree: n,
                residual: res,
            }));
        }
    }
    Ok(None)
}

/// Positive cubature of degree n on the nodes of a separated set. Weights start from the cell
/// masses and receive the smallest correction (in the cell-mass metric) matching all moments of
/// degree <= n; if that leaves a nonpositive weight, a nonnegative least-squares solve on the
/// scaled moment system is used, zero weights are pruned, and the pruned rule is re-certified.
pub fn solve_positive_cubature(s: &SeparatedSet, n: usize, w: &WeightSpec) -> Result<CubatureRule> {
    solve_positive_cubature_with(s, n, w, &CubatureOptions::default())
}

pub fn solve_positive_cubature_with(
    s: &SeparatedSet,
    n: usize,
    w: &WeightSpec,
    opts: &CubatureOptions,
) -> Result<CubatureRule> {
    w.validate()?;
    if s.domain != w.domain || s.d != w.d {
        return Err(Error::InvalidParameter(
            "separated set and weight live on different domains".into(),
        ));
    }
    let prior = s.cell_masses(w);
    let op = MomentOperator::new(w, n, &s.nodes)?;
    let lam = least_norm(&op, &prior, opts);
    let res = max_moment_violation(&op, &lam);
    let min_w = lam.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_w > 0.0 && res <= opts.residual_tol {
        return Ok(CubatureRule {
            nodes: s.nodes.clone(),
            weights: lam,
            degree: n,
            residual: res,
        });
    }
    if res <= opts.residual_tol {
        if let Some(rule) = prune_and_resolve(s, n, w, &prior, lam, opts)? {
            return Ok(rule);
        }
    }
    if op.rows() * op.cols() > opts.nnls_max_entries {
        return Err(Error::Infeasible {
            degree: n,
            residual: res,
            min_weight: min_w,
        });
    }
    let mut a = DMatrix::zeros(op.rows(), op.cols());
    for z in 0..op.cols() {
        let c = op.column(z);
        for i in 0..op.rows() {
            a[(i, z)] = c[i] * prior[z];
        }
    }
    let mut b = DVector::zeros(op.rows());
    b[0] = 1.0;
    let sol = nnls(&a, &b, opts.nnls_tol, 50 * op.rows() + 100);
    let keep: Vec<usize> = (0..op.cols()).filter(|&z| sol.x[z] > 0.0).collect();
    let nodes: Vec<Point> = keep.iter().map(|&z| s.nodes[z]).collect();
    let weights: Vec<f64> = keep.iter().map(|&z| sol.x[z] * prior[z]).collect();
    let pruned = MomentOperator::new(w, n, &nodes)?;
    let res = max_moment_violation(&pruned, &weights);
    let min_w = weights.iter().cloned().fold(f64::INFINITY, f64::min);
    if keep.is_empty() || !(min_w > 0.0) || res > opts.residual_tol {
        return Err(Error::Infeasible {
            degree: n,
            residual: res,
            min_weight: min_w,
        });
    }
    Ok(CubatureRule {
        nodes,
        weights,
        degree: n,
        residual: res,
    })
}

/// Outcome of the delta calibration.
#[derive(Clone, Debug)]
pub struct Calibrated {
    pub delta: f64,
    pub set: SeparatedSet,
    pub rule: CubatureRule,
}

/// Starts at delta = `start` and halves until the rule on the (delta / n)-separated set is feasible
/// with residual <= `residual`; gives up below `min_delta`.
pub fn calibrate_delta(
    w: &WeightSpec,
    n: usize,
    seed: u64,
    start: f64,
    min_delta: f64,
    residual: f64,
) -> Result<Calibrated> {
    let mut delta = start;
    let mut last = None;
    let opts = CubatureOptions {
        residual_tol: residual,
        ..Default::default()
    };
    while delta >= min_delta {
        let set = build_separated_set(w.domain, w.d, delta / n.max(1) as f64, seed)?;
        match solve_positive_cubature_with(&set, n, w, &opts) {
            Ok(rule) => return Ok(Calibrated { delta, set, rule }),
            Err(e @ Error::Infeasible { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
        delta /= 2.0;
    }
    Err(last.unwrap_or(Error::InvalidParameter("min_delta above start".into())))
}

fn random_poly(w: &WeightSpec, degree: usize, rng: &mut ChaCha8Rng) -> Vec<[f64; 5]> {
    (0..degree)
        .map(|_| {
            let mut f = [0.0; 5];
            for c in f.iter_mut().take(w.d + 2) {
                *c = rng.gen_range(-1.0..1.0);
            }
            f
        })
        .collect()
}

fn eval_poly(w: &WeightSpec, f: &[[f64; 5]], p: &Point) -> f64 {
    let d = w.d;
    f.iter()
        .map(|c| {
            let lin: f64 = (0..d).map(|i| c[i] * p.x[i]).sum();
            lin + c[d] * p.t + c[d + 1]
        })
        .product()
}

/// Max over random products of `degree` linear forms of |rule sum - reference integral| / (1 + |integral|).
pub fn verify_exactness_at(
    rule: &CubatureRule,
    w: &WeightSpec,
    degree: usize,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    let refq = reference_quadrature(w, degree)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let f = random_poly(w, degree, &mut rng);
        let exact = refq.rule.integrate(|p| eval_poly(w, &f, p));
        let approx = rule.integrate(|p| eval_poly(w, &f, p));
        worst = worst.max((approx - exact).abs() / (1.0 + exact.abs()));
    }
    Ok(worst)
}

/// Exactness check at the rule's own degree.
pub fn verify_exactness(rule: &CubatureRule, w: &WeightSpec, trials: usize) -> Result<f64> {
    verify_exactness_at(rule, w, rule.degree, trials, 0x5eed)
}

/// Extreme ratios lambda_z / cap_measure_formula(z, r) over the nodes.
pub fn weight_comparability(rule: &CubatureRule, w: &WeightSpec, r: f64) -> (f64, f64) {
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .fold((f64::INFINITY, 0.0f64), |acc, (p, l)| {
            let q = l / cap_measure_formula(w, p, r);
            (acc.0.min(q), acc.1.max(q))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Domain;
    use crate::kernels::OrthoBasis;

    #[test]
    fn degree_zero_gives_cell_masses() {
        let w = WeightSpec::surface(2, -1.0, 0.0).unwrap();
        let s = build_separated_set(Domain::Surface, 2, 0.3, 1).unwrap();
        let r = solve_positive_cubature(&s, 0, &w).unwrap();
        let m = s.cell_masses(&w);
        for (a, b) in r.weights.iter().zip(&m) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!(r.residual < 1e-14);
    }

    #[test]
    fn surface_degree_eight() {
        let w = WeightSpec::surface(2, -1.0, 0.0).unwrap();
        let c = calibrate_delta(&w, 8, 7, 1.0, 1.0 / 64.0, 1e-9).unwrap();
        let r = &c.rule;
        assert!(r.weights.iter().all(|&v| v > 0.0));
        assert!((r.weights.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        assert!(verify_exactness(r, &w, 20).unwrap() <= 1e-8);
        assert!(verify_exactness_at(r, &w, 12, 20, 1).unwrap() > 1e-8);
        let b = OrthoBasis::new(&w, 8).unwrap();
        let mut v = Vec::new();
        let mut sums = vec![0.0; b.len()];
        for (p, l) in r.nodes.iter().zip(&r.weights) {
            b.eval_all(p, &mut v);
            for i in 0..b.len() {
                sums[i] += l * v[i];
            }
        }
        assert!(sums[1..].iter().all(|s| s.abs() < 1e-8));
        let (lo, hi) = weight_comparability(r, &w, c.delta / 8.0);
        assert!(hi / lo < 1e4 && lo > 0.0);
    }

    #[test]
    fn cone_rules() {
        for w in [
            WeightSpec::cone(2, 0.0, 0.0).unwrap(),
            WeightSpec::cone(2, 1.5, 1.0).unwrap(),
        ] {
            let c = calibrate_delta(&w, 6, 3, 1.0, 1.0 / 64.0, 1e-9).unwrap();
            assert!(c.rule.weights.iter().all(|&v| v > 0.0));
            assert!(verify_exactness(&c.rule, &w, 20).unwrap() <= 1e-8);
        }
    }

    #[test]
    fn deterministic() {
        let w = WeightSpec::surface(2, -1.0, 1.5).unwrap();
        let s = build_separated_set(Domain::Surface, 2, 0.1, 5).unwrap();
        let a = solve_positive_cubature(&s, 6, &w).unwrap();
        let b = solve_positive_cubature(&s, 6, &w).unwrap();
        assert_eq!(a.weights, b.weights);
    }

    #[test]
    fn nnls_fallback_certifies() {
        // force the fallback by asking for an impossible least-norm tolerance first
        let w = WeightSpec::surface(2, -1.0, 0.0).unwrap();
        let s = build_separated_set(Domain::Surface, 2, 0.25, 2).unwrap();
        let opts = CubatureOptions {
            cg_tol: 1e-30,
            max_cg: 0,
            ..Default::default()
        };
        let r = solve_positive_cubature_with(&s, 3, &w, &opts).unwrap();
        assert!(r.weights.iter().all(|&v| v > 0.0));
        assert!(r.residual <= 1e-8);
        assert!(r.len() <= s.len());
    }
}
