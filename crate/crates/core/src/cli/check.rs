//! Invariant suites of every module, sized to run in seconds.

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::approx::{
    cesaro_mean, frac_diff, jacobi_reduction, near_best_spectral, project_fn, translate, NearBest,
    SpectralCoeffs,
};
use crate::cubature::{calibrate_delta, verify_exactness};
use crate::error::{Error, Result};
use crate::frames::{build_frame, level_multipliers};
use crate::geometry::{
    build_separated_set, cap_measure_formula, cap_measure_quad, random_point, reference_quadrature,
    Point, WeightSpec,
};
use crate::kernels::{basis_sum, eigen_check, KernelConfig, KernelEvaluator, OrthoBasis};
use crate::specfun::{
    gauss_jacobi_cached, jacobi_at_one, jacobi_eval, jacobi_eval_all, jacobi_norm, Cutoff,
    JacobiParams,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Specfun,
    Geometry,
    Kernels,
    Cubature,
    Frames,
    Approx,
    All,
}

/// Outcome of one invariant: `value` is compared against `tolerance` (value <= tolerance passes).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Invariant {
    pub id: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn inv(id: &str, value: f64, tolerance: f64) -> Invariant {
    Invariant {
        id: id.to_string(),
        value,
        tolerance,
        passed: value <= tolerance,
    }
}

fn random(w: &WeightSpec, n: usize, rng: &mut ChaCha8Rng) -> Result<SpectralCoeffs> {
    SpectralCoeffs::from_vec(
        w,
        n,
        (0..w.dim_pi(n)).map(|_| rng.gen_range(-1.0..1.0)).collect(),
    )
}

/// Runs a suite for the weight; kernel and approximation suites need a weight with an addition formula.
pub fn run_suite(suite: Suite, w: &WeightSpec, seed: u64) -> Result<Vec<Invariant>> {
    let all = [
        Suite::Specfun,
        Suite::Geometry,
        Suite::Kernels,
        Suite::Cubature,
        Suite::Frames,
        Suite::Approx,
    ];
    if suite == Suite::All {
        let mut out = Vec::new();
        for s in all {
            out.extend(run_suite(s, w, seed)?);
        }
        return Ok(out);
    }
    if matches!(suite, Suite::Kernels | Suite::Approx) && !w.localizable() {
        return Err(Error::Unsupported(format!(
            "suite {suite:?} needs an addition formula, not available for {w:?}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match suite {
        Suite::Specfun => specfun_suite(),
        Suite::Geometry => geometry_suite(w, seed, &mut rng),
        Suite::Kernels => kernels_suite(w, seed, &mut rng),
        Suite::Cubature => cubature_suite(w, seed),
        Suite::Frames => frames_suite(w, &mut rng),
        Suite::Approx => approx_suite(w, seed, &mut rng),
        Suite::All => unreachable!(),
    }
}

fn specfun_suite() -> Result<Vec<Invariant>> {
    let p = JacobiParams::new(0.5, -0.5)?;
    let rule = gauss_jacobi_cached(16, p)?;
    let mut orth = 0.0f64;
    let mut v = vec![0.0; 16];
    let mut gram = vec![vec![0.0; 16]; 16];
    for (&x, &wx) in rule.nodes.iter().zip(&rule.weights) {
        jacobi_eval_all(p, x, &mut v);
        for k in 0..16 {
            for l in 0..16 {
                gram[k][l] += wx * v[k] * v[l];
            }
        }
    }
    for (k, row) in gram.iter().enumerate() {
        for (l, g) in row.iter().enumerate() {
            let want = if k == l { jacobi_norm(k, p) } else { 0.0 };
            orth = orth.max((g - want).abs());
        }
    }
    let at_one = (0..30)
        .map(|n| (jacobi_eval(n, p, 1.0) / jacobi_at_one(n, p) - 1.0).abs())
        .fold(0.0, f64::max);
    let mult: Vec<Vec<f64>> = (0..=10)
        .map(|j| level_multipliers(j, Cutoff::TypeBFrame))
        .collect();
    let unity = (0..=512)
        .map(|k| {
            (mult
                .iter()
                .map(|h| h.get(k).map_or(0.0, |x| x * x))
                .sum::<f64>()
                - 1.0)
                .abs()
        })
        .fold(0.0, f64::max);
    Ok(vec![
        inv("specfun.gauss_jacobi_orthogonality", orth, 1e-12),
        inv("specfun.jacobi_at_one", at_one, 1e-12),
        inv("specfun.cutoff_partition_of_unity", unity, 1e-12),
    ])
}

fn geometry_suite(w: &WeightSpec, seed: u64, rng: &mut ChaCha8Rng) -> Result<Vec<Invariant>> {
    let eps = 0.1;
    let s = build_separated_set(w.domain, w.d, eps, seed)?;
    let sep = (eps - s.min_separation()).max(0.0);
    let cover = s.covering_estimate(2000, seed) / (2.0 * eps);
    let mass = (reference_quadrature(w, 10)?
        .rule
        .weights
        .iter()
        .sum::<f64>()
        - 1.0)
        .abs();
    let cell = (s.cell_masses(w).iter().sum::<f64>() - 1.0).abs();
    // best constant C with quad / (c * formula) in [1/C, C] for some c
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for _ in 0..4 {
        let p = random_point(w.domain, w.d, rng);
        for r in [0.05, 0.2, 0.6] {
            let q = cap_measure_quad(w, &p, r)? / cap_measure_formula(w, &p, r);
            lo = lo.min(q);
            hi = hi.max(q);
        }
    }
    let cap_ratio = (hi / lo).sqrt();
    Ok(vec![
        inv("geometry.min_separation_deficit", sep, 1e-10),
        inv("geometry.covering_over_2eps", cover, 1.0),
        inv("geometry.reference_mass", mass, 1e-12),
        inv("geometry.cell_mass_total", cell, 1e-10),
        inv("geometry.cap_measure_equivalence", cap_ratio, 20.0),
    ])
}

fn kernels_suite(w: &WeightSpec, seed: u64, rng: &mut ChaCha8Rng) -> Result<Vec<Invariant>> {
    let nmax = 10;
    let b = OrthoBasis::new(w, nmax)?;
    let ev = KernelEvaluator::new(&KernelConfig::new(*w), nmax)?;
    let mut oracle = 0.0f64;
    let mut christ = 0.0f64;
    for _ in 0..20 {
        let (p, q) = (
            random_point(w.domain, w.d, rng),
            random_point(w.domain, w.d, rng),
        );
        for n in 0..=nmax {
            let bs = basis_sum(&b, n, &p, &q);
            oracle = oracle.max((ev.reprod(n, &p, &q) - bs).abs() / (1.0 + bs.abs()));
        }
        let lam = ev.christoffel(nmax, &p);
        christ = christ.max(if lam > 0.0 { 0.0 } else { 1.0 });
    }
    let eig = eigen_check(w, 6, 8, 1e-4, seed)?
        .iter()
        .map(|c| c.max_rel_err)
        .fold(0.0, f64::max);
    Ok(vec![
        inv("kernels.oracle_equivalence", oracle, 1e-8),
        inv("kernels.eigenstructure", eig, 1e-4),
        inv("kernels.christoffel_nonpositive", christ, 0.0),
    ])
}

fn cubature_suite(w: &WeightSpec, seed: u64) -> Result<Vec<Invariant>> {
    let c = calibrate_delta(w, 8, seed, 1.0, 1.0 / 16.0, 1e-8)?;
    let min_w = c.rule.weights.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(vec![
        inv("cubature.residual", c.rule.residual, 1e-8),
        inv(
            "cubature.nonpositive_weight",
            if min_w > 0.0 { 0.0 } else { 1.0 },
            0.0,
        ),
        inv("cubature.exactness", verify_exactness(&c.rule, w, 5)?, 1e-9),
    ])
}

fn frames_suite(w: &WeightSpec, rng: &mut ChaCha8Rng) -> Result<Vec<Invariant>> {
    let f = build_frame(w, 3, 0.5)?;
    let fs: Vec<SpectralCoeffs> = (0..10)
        .map(|_| random(w, f.exact_degree(), rng))
        .collect::<Result<_>>()?;
    let defect = f
        .parseval_many(&fs)?
        .iter()
        .map(|r| r.defect)
        .fold(0.0, f64::max);
    let g = &fs[0];
    let round = f
        .synthesize(&f.analyze_spectral(g)?)?
        .resized(g.degree)
        .axpby(1.0, g, -1.0)
        .norm()
        / g.norm();
    Ok(vec![
        inv("frames.parseval_defect", defect, 1e-6),
        inv("frames.round_trip", round, 1e-8),
    ])
}

fn approx_suite(w: &WeightSpec, seed: u64, rng: &mut ChaCha8Rng) -> Result<Vec<Invariant>> {
    let n = 4;
    let op = NearBest::build(w, n, Cutoff::TypeA, seed)?;
    let g = random(w, n, rng)?;
    let lg = op.apply_values(&g.eval_many(&op.rule.nodes)?)?;
    let repro = lg.axpby(1.0, &g, -1.0).norm();
    let p = jacobi_reduction(w)?;
    let h = random(w, 3, rng)?;
    let sq = project_fn(w, 6, |q: &Point| h.eval(q).unwrap_or(0.0).powi(2), 12)?;
    let probes: Vec<Point> = (0..500).map(|_| random_point(w.domain, w.d, rng)).collect();
    let ces = cesaro_mean(&sq, 6, p.alpha + p.beta + 2.0)?;
    let neg = ces
        .eval_many(&probes)?
        .into_iter()
        .fold(0.0f64, |a, v| a.max(-v));
    let f = random(w, 8, rng)?;
    let mut contraction = 0.0f64;
    for th in [0.2, 1.0, 2.5] {
        contraction = contraction.max(translate(&f, th)?.norm() / f.norm() - 1.0);
    }
    let a = frac_diff(&near_best_spectral(&f, 4, Cutoff::TypeA), 1.5)?;
    let b = near_best_spectral(&frac_diff(&f, 1.5)?, 4, Cutoff::TypeA);
    let comm = a.axpby(1.0, &b, -1.0).norm() / (1.0 + a.norm());
    Ok(vec![
        inv("approx.near_best_reproduction", repro, 1e-8),
        inv("approx.cesaro_negativity", neg, 1e-10),
        inv("approx.translation_contraction", contraction, 1e-12),
        inv("approx.commutation", comm, 1e-12),
    ])
}
