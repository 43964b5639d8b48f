//! Approximation experiments: the direct/inverse sandwich over a function corpus, Nikolskii and
//! Bernstein ratio reports.

use std::fs::File;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::operators::frac_diff;
use super::smoothness::{
    best_approx_error, dense_grid, k_functional_upper, modulus, Norm, NormEvaluator,
};
use super::spectral::{project_many, SpectralCoeffs};
use crate::cubature::write_json;
use crate::error::{Error, Result};
use crate::geometry::{reference_quadrature, Domain, Point, WeightSpec};
use crate::kernels::OrthoBasis;

/// Named test function of (x, t); only x1, x2 and t are used, so every function is defined on
/// both domains for d = 2 and d = 3.
#[derive(Clone, Copy)]
pub struct CorpusFunction {
    pub name: &'static str,
    pub f: fn(&Point) -> f64,
}

/// Ten functions of graded smoothness.
pub fn corpus() -> Vec<CorpusFunction> {
    vec![
        CorpusFunction {
            name: "abs_t_half",
            f: |p| (p.t - 0.5).abs(),
        },
        CorpusFunction {
            name: "abs_t_half_cubed",
            f: |p| (p.t - 0.5).abs().powi(3),
        },
        CorpusFunction {
            name: "exp_t_x1",
            f: |p| p.t.exp() * p.x[0],
        },
        CorpusFunction {
            name: "abs_x1",
            f: |p| p.x[0].abs(),
        },
        CorpusFunction {
            name: "relu_x1_squared",
            f: |p| p.x[0].max(0.0).powi(2),
        },
        CorpusFunction {
            name: "sqrt_t",
            f: |p| p.t.max(0.0).sqrt(),
        },
        CorpusFunction {
            name: "runge_t",
            f: |p| 1.0 / (1.0 + 25.0 * (p.t - 0.5).powi(2)),
        },
        CorpusFunction {
            name: "step_t",
            f: |p| if p.t < 0.5 { 1.0 } else { 0.0 },
        },
        CorpusFunction {
            name: "cos_mix",
            f: |p| (6.0 * p.x[0] + 3.0 * p.x[1]).cos(),
        },
        CorpusFunction {
            name: "rim_power",
            f: |p| (1.0 - p.t).max(0.0).powf(1.5),
        },
    ]
}

/// Settings of the sandwich experiment.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SandwichConfig {
    pub weight: WeightSpec,
    /// Degree N of the projection every operator acts on.
    pub n_project: usize,
    /// Degree of the reference rule used for the projection.
    pub quad_degree: usize,
    pub ns: Vec<usize>,
    pub rs: Vec<f64>,
}

impl SandwichConfig {
    /// Surface: N = 128 and n up to 64. Cone: N = 64 and n up to 32, since the solid cone has
    /// dim Pi_N ~ N^3 / 6 coefficients and a reference rule with ~N^3 nodes.
    pub fn new(w: &WeightSpec) -> Self {
        let (n_project, ns) = match w.domain {
            Domain::Surface => (128, vec![4, 8, 16, 32, 64]),
            Domain::Cone => (64, vec![4, 8, 16, 32]),
        };
        Self {
            weight: *w,
            n_project,
            quad_degree: 2 * n_project,
            ns,
            rs: vec![1.0, 2.0],
        }
    }
}

/// One (function, r, n) measurement in the L2 norm.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SandwichRow {
    pub function: String,
    pub r: f64,
    pub n: usize,
    pub e_n: f64,
    pub k_hat: f64,
    pub omega: f64,
    /// omega_r(f, 1/n) / K_hat(f, 1/n).
    pub ratio: f64,
    /// E_n / K_hat(f, 1/n).
    pub direct: f64,
    /// K_hat(f, 1/n) / (n^{-r} sum_{k=1}^n k^{r-1} E_{k-1}).
    pub inverse: f64,
}

/// Per-r constants: the maximum over the corpus at each n, and max/min of those over n.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SandwichBand {
    pub r: f64,
    pub direct: Vec<f64>,
    pub inverse: Vec<f64>,
    pub direct_band: f64,
    pub inverse_band: f64,
    pub ratio_min: f64,
    pub ratio_max: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SandwichReport {
    pub config: SandwichConfig,
    pub functions: Vec<String>,
    /// Per function: sqrt(| ||f||^2 - sum of squared coefficients |), the L2 mass beyond degree N.
    pub truncation: Vec<f64>,
    pub rows: Vec<SandwichRow>,
    pub bands: Vec<SandwichBand>,
}

fn band(v: &[f64]) -> f64 {
    let hi = v.iter().cloned().fold(0.0, f64::max);
    let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
    hi / lo
}

/// Projects every corpus function to degree N and measures E_n, K_hat_r(f, 1/n) and omega_r(f, 1/n)
/// in L2.
pub fn sandwich_experiment(cfg: &SandwichConfig, fs: &[CorpusFunction]) -> Result<SandwichReport> {
    let w = cfg.weight;
    if !w.localizable() {
        return Err(Error::Unsupported(format!(
            "no second-order operator for {w:?}"
        )));
    }
    if cfg.ns.iter().any(|&n| n == 0 || n > cfg.n_project) {
        return Err(Error::InvalidParameter(format!(
            "every n must lie in 1..={}",
            cfg.n_project
        )));
    }
    let funcs: Vec<_> = fs.iter().map(|c| c.f).collect();
    let coeffs = project_many(&w, cfg.n_project, &funcs, cfg.quad_degree)?;
    let q = reference_quadrature(&w, cfg.quad_degree)?;
    let truncation: Vec<f64> = fs
        .iter()
        .zip(&coeffs)
        .map(|(c, f)| {
            (q.rule.integrate(|p| (c.f)(p).powi(2)) - f.norm().powi(2))
                .abs()
                .sqrt()
        })
        .collect();
    let ev = NormEvaluator::new(&w, cfg.n_project, Norm::Two);
    let nmax = cfg.ns.iter().copied().max().unwrap_or(0);
    let per: Vec<Vec<SandwichRow>> = fs
        .par_iter()
        .zip(&coeffs)
        .map(|(c, f)| -> Result<Vec<SandwichRow>> {
            let e: Vec<f64> = (0..=nmax)
                .map(|k| best_approx_error(f, k, &ev))
                .collect::<Result<_>>()?;
            let mut rows = Vec::new();
            for &r in &cfg.rs {
                for &n in &cfg.ns {
                    let t = 1.0 / n as f64;
                    let k_hat = k_functional_upper(f, r, t, &ev)?.value;
                    let omega = modulus(f, r, t, &ev)?;
                    let sum: f64 = (1..=n)
                        .map(|k| (k as f64).powf(r - 1.0) * e[k - 1])
                        .sum::<f64>()
                        / (n as f64).powf(r);
                    rows.push(SandwichRow {
                        function: c.name.to_string(),
                        r,
                        n,
                        e_n: e[n],
                        k_hat,
                        omega,
                        ratio: omega / k_hat,
                        direct: e[n] / k_hat,
                        inverse: k_hat / sum,
                    });
                }
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    let rows: Vec<SandwichRow> = per.into_iter().flatten().collect();
    let bands = cfg
        .rs
        .iter()
        .map(|&r| {
            let at = |n: usize| rows.iter().filter(move |x| x.r == r && x.n == n);
            let direct: Vec<f64> = cfg
                .ns
                .iter()
                .map(|&n| at(n).map(|x| x.direct).fold(0.0, f64::max))
                .collect();
            let inverse: Vec<f64> = cfg
                .ns
                .iter()
                .map(|&n| at(n).map(|x| x.inverse).fold(0.0, f64::max))
                .collect();
            let ratios = rows.iter().filter(|x| x.r == r).map(|x| x.ratio);
            SandwichBand {
                r,
                direct_band: band(&direct),
                inverse_band: band(&inverse),
                direct,
                inverse,
                ratio_min: ratios.clone().fold(f64::INFINITY, f64::min),
                ratio_max: ratios.fold(0.0, f64::max),
            }
        })
        .collect();
    Ok(SandwichReport {
        config: cfg.clone(),
        functions: fs.iter().map(|c| c.name.to_string()).collect(),
        truncation,
        rows,
        bands,
    })
}

/// Writes `<function>_r<r>.csv` with columns `n,E_n,K_hat,omega,ratio` and the manifest `corpus.json`.
pub fn write_sandwich(dir: &Path, rep: &SandwichReport) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for name in &rep.functions {
        for &r in &rep.config.rs {
            let mut wr =
                csv::Writer::from_writer(File::create(dir.join(format!("{name}_r{r}.csv")))?);
            wr.write_record(["n", "E_n", "K_hat", "omega", "ratio"])?;
            for x in rep.rows.iter().filter(|x| &x.function == name && x.r == r) {
                wr.write_record([
                    x.n.to_string(),
                    x.e_n.to_string(),
                    x.k_hat.to_string(),
                    x.omega.to_string(),
                    x.ratio.to_string(),
                ])?;
            }
            wr.flush()?;
        }
    }
    write_json(&dir.join("corpus.json"), rep)
}

/// Least-squares slope of log y against log x.
pub fn log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let k = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / k, ly.iter().sum::<f64>() / k);
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NikolskiiRow {
    pub n: usize,
    /// Max over random f of ||f||_inf / ||f||_2 (grid maximum).
    pub random: f64,
    /// sqrt(max_p K_n(p, p)): the ratio attained by f = K_n(., p*), the extremal polynomial.
    pub extremal: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NikolskiiReport {
    pub weight: WeightSpec,
    pub alpha: f64,
    pub rows: Vec<NikolskiiRow>,
    pub slope_random: f64,
    pub slope_extremal: f64,
    /// Slopes between consecutive n of the extremal ratio.
    pub local_slopes: Vec<f64>,
}

/// Ratios ||f||_inf / ||f||_2 over polynomials of degree <= n, to be compared with n^{alpha(w)/2}.
pub fn nikolskii_report(
    w: &WeightSpec,
    ns: &[usize],
    trials: usize,
    seed: u64,
) -> Result<NikolskiiReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for &n in ns {
        let ev = NormEvaluator::new(w, n, Norm::Inf);
        let fs: Vec<SpectralCoeffs> = (0..trials)
            .map(|_| {
                SpectralCoeffs::from_vec(
                    w,
                    n,
                    (0..w.dim_pi(n)).map(|_| rng.gen_range(-1.0..1.0)).collect(),
                )
            })
            .collect::<Result<_>>()?;
        let sup = ev.norms(&fs)?;
        let random = fs
            .iter()
            .zip(&sup)
            .map(|(f, s)| s / f.norm())
            .fold(0.0, f64::max);
        let b = OrthoBasis::new(w, n)?;
        let kmax = dense_grid(w, n, 2)
            .par_iter()
            .map(|p| {
                let mut v = Vec::new();
                b.eval_all(p, &mut v);
                v.iter().map(|x| x * x).sum::<f64>()
            })
            .reduce(|| 0.0, f64::max);
        rows.push(NikolskiiRow {
            n,
            random,
            extremal: kmax.sqrt(),
        });
    }
    let x: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let yr: Vec<f64> = rows.iter().map(|r| r.random).collect();
    let ye: Vec<f64> = rows.iter().map(|r| r.extremal).collect();
    let local_slopes = (1..rows.len())
        .map(|i| log_slope(&x[i - 1..=i], &ye[i - 1..=i]))
        .collect();
    Ok(NikolskiiReport {
        weight: *w,
        alpha: w.doubling_index(),
        slope_random: log_slope(&x, &yr),
        slope_extremal: log_slope(&x, &ye),
        rows,
        local_slopes,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BernsteinRow {
    pub n: usize,
    pub r: f64,
    /// Max over random f in Pi_n of ||(-D)^{r/2} f||_2 / (n^r ||f||_2).
    pub random: f64,
    /// Supremum over Pi_n, attained on the top degree: mu(n)^{r/2} / n^r.
    pub sup: f64,
}

/// Bernstein ratios in L2 for every (n, r).
pub fn bernstein_report(
    w: &WeightSpec,
    ns: &[usize],
    rs: &[f64],
    trials: usize,
    seed: u64,
) -> Result<Vec<BernsteinRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for &n in ns {
        let fs: Vec<SpectralCoeffs> = (0..trials)
            .map(|_| {
                SpectralCoeffs::from_vec(
                    w,
                    n,
                    (0..w.dim_pi(n)).map(|_| rng.gen_range(-1.0..1.0)).collect(),
                )
            })
            .collect::<Result<_>>()?;
        for &r in rs {
            let scale = (n as f64).powf(r);
            let mut random = 0.0f64;
            for f in &fs {
                random = random.max(frac_diff(f, r)?.norm() / (scale * f.norm()));
            }
            out.push(BernsteinRow {
                n,
                r,
                random,
                sup: w.eigen_mu(n)?.powf(r / 2.0) / scale,
            });
        }
    }
    Ok(out)
}
