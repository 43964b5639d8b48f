//! Command implementations; each writes its artifacts below the output directory and returns a
//! JSON summary carrying the seed.

use std::fs::File;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::check::run_suite;
use super::{ApproxOp, Cli, CliError, Command, KernelOp};
use crate::approx::{
    bernstein_report, corpus, dense_grid, nikolskii_report, sandwich_experiment, write_sandwich,
    NearBest, SandwichConfig, SpectralCoeffs,
};
use crate::cubature::{
    calibrate_delta, solve_positive_cubature_with, weight_comparability, write_json,
    write_rule_csv, CubatureOptions, RuleMeta,
};
use crate::error::{Error, Result};
use crate::frames::{build_frame_with, read_frame, write_frame, FrameOptions};
use crate::geometry::{build_separated_set, random_point, CubatureRule, WeightSpec};
use crate::kernels::{
    basis_sum, decay_report, probe_pairs, DecayOptions, KernelConfig, KernelEvaluator, OrthoBasis,
};
use crate::specfun::Cutoff;

pub(super) fn dispatch(cli: &Cli) -> std::result::Result<Value, CliError> {
    let w = cli.weight.spec()?;
    let ctx = Ctx {
        out: cli.out.clone(),
        seed: cli.seed,
        gnuplot: cli.gnuplot,
        weight: w,
    };
    match &cli.command {
        Command::Points { eps, probes } => Ok(cmd_points(&ctx, *eps, *probes)?),
        Command::Cubature {
            n,
            delta,
            calibrate,
            residual,
        } => Ok(cmd_cubature(&ctx, *n, *delta, *calibrate, *residual)?),
        Command::Kernel {
            op,
            n,
            kappa,
            cutoff,
            pairs,
        } => Ok(cmd_kernel(&ctx, *op, n, *kappa, (*cutoff).into(), *pairs)?),
        Command::Frame {
            j,
            delta,
            cap,
            cutoff,
            no_calibrate,
        } => {
            let opts = FrameOptions {
                degree_cap: *cap,
                calibrate: !no_calibrate,
                seed: cli.seed,
                cutoff: (*cutoff).into(),
            };
            Ok(cmd_frame(&ctx, *j, *delta, &opts)?)
        }
        Command::Approx {
            op,
            frame,
            trials,
            n,
            r,
            function,
        } => Ok(cmd_approx(
            &ctx,
            *op,
            frame.as_deref(),
            *trials,
            n,
            r,
            function,
        )?),
        Command::Check { suite } => cmd_check(&ctx, *suite),
        Command::Formats => Ok(json!({ "formats": super::FORMATS })),
    }
}

struct Ctx {
    out: PathBuf,
    seed: u64,
    gnuplot: bool,
    weight: WeightSpec,
}

impl Ctx {
    fn dir(&self) -> Result<&Path> {
        std::fs::create_dir_all(&self.out)?;
        Ok(&self.out)
    }

    /// Writes `<name>.json` with the seed and weight merged in and returns the same value.
    fn report<T: Serialize>(&self, name: &str, body: &T) -> Result<Value> {
        let mut v = json!({ "command": name, "seed": self.seed, "weight": self.weight });
        if let (Value::Object(m), Value::Object(b)) = (&mut v, serde_json::to_value(body)?) {
            m.extend(b);
        }
        write_json(&self.dir()?.join(format!("{name}.json")), &v)?;
        Ok(v)
    }

    /// Writes `<name>.gp` plotting columns `ys` of `<name>.csv` against column 1 on log-log axes.
    fn gnuplot(&self, name: &str, ys: &[(usize, &str)]) -> Result<()> {
        if !self.gnuplot {
            return Ok(());
        }
        let plots: Vec<String> = ys
            .iter()
            .map(|(c, t)| format!("'{name}.csv' using 1:{c} with linespoints title '{t}'"))
            .collect();
        let script = format!(
            "set datafile separator ','\nset key autotitle columnhead\nset logscale xy\nset terminal pngcairo\nset output '{name}.png'\nplot {}\n",
            plots.join(", ")
        );
        std::fs::write(self.dir()?.join(format!("{name}.gp")), script)?;
        Ok(())
    }
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut wr = csv::Writer::from_writer(File::create(path)?);
    wr.write_record(header)?;
    for r in rows {
        wr.write_record(r)?;
    }
    wr.flush()?;
    Ok(())
}

fn cmd_points(ctx: &Ctx, eps: f64, probes: usize) -> Result<Value> {
    let w = ctx.weight;
    let s = build_separated_set(w.domain, w.d, eps, ctx.seed)?;
    let rule = CubatureRule {
        nodes: s.nodes.clone(),
        weights: s.cell_masses(&w),
        degree: 0,
        residual: f64::NAN,
    };
    write_rule_csv(&ctx.dir()?.join("points.csv"), &rule, w.d, &s.ring_index)?;
    ctx.report(
        "points",
        &json!({
            "eps": eps,
            "cardinality": s.len(),
            "rings": s.rings.len(),
            "min_separation": s.min_separation(),
            "covering_estimate": s.covering_estimate(probes, ctx.seed),
            "covering_probes": probes,
        }),
    )
}

fn cmd_cubature(ctx: &Ctx, n: usize, delta: f64, calibrate: bool, residual: f64) -> Result<Value> {
    let w = ctx.weight;
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "delta must be positive, got {delta}"
        )));
    }
    let (delta, set, rule) = if calibrate {
        let c = calibrate_delta(&w, n, ctx.seed, delta, delta / 16.0, residual)?;
        (c.delta, c.set, c.rule)
    } else {
        let set = build_separated_set(w.domain, w.d, delta / n.max(1) as f64, ctx.seed)?;
        let opts = CubatureOptions {
            residual_tol: residual,
            ..Default::default()
        };
        let rule = solve_positive_cubature_with(&set, n, &w, &opts)?;
        (delta, set, rule)
    };
    let ring = ring_of(&set.nodes, &set.ring_index, &rule);
    write_rule_csv(&ctx.dir()?.join("rule.csv"), &rule, w.d, &ring)?;
    let (lo, hi) = weight_comparability(&rule, &w, delta / n.max(1) as f64);
    let meta = RuleMeta {
        weight: w,
        degree: n,
        residual: rule.residual,
        delta,
        nodes: rule.len(),
        seed: ctx.seed,
    };
    ctx.report(
        "rule",
        &json!({
            "meta": meta,
            "candidates": set.len(),
            "min_weight": rule.weights.iter().cloned().fold(f64::INFINITY, f64::min),
            "weight_over_cap_min": lo,
            "weight_over_cap_max": hi,
        }),
    )
}

/// Ring labels of the rule nodes (a subset of the set nodes, in order).
fn ring_of(nodes: &[crate::geometry::Point], ring: &[usize], rule: &CubatureRule) -> Vec<usize> {
    let mut out = Vec::with_capacity(rule.len());
    let mut k = 0;
    for p in &rule.nodes {
        while k < nodes.len() && nodes[k] != *p {
            k += 1;
        }
        out.push(ring.get(k).copied().unwrap_or(0));
    }
    out
}

fn cmd_kernel(
    ctx: &Ctx,
    op: KernelOp,
    ns: &[usize],
    kappa: f64,
    cutoff: Cutoff,
    pairs: usize,
) -> Result<Value> {
    let w = ctx.weight;
    let cfg = KernelConfig::new(w);
    match op {
        KernelOp::Decay => {
            let opts = DecayOptions {
                cutoff,
                seed: ctx.seed,
                ..Default::default()
            };
            let mut reps = Vec::new();
            for &n in ns {
                let pp = probe_pairs(&w, n, pairs, ctx.seed);
                reps.push(decay_report(&cfg, n, kappa, &pp, &opts)?);
            }
            let rows: Vec<Vec<String>> = reps
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.kappa.to_string(),
                        r.sup_n1.to_string(),
                        r.sup_n2.to_string(),
                        r.sup_n3.to_string(),
                        r.pairs.to_string(),
                    ]
                })
                .collect();
            write_csv(
                &ctx.dir()?.join("kernel_decay.csv"),
                &["n", "kappa", "sup_N1", "sup_N2", "sup_N3", "pairs"],
                &rows,
            )?;
            ctx.gnuplot("kernel_decay", &[(3, "N1"), (4, "N2"), (5, "N3")])?;
            ctx.report("kernel_decay", &json!({ "cutoff": cutoff, "lipschitz_asserted": w.lipschitz_flag(), "reports": reps }))
        }
        KernelOp::Oracle => {
            let nmax = ns.iter().copied().max().unwrap_or(0);
            let b = OrthoBasis::new(&w, nmax)?;
            let ev = KernelEvaluator::new(&cfg, nmax)?;
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
            let pts: Vec<_> = (0..pairs)
                .map(|_| {
                    (
                        random_point(w.domain, w.d, &mut rng),
                        random_point(w.domain, w.d, &mut rng),
                    )
                })
                .collect();
            let mut rows = Vec::new();
            let mut worst = 0.0f64;
            for &n in ns {
                let err = pts
                    .iter()
                    .map(|(p, q)| {
                        let bs = basis_sum(&b, n, p, q);
                        (ev.reprod(n, p, q) - bs).abs() / (1.0 + bs.abs())
                    })
                    .fold(0.0, f64::max);
                worst = worst.max(err);
                rows.push(vec![n.to_string(), err.to_string(), pairs.to_string()]);
            }
            write_csv(
                &ctx.dir()?.join("kernel_oracle.csv"),
                &["n", "max_rel_err", "pairs"],
                &rows,
            )?;
            ctx.report(
                "kernel_oracle",
                &json!({ "max_rel_err": worst, "pairs": pairs, "n": ns }),
            )
        }
    }
}

fn cmd_frame(ctx: &Ctx, j: usize, delta: f64, opts: &FrameOptions) -> Result<Value> {
    let f = build_frame_with(&ctx.weight, j, delta, opts)?;
    let m = write_frame(&ctx.dir()?.join("frame"), &f)?;
    ctx.report(
        "frame",
        &json!({ "manifest": m, "exact_degree": f.exact_degree() }),
    )
}

fn random_coeffs(w: &WeightSpec, n: usize, rng: &mut ChaCha8Rng) -> Result<SpectralCoeffs> {
    SpectralCoeffs::from_vec(
        w,
        n,
        (0..w.dim_pi(n)).map(|_| rng.gen_range(-1.0..1.0)).collect(),
    )
}

fn cmd_approx(
    ctx: &Ctx,
    op: ApproxOp,
    frame: Option<&Path>,
    trials: usize,
    ns: &[usize],
    rs: &[f64],
    function: &str,
) -> Result<Value> {
    let w = ctx.weight;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let or = |v: &[usize], d: &[usize]| if v.is_empty() { d.to_vec() } else { v.to_vec() };
    match op {
        ApproxOp::Parseval => {
            let dir = frame
                .map(Path::to_path_buf)
                .unwrap_or_else(|| ctx.out.join("frame"));
            let f = read_frame(&dir)?;
            if f.weight != w {
                return Err(Error::InvalidParameter(format!(
                    "frame in {} was built for {:?}",
                    dir.display(),
                    f.weight
                )));
            }
            let deg = f.exact_degree();
            let fs: Vec<SpectralCoeffs> = (0..trials)
                .map(|_| random_coeffs(&f.weight, deg, &mut rng))
                .collect::<Result<_>>()?;
            let reps = f.parseval_many(&fs)?;
            let defect = reps.iter().map(|r| r.defect).fold(0.0, f64::max);
            ctx.report("parseval", &json!({ "frame": dir, "J": f.j_max, "degree": deg, "trials": trials, "defect": defect }))
        }
        ApproxOp::Sandwich => {
            let mut cfg = SandwichConfig::new(&w);
            if !ns.is_empty() {
                cfg.ns = ns.to_vec();
            }
            if !rs.is_empty() {
                cfg.rs = rs.to_vec();
            }
            let rep = sandwich_experiment(&cfg, &corpus())?;
            write_sandwich(&ctx.dir()?.join("sandwich"), &rep)?;
            ctx.report("sandwich", &json!({ "bands": rep.bands, "truncation": rep.truncation, "functions": rep.functions }))
        }
        ApproxOp::Nikolskii => {
            let rep = nikolskii_report(&w, &or(ns, &[8, 16, 32]), trials, ctx.seed)?;
            let rows: Vec<Vec<String>> = rep
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.random.to_string(),
                        r.extremal.to_string(),
                    ]
                })
                .collect();
            write_csv(
                &ctx.dir()?.join("nikolskii.csv"),
                &["n", "random", "extremal"],
                &rows,
            )?;
            ctx.gnuplot("nikolskii", &[(2, "random"), (3, "extremal")])?;
            ctx.report("nikolskii", &rep)
        }
        ApproxOp::Bernstein => {
            let rs = if rs.is_empty() {
                vec![1.0, 2.0]
            } else {
                rs.to_vec()
            };
            let rows = bernstein_report(&w, &or(ns, &[8, 16, 32]), &rs, trials, ctx.seed)?;
            let csv_rows: Vec<Vec<String>> = rows
                .iter()
                .map(|x| {
                    vec![
                        x.n.to_string(),
                        x.r.to_string(),
                        x.random.to_string(),
                        x.sup.to_string(),
                    ]
                })
                .collect();
            write_csv(
                &ctx.dir()?.join("bernstein.csv"),
                &["n", "r", "random", "sup"],
                &csv_rows,
            )?;
            ctx.report("bernstein", &json!({ "rows": rows }))
        }
        ApproxOp::Nearbest => {
            let c = corpus()
                .into_iter()
                .find(|c| c.name == function)
                .ok_or_else(|| {
                    Error::InvalidParameter(format!("unknown corpus function {function:?}"))
                })?;
            let mut rows = Vec::new();
            let mut out = Vec::new();
            for n in or(ns, &[4, 8, 16]) {
                let op = NearBest::build(&w, n, Cutoff::TypeA, ctx.seed)?;
                let lf = op.apply(c.f)?;
                let grid = dense_grid(&w, 2 * n, 4);
                let err = grid
                    .iter()
                    .zip(lf.eval_many(&grid)?)
                    .map(|(p, v)| (v - (c.f)(p)).abs())
                    .fold(0.0, f64::max);
                rows.push(vec![
                    n.to_string(),
                    op.rule.len().to_string(),
                    err.to_string(),
                ]);
                out.push(json!({ "n": n, "nodes": op.rule.len(), "sup_error": err }));
            }
            write_csv(
                &ctx.dir()?.join("nearbest.csv"),
                &["n", "nodes", "sup_error"],
                &rows,
            )?;
            ctx.gnuplot("nearbest", &[(3, "sup_error")])?;
            ctx.report("nearbest", &json!({ "function": function, "rows": out }))
        }
    }
}

fn cmd_check(ctx: &Ctx, suite: super::Suite) -> std::result::Result<Value, CliError> {
    let inv = run_suite(suite, &ctx.weight, ctx.seed)?;
    let failed: Vec<String> = inv
        .iter()
        .filter(|i| !i.passed)
        .map(|i| i.id.clone())
        .collect();
    let v = ctx.report(
        "check",
        &json!({ "suite": suite, "invariants": inv, "failed": failed }),
    )?;
    if failed.is_empty() {
        Ok(v)
    } else {
        Err(CliError::Invariants(failed))
    }
}
