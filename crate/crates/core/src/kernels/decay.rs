//! Measured localization constants of the kernels: pointwise decay, Lipschitz decay and the
//! integral of the decay profile against the reciprocal cap measure.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::addition::KernelConfig;
use super::reproducing::{localized_coeffs, KernelEvaluator};
use crate::error::{Error, Result};
use crate::geometry::{
    cap_measure_formula, dist, random_point, reference_quadrature, Domain, Point, WeightSpec,
};
use crate::specfun::{gauss_legendre, Cutoff};
use std::f64::consts::{FRAC_PI_2, PI};

/// Options for the decay measurements.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DecayOptions {
    pub cutoff: Cutoff,
    /// Perturbation x1 of x2 sits at distance delta / n.
    pub delta: f64,
    /// Number of distinct first points used for the integral quantity.
    pub n3_points: usize,
    /// The integral uses the reference quadrature of degree n3_degree_factor * n.
    pub n3_degree_factor: usize,
    pub seed: u64,
}

impl Default for DecayOptions {
    fn default() -> Self {
        Self {
            cutoff: Cutoff::TypeA,
            delta: 0.5,
            n3_points: 6,
            n3_degree_factor: 4,
            seed: 0,
        }
    }
}

/// Suprema of the normalized quantities for one n.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecayReport {
    pub n: usize,
    pub kappa: f64,
    #[serde(rename = "sup_N1")]
    pub sup_n1: f64,
    #[serde(rename = "sup_N2")]
    pub sup_n2: f64,
    #[serde(rename = "sup_N3")]
    pub sup_n3: f64,
    pub pairs: usize,
    /// False when no Lipschitz bound is known for the weight; N2 is then only measured.
    #[serde(skip)]
    pub n2_asserted: bool,
}

fn slerp(a: &[f64], b: &[f64], s: f64) -> [f64; 3] {
    let d = a.len();
    let dot: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| x * y)
        .sum::<f64>()
        .clamp(-1.0, 1.0);
    let om = dot.acos();
    let mut out = [0.0; 3];
    if om < 1e-12 {
        out[..d].copy_from_slice(a);
        return out;
    }
    let mut bb = [0.0; 3];
    bb[..d].copy_from_slice(b);
    if om.sin() < 1e-9 {
        // antipodal: rotate through a fixed perpendicular direction
        let mut e = [0.0; 3];
        let k = if a[0].abs() < 0.9 { 0 } else { 1 };
        e[k] = 1.0;
        let pr: f64 = (0..d).map(|i| e[i] * a[i]).sum();
        let mut nrm = 0.0;
        for i in 0..d {
            e[i] -= pr * a[i];
            nrm += e[i] * e[i];
        }
        let (c, sn) = ((s * om).cos(), (s * om).sin());
        for i in 0..d {
            out[i] = c * a[i] + sn * e[i] / nrm.sqrt();
        }
        return out;
    }
    let (wa, wb) = (((1.0 - s) * om).sin() / om.sin(), (s * om).sin() / om.sin());
    for i in 0..d {
        out[i] = wa * a[i] + wb * bb[i];
    }
    out
}

fn path(w: &WeightSpec, x: &Point, z: &Point, s: f64) -> Point {
    let d = w.d;
    let t = (1.0 - s) * x.t + s * z.t;
    match w.domain {
        Domain::Surface => Point::on_ray(
            &slerp(&x.direction(d)[..d], &z.direction(d)[..d], s)[..d],
            t,
        ),
        Domain::Cone => {
            let mut q = Point::apex();
            for i in 0..d {
                q.x[i] = (1.0 - s) * x.x[i] + s * z.x[i];
            }
            q.t = t;
            q
        }
    }
}

/// Point on the path from x to z at intrinsic distance `target` from x, or z when it is closer.
pub fn point_toward(w: &WeightSpec, x: &Point, z: &Point, target: f64) -> Point {
    let d = w.d;
    if dist(w.domain, d, x, z) <= target {
        return *z;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if dist(w.domain, d, x, &path(w, x, z, mid)) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    path(w, x, z, 0.5 * (lo + hi))
}

/// Probe pairs for degree n: special points (apex, rim, near apex) and random points, each paired
/// with a random far point and with points at distances spread log-uniformly from 0.1/n to pi.
pub fn probe_pairs(w: &WeightSpec, n: usize, count: usize, seed: u64) -> Vec<(Point, Point)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = w.d;
    let nf = n.max(1) as f64;
    let mut firsts = vec![Point::apex()];
    let mut rim = random_point(w.domain, d, &mut rng);
    rim = Point::on_ray(&rim.direction(d)[..d], 1.0);
    firsts.push(rim);
    let near = random_point(w.domain, d, &mut rng);
    firsts.push(Point::on_ray(&near.direction(d)[..d], 1.0 / (nf * nf)));
    let mut out = Vec::with_capacity(count);
    let mut i = 0;
    while out.len() < count {
        let x = if i < firsts.len() {
            firsts[i]
        } else {
            random_point(w.domain, d, &mut rng)
        };
        i += 1;
        let z = random_point(w.domain, d, &mut rng);
        out.push((x, z));
        if out.len() < count {
            let lr = rng.gen_range((0.1f64).ln()..(nf * std::f64::consts::PI).ln());
            let z2 = random_point(w.domain, d, &mut rng);
            out.push((x, point_toward(w, &x, &z2, lr.exp() / nf)));
        }
    }
    out
}

/// Suprema over `pairs` of the normalized localization quantities for the localized kernel L_n:
/// N1 = |L_n(x, y)| sqrt(cap(x, 1/n) cap(y, 1/n)) (1 + n d(x, y))^kappa;
/// N2 = |L_n(x1, y) - L_n(x, y)| sqrt(cap(x, 1/n) cap(y, 1/n)) (1 + n d(x, y))^kappa / (n d(x1, x)),
///      with x1 at distance delta / n from x;
/// N3 = sum over the reference quadrature of 1 / (cap(y, 1/n) (1 + n d(x, y))^kappa).
pub fn decay_report(
    cfg: &KernelConfig,
    n: usize,
    kappa: f64,
    pairs: &[(Point, Point)],
    opts: &DecayOptions,
) -> Result<DecayReport> {
    let w = cfg.weight;
    if !w.localizable() {
        return Err(Error::Unsupported(format!(
            "no localized kernels for {w:?}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("decay report needs n >= 1".into()));
    }
    let mut c = localized_coeffs(n, opts.cutoff);
    while c.len() > 1 && *c.last().unwrap() == 0.0 {
        c.pop();
    }
    let ev = KernelEvaluator::new(cfg, c.len() - 1)?;
    let nf = n as f64;
    let r = 1.0 / nf;
    let d = w.d;
    let cap = |p: &Point| cap_measure_formula(&w, p, r);
    let (n1, n2) = pairs
        .par_iter()
        .enumerate()
        .map(|(i, (x, y))| {
            let dxy = dist(w.domain, d, x, y);
            let norm = (cap(x) * cap(y)).sqrt() * (1.0 + nf * dxy).powf(kappa);
            let lx = ev.series(&c, x, y);
            let n1 = lx.abs() * norm;
            let mut rng =
                ChaCha8Rng::seed_from_u64(opts.seed ^ (i as u64).wrapping_mul(0x9e37_79b9));
            let z = random_point(w.domain, d, &mut rng);
            let x1 = point_toward(&w, x, &z, opts.delta / nf);
            let d1 = dist(w.domain, d, x, &x1);
            let n2 = if d1 > 0.0 {
                (ev.series(&c, &x1, y) - lx).abs() * norm / (nf * d1)
            } else {
                0.0
            };
            (n1, n2)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
    let mut xs: Vec<Point> = Vec::new();
    for (x, _) in pairs {
        if xs.len() >= opts.n3_points {
            break;
        }
        if !xs.contains(x) {
            xs.push(*x);
        }
    }
    let n3 = n3_sup(&w, n, kappa, &xs, opts.n3_degree_factor.max(1) * n)?;
    Ok(DecayReport {
        n,
        kappa,
        sup_n1: n1,
        sup_n2: n2,
        sup_n3: n3,
        pairs: pairs.len(),
        n2_asserted: w.lipschitz_flag(),
    })
}

/// Composite Gauss-Legendre rule on [a, b] with panels graded geometrically around `center`.
fn graded_rule(a: f64, b: f64, center: f64, h0: f64, order: usize) -> Result<Vec<(f64, f64)>> {
    let mut brk = vec![a, b];
    let c = center.clamp(a, b);
    brk.push(c);
    let mut h = h0;
    while c - h > a || c + h < b {
        for v in [c - h, c + h] {
            if v > a && v < b {
                brk.push(v);
            }
        }
        h *= 2.0;
    }
    brk.sort_by(|x, y| x.partial_cmp(y).unwrap());
    brk.dedup();
    let gl = gauss_legendre(order, [-1.0, 1.0])?;
    let mut out = Vec::with_capacity(order * brk.len());
    for win in brk.windows(2) {
        let (lo, hi) = (win[0], win[1]);
        if hi - lo <= 0.0 {
            continue;
        }
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        for (x, wx) in gl.nodes.iter().zip(&gl.weights) {
            out.push((mid + half * x, half * wx));
        }
    }
    Ok(out)
}

/// Integral of 1 / (cap(y, 1/n) (1 + n d(x, y))^kappa) against the normalized weight, d = 2, on a
/// composite rule in coordinates (b, theta, phi) graded around x, with heights s = sin^2 b and,
/// on the cone, y = s sin(theta) (cos phi, sin phi) from the lift to the upper hemisphere.
fn n3_graded(w: &WeightSpec, n: usize, kappa: f64, x: &Point) -> Result<f64> {
    let nf = n as f64;
    let h0 = 1.0 / (8.0 * nf);
    let order = 8;
    let e = w.t_exponent();
    let bx = x.t.clamp(0.0, 1.0).sqrt().asin();
    let brule: Vec<(f64, f64)> = graded_rule(0.0, FRAC_PI_2, bx, h0, order)?
        .into_iter()
        .map(|(b, wb)| {
            let (sb, cb) = b.sin_cos();
            (
                b,
                wb * 2.0 * sb.powf(2.0 * e + 1.0) * cb.powf(2.0 * w.gamma + 1.0),
            )
        })
        .collect();
    let phx = if x.norm_x(2) > 0.0 {
        x.x[1].atan2(x.x[0])
    } else {
        0.0
    };
    let prule = graded_rule(phx - PI, phx + PI, phx, h0, order)?;
    let (thrule, lift) = match w.domain {
        Domain::Surface => (vec![(FRAC_PI_2, 1.0)], false),
        Domain::Cone => {
            let thx = if x.t > 0.0 {
                (x.norm_x(2) / x.t).clamp(0.0, 1.0).asin()
            } else {
                0.0
            };
            let r = graded_rule(0.0, FRAC_PI_2, thx, h0, order)?
                .into_iter()
                .map(|(th, wt)| (th, wt * th.cos().powf(2.0 * w.mu) * th.sin()))
                .collect();
            (r, true)
        }
    };
    let (mut num, mut mass) = (0.0, 0.0);
    for &(b, wb) in &brule {
        let s = b.sin().powi(2);
        for &(th, wt) in &thrule {
            let rad = if lift { s * th.sin() } else { s };
            let inner: (f64, f64) = prule
                .iter()
                .map(|&(ph, wp)| {
                    let y = Point::new(&[rad * ph.cos(), rad * ph.sin()], s);
                    let g = 1.0
                        / (cap_measure_formula(w, &y, 1.0 / nf)
                            * (1.0 + nf * dist(w.domain, 2, x, &y)).powf(kappa));
                    (wp * g, wp)
                })
                .fold((0.0, 0.0), |a, v| (a.0 + v.0, a.1 + v.1));
            num += wb * wt * inner.0;
            mass += wb * wt * inner.1;
        }
    }
    Ok(num / mass)
}

/// Largest value over xs of the integral of 1 / (cap(y, 1/n) (1 + n d(x, y))^kappa) against the
/// normalized weight. For d = 2 a rule graded around each x is used; otherwise the reference
/// quadrature of degree `degree`.
pub fn n3_sup(w: &WeightSpec, n: usize, kappa: f64, xs: &[Point], degree: usize) -> Result<f64> {
    if xs.is_empty() {
        return Ok(0.0);
    }
    let nf = n as f64;
    if w.d == 2 {
        let vals: Result<Vec<f64>> = xs.par_iter().map(|x| n3_graded(w, n, kappa, x)).collect();
        return Ok(vals?.into_iter().fold(0.0, f64::max));
    }
    let q = reference_quadrature(w, degree)?;
    let inv_cap: Vec<f64> = q
        .rule
        .nodes
        .par_iter()
        .zip(&q.rule.weights)
        .map(|(y, wt)| wt / cap_measure_formula(w, y, 1.0 / nf))
        .collect();
    Ok(xs
        .iter()
        .map(|x| {
            q.rule
                .nodes
                .par_iter()
                .zip(&inv_cap)
                .map(|(y, ic)| ic / (1.0 + nf * dist(w.domain, w.d, x, y)).powf(kappa))
                .sum::<f64>()
        })
        .fold(0.0, f64::max))
}
