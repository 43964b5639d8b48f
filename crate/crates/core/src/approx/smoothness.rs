//! Norms, moduli of smoothness, K-functional upper bounds and best approximation errors.

use serde::{Deserialize, Serialize};

use super::operators::{frac_diff, near_best_spectral, translate_multipliers};
use super::spectral::{eval_batch, SpectralCoeffs};
use crate::error::{Error, Result};
use crate::geometry::{Domain, Point, WeightSpec};
use crate::specfun::Cutoff;

/// Largest dense grid; the per-axis resolution is reduced until the grid fits.
pub const MAX_GRID_POINTS: usize = 400_000;

/// Norm index: 2 is exact from coefficients, infinity is a maximum over a dense grid (a lower
/// estimate of the true supremum).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Norm {
    Two,
    Inf,
}

impl std::str::FromStr for Norm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2" => Ok(Norm::Two),
            "inf" | "infinity" => Ok(Norm::Inf),
            _ => Err(Error::InvalidParameter(format!(
                "unknown norm {s:?} (expected 2 or inf)"
            ))),
        }
    }
}

fn cheb01(i: usize, m: usize) -> f64 {
    if m < 2 {
        return 1.0;
    }
    0.5 * (1.0 - (std::f64::consts::PI * i as f64 / (m - 1) as f64).cos())
}

fn sphere_grid(d: usize, m: usize) -> Vec<[f64; 3]> {
    let na = 2 * m.max(2);
    let az = |k: usize| 2.0 * std::f64::consts::PI * k as f64 / na as f64;
    match d {
        2 => (0..na).map(|k| [az(k).cos(), az(k).sin(), 0.0]).collect(),
        _ => {
            let mut out = vec![[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]];
            for j in 0..m.max(1) {
                let th = std::f64::consts::PI * (j as f64 + 0.5) / m.max(1) as f64;
                for k in 0..na {
                    out.push([th.sin() * az(k).cos(), th.sin() * az(k).sin(), th.cos()]);
                }
            }
            out
        }
    }
}

fn inner_grid(w: &WeightSpec, m: usize) -> Vec<[f64; 3]> {
    let sph = sphere_grid(w.d, m);
    match w.domain {
        Domain::Surface => sph,
        Domain::Cone => {
            let mut out = vec![[0.0; 3]];
            for j in 1..m.max(2) {
                let s = cheb01(j, m.max(2));
                out.extend(sph.iter().map(|u| [s * u[0], s * u[1], s * u[2]]));
            }
            out
        }
    }
}

/// Ring-by-inner-grid probe set: Chebyshev-spaced heights (clustered at the apex and the rim),
/// equispaced azimuths and, on the cone, Chebyshev-spaced radii. About `oversample * degree`
/// samples per axis, reduced until at most [`MAX_GRID_POINTS`] points remain.
pub fn dense_grid(w: &WeightSpec, degree: usize, oversample: usize) -> Vec<Point> {
    let mut m = oversample.max(1) * degree.max(1) + 1;
    loop {
        let size = m * inner_grid(w, m).len();
        if size <= MAX_GRID_POINTS || m <= 3 {
            break;
        }
        m = (m * 4 / 5).max(3);
    }
    let inner = inner_grid(w, m);
    let mut pts = vec![Point::apex()];
    for i in 1..m {
        let t = cheb01(i, m);
        pts.extend(
            inner
                .iter()
                .map(|u| Point::new(&[t * u[0], t * u[1], t * u[2]][..w.d], t)),
        );
    }
    pts
}

/// Evaluates norms of expansions of a common weight.
#[derive(Clone, Debug)]
pub struct NormEvaluator {
    pub weight: WeightSpec,
    pub p: Norm,
    grid: Vec<Point>,
}

impl NormEvaluator {
    /// For p = infinity the grid is sized for expansions of degree <= `degree`, four times oversampled.
    pub fn new(w: &WeightSpec, degree: usize, p: Norm) -> Self {
        let grid = match p {
            Norm::Two => Vec::new(),
            Norm::Inf => dense_grid(w, degree, 4),
        };
        Self {
            weight: *w,
            p,
            grid,
        }
    }

    pub fn grid(&self) -> &[Point] {
        &self.grid
    }

    pub fn norms(&self, fs: &[SpectralCoeffs]) -> Result<Vec<f64>> {
        if fs.iter().any(|f| f.weight != self.weight) {
            return Err(Error::InvalidParameter(
                "expansions of different weights".into(),
            ));
        }
        match self.p {
            Norm::Two => Ok(fs.iter().map(|f| f.norm()).collect()),
            Norm::Inf => {
                let deg = fs.iter().map(|f| f.degree).max().unwrap_or(0);
                let series: Vec<Vec<f64>> = fs.iter().map(|f| f.resized(deg).coeffs).collect();
                let vals = eval_batch(&self.weight, deg, &series, &self.grid)?;
                let mut out = vec![0.0f64; fs.len()];
                for v in vals {
                    for (o, x) in out.iter_mut().zip(v) {
                        *o = o.max(x.abs());
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn norm(&self, f: &SpectralCoeffs) -> Result<f64> {
        Ok(self.norms(std::slice::from_ref(f))?[0])
    }
}

/// Ratio between consecutive translation angles: 32 angles per factor 100.
pub fn theta_ratio() -> f64 {
    100f64.powf(1.0 / 31.0)
}

/// Translation angles used for the modulus at t: the points of the fixed grid pi * q^{-k}
/// (q = [`theta_ratio`], k = 0..=124) not exceeding t, or t itself below the grid. The sets are
/// nested in t, so the modulus is nondecreasing.
pub fn theta_grid(t: f64) -> Vec<f64> {
    let q = theta_ratio();
    let g: Vec<f64> = (0..=124)
        .map(|k| std::f64::consts::PI * q.powi(-k))
        .filter(|&th| th <= t)
        .collect();
    if g.is_empty() {
        vec![t]
    } else {
        g
    }
}

/// omega_r(f, t) = max over theta of ||(I - S_theta)^{r/2} f||.
pub fn modulus(f: &SpectralCoeffs, r: f64, t: f64, ev: &NormEvaluator) -> Result<f64> {
    if !(t > 0.0 && t < std::f64::consts::PI) || !(r > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "modulus needs r > 0 and t in (0, pi), got r = {r}, t = {t}"
        )));
    }
    let mut fs = Vec::new();
    for th in theta_grid(t) {
        let m = translate_multipliers(&f.weight, th, f.degree)?;
        fs.push(f.multiply(|k| (1.0 - m[k]).max(0.0).powf(r / 2.0)));
    }
    Ok(ev.norms(&fs)?.into_iter().fold(0.0, f64::max))
}

/// Value of the K-functional surrogate and its minimizing candidate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KHat {
    pub value: f64,
    /// Index k of the best candidate L_{2^k} * f; `None` when g = 0 wins.
    pub best: Option<usize>,
}

/// Upper bound for K_r(f, t): the minimum of ||f - g|| + t^r ||(-D)^{r/2} g|| over g = 0 and
/// g = L_{2^k} * f (type a cut-off), k = 0..=J with 2^J >= deg f so that f itself is a candidate.
pub fn k_functional_upper(f: &SpectralCoeffs, r: f64, t: f64, ev: &NormEvaluator) -> Result<KHat> {
    let jmax = f.degree.max(1).next_power_of_two().trailing_zeros() as usize;
    let mut diffs = Vec::new();
    let mut smooth = Vec::new();
    for k in 0..=jmax {
        let g = near_best_spectral(f, 1 << k, Cutoff::TypeA);
        diffs.push(f.axpby(1.0, &g, -1.0));
        smooth.push(frac_diff(&g, r)?);
    }
    let a = ev.norms(&diffs)?;
    let b = ev.norms(&smooth)?;
    let mut best = KHat {
        value: ev.norm(f)?,
        best: None,
    };
    for k in 0..=jmax {
        let v = a[k] + t.powf(r) * b[k];
        if v < best.value {
            best = KHat {
                value: v,
                best: Some(k),
            };
        }
    }
    Ok(best)
}

/// E_n(f): for p = 2 the norm of the coefficient tail beyond degree n (exact for the expansion);
/// for p = infinity the upper bound ||f - L_{n/2} * f|| with a degree-n near-best polynomial.
pub fn best_approx_error(f: &SpectralCoeffs, n: usize, ev: &NormEvaluator) -> Result<f64> {
    match ev.p {
        Norm::Two => Ok(((n + 1)..=f.degree)
            .map(|k| f.block_energy(k))
            .sum::<f64>()
            .sqrt()),
        Norm::Inf => {
            let g = near_best_spectral(f, n / 2, Cutoff::TypeA);
            ev.norm(&f.axpby(1.0, &g, -1.0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::spectral::project_fn;
    use crate::geometry::dist;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(w: &WeightSpec, n: usize, seed: u64) -> SpectralCoeffs {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        SpectralCoeffs::from_vec(
            w,
            n,
            (0..w.dim_pi(n)).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn grids_cover_the_domain() {
        for w in [
            WeightSpec::surface(2, -1.0, 0.0).unwrap(),
            WeightSpec::surface(3, -1.0, 0.0).unwrap(),
            WeightSpec::cone(2, 0.0, 0.0).unwrap(),
            WeightSpec::cone(3, 0.0, 0.0).unwrap(),
        ] {
            let g = dense_grid(&w, 4, 4);
            assert!(g.len() <= MAX_GRID_POINTS);
            assert!(g.iter().all(|p| p.is_valid(w.domain, w.d, 1e-12)));
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            for _ in 0..20 {
                let q = crate::geometry::random_point(w.domain, w.d, &mut rng);
                let near = g
                    .iter()
                    .map(|p| dist(w.domain, w.d, p, &q))
                    .fold(f64::INFINITY, f64::min);
                assert!(near < 0.25, "{w:?}: {near}");
            }
        }
        assert!(
            dense_grid(&WeightSpec::cone(3, 0.0, 0.0).unwrap(), 64, 4).len() <= MAX_GRID_POINTS
        );
    }

    #[test]
    fn sup_norm_of_known_polynomial() {
        let w = WeightSpec::cone(2, 0.0, 0.0).unwrap();
        let f = project_fn(&w, 2, |p: &Point| p.t * p.t - 0.5 * p.x[0], 6).unwrap();
        let ev = NormEvaluator::new(&w, 2, Norm::Inf);
        // max of t^2 - x1 / 2 on the cone is 1.5 at (-1, 0, 1)
        assert!((ev.norm(&f).unwrap() - 1.5).abs() < 1e-9);
    }

    #[test]
    fn modulus_properties() {
        let w = WeightSpec::surface(2, -1.0, 0.0).unwrap();
        let ev = NormEvaluator::new(&w, 10, Norm::Two);
        let c = SpectralCoeffs::from_vec(&w, 3, {
            let mut v = vec![0.0; w.dim_pi(3)];
            v[0] = 2.0;
            v
        })
        .unwrap();
        assert_eq!(modulus(&c, 1.0, 0.5, &ev).unwrap(), 0.0);
        for s in 0..4 {
            let f = random(&w, 10, s);
            for r in [1.0, 2.0, 3.0] {
                let mut last = 0.0;
                for i in 1..60 {
                    let t = 3.1 * (i as f64 / 60.0).powi(2);
                    let m = modulus(&f, r, t, &ev).unwrap();
                    assert!(m >= last, "not monotone at t = {t}");
                    assert!(m <= 2f64.powf(r + 2.0) * f.norm());
                    last = m;
                }
            }
        }
        assert!(modulus(&c, 1.0, 0.0, &ev).is_err());
        let evi = NormEvaluator::new(&w, 6, Norm::Inf);
        let f = random(&w, 6, 9);
        let (a, b) = (
            modulus(&f, 2.0, 0.2, &evi).unwrap(),
            modulus(&f, 2.0, 0.8, &evi).unwrap(),
        );
        assert!(0.0 < a && a <= b && b <= 16.0 * evi.norm(&f).unwrap());
    }

    #[test]
    fn k_functional_vanishes_like_t_to_the_r_on_polynomials() {
        let w = WeightSpec::cone(2, 0.0, 0.0).unwrap();
        let ev = NormEvaluator::new(&w, 6, Norm::Two);
        let f = random(&w, 6, 3);
        for r in [1.0, 2.0] {
            let k1 = k_functional_upper(&f, r, 1e-3, &ev).unwrap();
            let k2 = k_functional_upper(&f, r, 1e-4, &ev).unwrap();
            assert_eq!(k1.best, Some(3));
            let want = frac_diff(&f, r).unwrap().norm();
            assert!((k1.value / 1e-3f64.powf(r) - want).abs() < 1e-9 * want);
            assert!((k1.value / k2.value - 10f64.powf(r)).abs() < 1e-6);
        }
        let big = k_functional_upper(&f, 2.0, 3.0, &ev).unwrap();
        assert!(big.value <= f.norm());
    }

    #[test]
    fn best_errors() {
        let w = WeightSpec::surface(2, -1.0, 0.0).unwrap();
        let f = random(&w, 8, 4);
        for p in [Norm::Two, Norm::Inf] {
            let ev = NormEvaluator::new(&w, 8, p);
            let e: Vec<f64> = (0..=16)
                .map(|n| best_approx_error(&f, n, &ev).unwrap())
                .collect();
            if p == Norm::Two {
                assert!(e.windows(2).all(|v| v[1] <= v[0]));
                assert_eq!(e[8], 0.0);
            }
            assert!(e[16] < 1e-12, "{p:?}: {}", e[16]);
        }
    }
}
