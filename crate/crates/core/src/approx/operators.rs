//! Operators diagonal in the degree: projections, Cesaro means, convolution with functions of one
//! variable, translation, fractional powers of the second-order operator and the localized operator.

use statrs::function::gamma::ln_gamma;

use super::spectral::{project_fn, SpectralCoeffs};
use crate::error::{Error, Result};
use crate::geometry::{Point, WeightSpec};
use crate::specfun::{
    cutoff_eval, gauss_jacobi_cached, jacobi_at_one, jacobi_eval_all, Cutoff, JacobiParams,
};

/// Jacobi parameters (lambda - 1/2, -1/2) of the one-variable structure behind the addition formula.
pub fn jacobi_reduction(w: &WeightSpec) -> Result<JacobiParams> {
    if !w.localizable() {
        return Err(Error::Unsupported(format!("no addition formula for {w:?}")));
    }
    JacobiParams::new(w.zonal_lambda() - 0.5, -0.5)
}

/// Component of f in the space of orthogonal polynomials of exact degree n, computed from inner
/// products with the reference rule of degree `quad_degree`.
pub fn project(
    w: &WeightSpec,
    n: usize,
    f: impl Fn(&Point) -> f64 + Sync,
    quad_degree: usize,
) -> Result<SpectralCoeffs> {
    Ok(project_fn(w, n, f, quad_degree)?.proj(n))
}

/// (C, delta) weights binom(n - k + delta, n - k) / binom(n + delta, n), k = 0..=n.
pub fn cesaro_multipliers(n: usize, delta: f64) -> Vec<f64> {
    let lb = |m: usize| ln_gamma(m as f64 + delta + 1.0) - ln_gamma(m as f64 + 1.0);
    let top = lb(n);
    (0..=n).map(|k| (lb(n - k) - top).exp()).collect()
}

/// Cesaro (C, delta) mean of the Fourier partial sums of f, a polynomial of degree n.
pub fn cesaro_mean(f: &SpectralCoeffs, n: usize, delta: f64) -> Result<SpectralCoeffs> {
    if !(delta >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "Cesaro order must be nonnegative, got {delta}"
        )));
    }
    let m = cesaro_multipliers(n, delta);
    Ok(f.resized(n).multiply(|k| m[k]))
}

/// Lambda_k(g) = int g R_k w_{alpha,beta} (unit mass) for k = 0..=nmax, by a Gauss-Jacobi rule with
/// `nodes` points (exact for polynomial g of degree < 2 nodes - nmax).
pub fn convolution_multipliers(
    w: &WeightSpec,
    g: impl Fn(f64) -> f64,
    nmax: usize,
    nodes: usize,
) -> Result<Vec<f64>> {
    let p = jacobi_reduction(w)?;
    let rule = gauss_jacobi_cached(nodes.max(nmax + 1), p)?;
    let norms: Vec<f64> = (0..=nmax).map(|k| jacobi_at_one(k, p)).collect();
    let mut out = vec![0.0; nmax + 1];
    let mut v = vec![0.0; nmax + 1];
    for (&x, &wx) in rule.nodes.iter().zip(&rule.weights) {
        let gx = g(x) * wx;
        jacobi_eval_all(p, x, &mut v);
        for k in 0..=nmax {
            out[k] += gx * v[k] / norms[k];
        }
    }
    Ok(out)
}

/// Coefficients of the convolution f * g: degree k scaled by Lambda_k(g).
pub fn convolve(f: &SpectralCoeffs, g: impl Fn(f64) -> f64) -> Result<SpectralCoeffs> {
    let m = convolution_multipliers(&f.weight, g, f.degree, f.degree + 200)?;
    Ok(f.multiply(|k| m[k]))
}

/// R_k(cos theta) = P_k(cos theta) / P_k(1) for k = 0..=nmax.
pub fn translate_multipliers(w: &WeightSpec, theta: f64, nmax: usize) -> Result<Vec<f64>> {
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::InvalidParameter(format!(
            "translation angle {theta} outside [0, pi]"
        )));
    }
    let p = jacobi_reduction(w)?;
    let mut v = vec![0.0; nmax + 1];
    jacobi_eval_all(p, theta.cos(), &mut v);
    Ok(v.iter()
        .enumerate()
        .map(|(k, x)| x / jacobi_at_one(k, p))
        .collect())
}

/// Translation S_theta f: degree k scaled by R_k(cos theta).
pub fn translate(f: &SpectralCoeffs, theta: f64) -> Result<SpectralCoeffs> {
    let m = translate_multipliers(&f.weight, theta, f.degree)?;
    Ok(f.multiply(|k| m[k]))
}

/// Fractional power (-D)^{r/2} f: degree k scaled by mu(k)^{r/2}.
pub fn frac_diff(f: &SpectralCoeffs, r: f64) -> Result<SpectralCoeffs> {
    if !(r >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "order must be nonnegative, got {r}"
        )));
    }
    let w = f.weight;
    f.try_multiply(|k| Ok(w.eigen_mu(k)?.powf(r / 2.0)))
}

/// Localized operator L_n * f = sum_k a(k/n) proj_k f; L_0 * f = proj_0 f.
pub fn near_best_spectral(f: &SpectralCoeffs, n: usize, cutoff: Cutoff) -> SpectralCoeffs {
    if n == 0 {
        return f.resized(0);
    }
    let top = f.degree.min(2 * n);
    f.resized(top)
        .multiply(|k| cutoff_eval(cutoff, k as f64 / n as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::spectral::project_fn;
    use crate::geometry::{random_point, reference_quadrature};
    use crate::kernels::{KernelConfig, KernelEvaluator, OrthoBasis};
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
    fn projection_of_basis_elements() {
        let w = WeightSpec::surface(2, -1.0, 0.0).unwrap();
        let b = OrthoBasis::new(&w, 4).unwrap();
        let i = b.degree_range(3).start + 2;
        let f = |p: &Point| {
            let mut v = Vec::new();
            b.eval_all(p, &mut v);
            v[i]
        };
        for k in 0..=5 {
            let c = project(&w, k, f, 12).unwrap();
            let e = c.norm();
            if k == 3 {
                assert!((c.coeffs[i] - 1.0).abs() < 1e-9 && (e - 1.0).abs() < 1e-9);
            } else {
                assert!(e < 1e-9, "k = {k}: {e}");
            }
        }
        let one = project_fn(&w, 3, |_| 1.0, 6).unwrap();
        assert!(
            (one.coeffs[0] - 1.0).abs() < 1e-12 && one.coeffs[1..].iter().all(|c| c.abs() < 1e-12)
        );
    }

    #[test]
    fn projections_reassemble_polynomial() {
        let w = WeightSpec::cone(2, 0.0, 0.5).unwrap();
        let g = random(&w, 6, 1);
        let f = |p: &Point| g.eval(p).unwrap();
        let mut sum = SpectralCoeffs::zeros(&w, 6);
        for k in 0..=6 {
            sum = sum.axpby(1.0, &project(&w, k, f, 12).unwrap(), 1.0);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let p = random_point(w.domain, w.d, &mut rng);
            assert!((sum.eval(&p).unwrap() - f(&p)).abs() < 1e-8);
        }
    }

    #[test]
    fn cesaro_basics() {
        let m = cesaro_multipliers(5, 2.0);
        assert!((m[0] - 1.0).abs() < 1e-14);
        // binom(n - k + 2, 2) / binom(n + 2, 2) at n = 5, k = 3
        assert!((m[3] - 6.0 / 21.0).abs() < 1e-14);
        let w = WeightSpec::surface(2, -1.0, 0.0).unwrap();
        let f = random(&w, 4, 3);
        let s0 = cesaro_mean(&f, 0, 3.0).unwrap();
        assert_eq!(s0.coeffs, vec![f.coeffs[0]]);
    }

    #[test]
    fn cesaro_positive_and_contractive() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for w in [
            WeightSpec::surface(2, -1.0, 0.0).unwrap(),
            WeightSpec::cone(2, 0.0, 0.0).unwrap(),
        ] {
            let p = jacobi_reduction(&w).unwrap();
            let delta = p.alpha + p.beta + 2.0;
            let g = random(&w, 3, 5);
            let f2 = |q: &Point| g.eval(q).unwrap().powi(2);
            let fh = project_fn(&w, 6, f2, 12).unwrap();
            let pts: Vec<Point> = (0..1000)
                .map(|_| random_point(w.domain, w.d, &mut rng))
                .collect();
            let fmax = fh
                .eval_many(&pts)
                .unwrap()
                .iter()
                .fold(0.0f64, |a, v| a.max(v.abs()));
            for n in [1usize, 2, 4, 6] {
                let s = cesaro_mean(&fh, n, delta).unwrap();
                let v = s.eval_many(&pts).unwrap();
                assert!(v.iter().all(|x| *x >= -1e-10), "{w:?} n = {n}");
                assert!(v.iter().all(|x| x.abs() <= fmax * (1.0 + 1e-8) + 1e-12));
            }
        }
    }

    #[test]
    fn convolution_matches_direct_integral() {
        let w = WeightSpec::surface(2, -1.0, 0.0).unwrap();
        let g = |x: f64| 0.3 + x - 0.7 * x * x + 0.5 * x.powi(5);
        let f = random(&w, 6, 6);
        let fg = convolve(&f, g).unwrap();
        assert!((convolution_multipliers(&w, |_| 1.0, 3, 10).unwrap()[0] - 1.0).abs() < 1e-14);
        assert!(convolution_multipliers(&w, |_| 1.0, 3, 10).unwrap()[1..]
            .iter()
            .all(|v| v.abs() < 1e-13));
        // direct: (f * g)(x) = int f(y) T g(x, y) w(y) dy, with T g from the addition formula
        let ev = KernelEvaluator::new(&KernelConfig::new(w), 8).unwrap();
        let q = reference_quadrature(&w, 12).unwrap();
        let fv = f.eval_many(&q.rule.nodes).unwrap();
        let direct = |x: &Point| -> f64 {
            q.rule
                .nodes
                .iter()
                .zip(&q.rule.weights)
                .zip(&fv)
                .map(|((y, wy), fy)| wy * fy * ev.transform(g, x, y))
                .sum()
        };
        let got = project_fn(&w, 6, direct, 12).unwrap();
        for (a, b) in got.coeffs.iter().zip(&fg.coeffs) {
            assert!((a - b).abs() < 1e-7, "{a} vs {b}");
        }
    }

    #[test]
    fn young_and_translation_bounds() {
        let w = WeightSpec::cone(2, 0.0, 0.0).unwrap();
        let p = jacobi_reduction(&w).unwrap();
        let q = gauss_jacobi_cached(400, p).unwrap();
        for s in 0..5u64 {
            let f = random(&w, 8, 10 + s);
            let c = 0.3 * s as f64 - 0.5;
            let g = move |x: f64| (x - c).abs() - 0.2;
            let g1 = q.integrate(|x| g(x).abs());
            assert!(convolve(&f, g).unwrap().norm() <= f.norm() * g1 * (1.0 + 1e-10));
            for th in [0.0, 0.3, 1.0, 2.5, std::f64::consts::PI] {
                let t = translate(&f, th).unwrap();
                assert!(t.norm() <= f.norm() * (1.0 + 1e-12));
                if th == 0.0 {
                    assert_eq!(t, f);
                }
            }
        }
        assert!(translate(&random(&w, 2, 0), 4.0).is_err());
    }

    #[test]
    fn translation_preserves_positivity() {
        let w = WeightSpec::surface(2, -1.0, 0.5).unwrap();
        let g = random(&w, 3, 7);
        let fh = project_fn(&w, 6, |q: &Point| g.eval(q).unwrap().powi(2), 12).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let pts: Vec<Point> = (0..500)
            .map(|_| random_point(w.domain, w.d, &mut rng))
            .collect();
        for th in [0.1, 0.7, 1.5, 3.0] {
            let v = translate(&fh, th).unwrap().eval_many(&pts).unwrap();
            assert!(v.iter().all(|x| *x >= -1e-9), "theta = {th}");
        }
    }

    #[test]
    fn fractional_powers() {
        let w = WeightSpec::surface(2, -1.0, 0.0).unwrap();
        let f = random(&w, 5, 9);
        let d0 = frac_diff(&f, 1.3).unwrap();
        assert_eq!(d0.coeffs[0], 0.0);
        let d2 = frac_diff(&f, 2.0).unwrap();
        let direct = f.multiply(|k| (k * (k + 1)) as f64);
        for (a, b) in d2.coeffs.iter().zip(&direct.coeffs) {
            assert!((a - b).abs() < 1e-12 * (1.0 + b.abs()));
        }
        assert!(frac_diff(
            &SpectralCoeffs::zeros(&WeightSpec::surface(2, 0.0, 0.0).unwrap(), 2),
            1.0
        )
        .is_err());
        // commutation with the localized operator on coefficient vectors
        let a = frac_diff(&near_best_spectral(&f, 3, Cutoff::TypeA), 1.5).unwrap();
        let b = near_best_spectral(&frac_diff(&f, 1.5).unwrap(), 3, Cutoff::TypeA);
        for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
            assert!((x - y).abs() <= 1e-12 * (1.0 + x.abs()));
        }
    }
}
