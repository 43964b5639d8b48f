//! Invariants of every module as randomized properties.

use conekit::approx::{best_approx_error, modulus};
use conekit::approx::{cesaro_mean, frac_diff, translate, Norm, NormEvaluator, SpectralCoeffs};
use conekit::geometry::{
    build_separated_set, cap_measure_quad, dist, random_point, Domain, Point, WeightSpec,
};
use conekit::kernels::{KernelConfig, KernelEvaluator};
use conekit::specfun::{
    cutoff_eval, gauss_jacobi_cached, jacobi_eval_all, jacobi_norm, Cutoff, JacobiParams,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn weight(cone: bool, gamma: f64, mu: f64) -> WeightSpec {
    if cone {
        WeightSpec::cone(2, gamma, mu).unwrap()
    } else {
        WeightSpec::surface(2, -1.0, gamma).unwrap()
    }
}

fn points(w: &WeightSpec, k: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k)
        .map(|_| random_point(w.domain, w.d, &mut rng))
        .collect()
}

fn poly(w: &WeightSpec, n: usize, seed: u64) -> SpectralCoeffs {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = (0..w.dim_pi(n)).map(|_| rng.gen_range(-1.0..1.0)).collect();
    SpectralCoeffs::from_vec(w, n, c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gauss_jacobi_is_orthogonal(a in -0.9f64..3.0, b in -0.9f64..3.0, m in 2usize..14) {
        let p = JacobiParams::new(a, b).unwrap();
        let rule = gauss_jacobi_cached(m, p).unwrap();
        prop_assert!(rule.weights.iter().all(|&w| w > 0.0));
        prop_assert!((rule.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let mut v = vec![0.0; m];
        let mut gram = vec![vec![0.0; m]; m];
        for (&x, &wx) in rule.nodes.iter().zip(&rule.weights) {
            jacobi_eval_all(p, x, &mut v);
            for k in 0..m {
                for l in 0..m {
                    gram[k][l] += wx * v[k] * v[l];
                }
            }
        }
        // the m-point rule is exact to degree 2m - 1 >= k + l
        for k in 0..m {
            for l in 0..m {
                let want = if k == l { jacobi_norm(k, p) } else { 0.0 };
                prop_assert!((gram[k][l] - want).abs() < 1e-10 * (1.0 + want), "{k} {l}");
            }
        }
    }

    #[test]
    fn cutoffs_are_admissible(t in 0.0f64..3.0) {
        let a = cutoff_eval(Cutoff::TypeA, t);
        prop_assert!((0.0..=1.0).contains(&a));
        if t <= 1.0 { prop_assert_eq!(a, 1.0); }
        if t >= 2.0 { prop_assert_eq!(a, 0.0); }
        let b = cutoff_eval(Cutoff::TypeBFrame, t);
        prop_assert!((0.0..=1.0).contains(&b));
        if !(0.5..=2.0).contains(&t) { prop_assert_eq!(b, 0.0); }
        if (0.5..=1.0).contains(&t) {
            let s = b * b + cutoff_eval(Cutoff::TypeBFrame, 2.0 * t).powi(2);
            prop_assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn points_lie_in_the_domain(cone in any::<bool>(), seed in any::<u64>()) {
        let w = weight(cone, 0.0, 0.0);
        for p in points(&w, 20, seed) {
            let r = p.norm_x(2);
            if cone {
                prop_assert!(r <= p.t + 1e-12);
            } else {
                prop_assert!((r - p.t).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn distance_is_a_metric(cone in any::<bool>(), seed in any::<u64>()) {
        let dom = if cone { Domain::Cone } else { Domain::Surface };
        let w = weight(cone, 0.0, 0.0);
        let p = points(&w, 3, seed);
        let (a, b, c) = (&p[0], &p[1], &p[2]);
        let ab = dist(dom, 2, a, b);
        prop_assert!((0.0..=std::f64::consts::PI + 1e-12).contains(&ab));
        prop_assert!(dist(dom, 2, a, a) < 1e-7);
        prop_assert!((ab - dist(dom, 2, b, a)).abs() < 1e-14);
        prop_assert!(ab <= dist(dom, 2, a, c) + dist(dom, 2, c, b) + 1e-10);
    }

    #[test]
    fn reproducing_kernel_is_symmetric(cone in any::<bool>(), gamma in -0.5f64..2.0, seed in any::<u64>()) {
        let w = weight(cone, gamma, if cone { 0.5 } else { 0.0 });
        let ev = KernelEvaluator::new(&KernelConfig::new(w), 12).unwrap();
        let p = points(&w, 2, seed);
        for n in [0usize, 3, 12] {
            let (a, b) = (ev.reprod(n, &p[0], &p[1]), ev.reprod(n, &p[1], &p[0]));
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
        }
        prop_assert!((ev.reprod(0, &p[0], &p[1]) - 1.0).abs() < 1e-10);
        let lam: Vec<f64> = (0..=12).map(|n| ev.christoffel(n, &p[0])).collect();
        prop_assert!((lam[0] - 1.0).abs() < 1e-10);
        prop_assert!(lam.windows(2).all(|x| x[1] <= x[0] * (1.0 + 1e-12)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn separated_sets_are_separated(cone in any::<bool>(), eps in 0.08f64..0.7, seed in 0u64..1000) {
        let dom = if cone { Domain::Cone } else { Domain::Surface };
        let s = build_separated_set(dom, 2, eps, seed).unwrap();
        prop_assert!(s.min_separation() >= eps - 1e-12, "{}", s.min_separation());
        prop_assert!(s.covering_estimate(500, seed) <= 2.0 * eps);
    }

    #[test]
    fn caps_grow_with_radius(cone in any::<bool>(), seed in any::<u64>(), r in 0.02f64..1.5) {
        let w = weight(cone, 0.0, 0.0);
        let p = &points(&w, 1, seed)[0];
        let a = cap_measure_quad(&w, p, r).unwrap();
        let b = cap_measure_quad(&w, p, 1.3 * r).unwrap();
        prop_assert!(a > 0.0 && a <= b * (1.0 + 1e-9) && b <= 1.0 + 1e-9);
    }

    #[test]
    fn translation_contracts_and_powers_compose(cone in any::<bool>(), theta in 0.0f64..3.14, seed in any::<u64>()) {
        let w = weight(cone, 0.0, 0.0);
        let f = poly(&w, 8, seed);
        prop_assert!(translate(&f, theta).unwrap().norm() <= f.norm() * (1.0 + 1e-12));
        let twice = frac_diff(&frac_diff(&f, 2.0).unwrap(), 2.0).unwrap();
        let once = frac_diff(&f, 4.0).unwrap();
        prop_assert!(twice.axpby(1.0, &once, -1.0).norm() <= 1e-10 * once.norm());
    }

    #[test]
    fn cesaro_means_of_positive_functions_are_positive(seed in any::<u64>()) {
        // delta above alpha + beta + 2 of the Jacobi reduction gives a positive kernel
        let w = weight(false, 0.0, 0.0);
        let h = poly(&w, 3, seed);
        let probes = points(&w, 200, seed ^ 1);
        let sq = conekit::approx::project_fn(&w, 6, |q: &Point| h.eval(q).unwrap().powi(2), 12).unwrap();
        let c = cesaro_mean(&sq, 6, 2.0).unwrap();
        prop_assert!(c.eval_many(&probes).unwrap().iter().all(|&v| v >= -1e-10));
    }

    #[test]
    fn smoothness_quantities_are_monotone(cone in any::<bool>(), seed in any::<u64>()) {
        let w = weight(cone, 0.0, 0.0);
        let f = poly(&w, 10, seed);
        let ev = NormEvaluator::new(&w, 10, Norm::Two);
        let ts = [0.05, 0.1, 0.3, 0.8, 2.0];
        let om: Vec<f64> = ts.iter().map(|&t| modulus(&f, 1.0, t, &ev).unwrap()).collect();
        prop_assert!(om.windows(2).all(|x| x[0] <= x[1] * (1.0 + 1e-12)));
        let e: Vec<f64> = (0..=10).map(|n| best_approx_error(&f, n, &ev).unwrap()).collect();
        prop_assert!(e.windows(2).all(|x| x[1] <= x[0] * (1.0 + 1e-12)));
        prop_assert!(e[10] <= 1e-12 * f.norm());
    }
}
