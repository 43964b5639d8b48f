use crate::error::{Error, Result};

use super::jacobi::{jacobi_eval_all, JacobiParams};

/// Gegenbauer polynomial C_n^lambda(x) by its three-term recurrence.
pub fn gegenbauer_eval(n: usize, lambda: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * lambda * x;
    for k in 2..=n {
        let kf = k as f64;
        let next = (2.0 * (kf + lambda - 1.0) * x * cur - (kf + 2.0 * lambda - 2.0) * prev) / kf;
        prev = cur;
        cur = next;
    }
    cur
}

/// Zonal polynomial Z_n^lambda(x) = (n + lambda)/lambda * C_n^lambda(x).
pub fn zonal_eval(n: usize, lambda: f64, x: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "zonal_eval needs lambda > 0, got {lambda}"
        )));
    }
    Ok((n as f64 + lambda) / lambda * gegenbauer_eval(n, lambda, x))
}

/// The lambda -> 0 limit of Z_n^lambda(cos theta): 1 for n = 0, 2 cos(n theta) otherwise.
pub fn zonal_limit0(n: usize, x: f64) -> f64 {
    if n == 0 {
        1.0
    } else {
        2.0 * chebyshev_t(n, x)
    }
}

fn chebyshev_t(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Factor g_k with Z_{2k}^lambda(x) = g_k P_k^{(lambda-1/2,-1/2)}(2x^2 - 1).
pub fn even_zonal_factor(k: usize, lambda: f64) -> f64 {
    let mut r = (2.0 * k as f64 + lambda) / lambda;
    for i in 0..k {
        let i = i as f64;
        r *= (lambda + i) / (0.5 + i);
    }
    r
}

/// Even zonal values Z_{2k}^lambda(x) for k < out.len() through the quadratic transformation.
pub fn even_zonal_all(lambda: f64, x: f64, out: &mut [f64]) {
    let p = JacobiParams {
        alpha: lambda - 0.5,
        beta: -0.5,
    };
    jacobi_eval_all(p, 2.0 * x * x - 1.0, out);
    let mut g = 1.0;
    for (k, v) in out.iter_mut().enumerate() {
        if k > 0 {
            let i = (k - 1) as f64;
            g *= (lambda + i) / (0.5 + i);
        }
        *v *= g * (2.0 * k as f64 + lambda) / lambda;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::jacobi::jacobi_eval;

    fn pochhammer(a: f64, n: usize) -> f64 {
        (0..n).fold(1.0, |acc, i| acc * (a + i as f64))
    }

    #[test]
    fn zonal_degree_zero() {
        assert_eq!(zonal_eval(0, 0.7, 0.2).unwrap(), 1.0);
    }

    #[test]
    fn zonal_at_one_pochhammer() {
        let c = pochhammer(2.0, 2) / 2.0;
        let z = (2.0 + 1.0) / 1.0 * c;
        assert!((zonal_eval(2, 1.0, 1.0).unwrap() - z).abs() < 1e-14);
        assert!((z - 9.0).abs() < 1e-14);
    }

    #[test]
    fn quadratic_transformation() {
        let (n, lambda, x) = (3usize, 2.0, 0.4);
        let lhs = gegenbauer_eval(2 * n, lambda, x);
        let rhs = pochhammer(lambda, n) / pochhammer(0.5, n)
            * jacobi_eval(
                n,
                JacobiParams {
                    alpha: lambda - 0.5,
                    beta: -0.5,
                },
                2.0 * x * x - 1.0,
            );
        assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn even_routes_agree() {
        for &lambda in &[0.5, 1.0, 1.5, 2.0, 3.5] {
            let mut out = vec![0.0; 25];
            for &x in &[-0.9, -0.3, 0.0, 0.45, 0.99, 1.0] {
                even_zonal_all(lambda, x, &mut out);
                for (k, v) in out.iter().enumerate() {
                    let z = zonal_eval(2 * k, lambda, x).unwrap();
                    assert!(
                        (v - z).abs() <= 1e-12 * z.abs().max(1.0) * (k as f64 + 1.0),
                        "{lambda} {x} {k}: {v} {z}"
                    );
                    let g = even_zonal_factor(k, lambda);
                    let j = jacobi_eval(
                        k,
                        JacobiParams {
                            alpha: lambda - 0.5,
                            beta: -0.5,
                        },
                        2.0 * x * x - 1.0,
                    );
                    assert!((g * j - v).abs() <= 1e-12 * v.abs().max(1.0) * (k as f64 + 1.0));
                }
            }
        }
    }

    #[test]
    fn limit_zero_is_cosine() {
        let th: f64 = 0.7;
        for n in 0..10 {
            let want = if n == 0 {
                1.0
            } else {
                2.0 * (n as f64 * th).cos()
            };
            assert!((zonal_limit0(n, th.cos()) - want).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_nonpositive_lambda() {
        assert!(zonal_eval(2, 0.0, 0.1).is_err());
    }
}
