use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponents of the Jacobi weight (1 - x)^alpha (1 + x)^beta.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0 && beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Jacobi exponents must exceed -1, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(Self { alpha, beta })
    }
}

/// P_n^{(alpha,beta)}(x) by the forward three-term recurrence.
pub fn jacobi_eval(n: usize, p: JacobiParams, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let (a, b) = (p.alpha, p.beta);
    let mut cur = 0.5 * ((a - b) + (a + b + 2.0) * x);
    for k in 2..=n {
        let next = jacobi_step(k, a, b, x, cur, prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Fills `out[k] = P_k^{(alpha,beta)}(x)` for k < out.len().
pub fn jacobi_eval_all(p: JacobiParams, x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    if out.len() == 1 {
        return;
    }
    let (a, b) = (p.alpha, p.beta);
    out[1] = 0.5 * ((a - b) + (a + b + 2.0) * x);
    for k in 2..out.len() {
        out[k] = jacobi_step(k, a, b, x, out[k - 1], out[k - 2]);
    }
}

#[inline]
fn jacobi_step(k: usize, a: f64, b: f64, x: f64, p1: f64, p2: f64) -> f64 {
    let n = k as f64;
    let s = 2.0 * n + a + b;
    let c1 = 2.0 * n * (n + a + b) * (s - 2.0);
    let c2 = (s - 1.0) * (a * a - b * b);
    let c3 = (s - 2.0) * (s - 1.0) * s;
    let c4 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
    ((c2 + c3 * x) * p1 - c4 * p2) / c1
}

/// Squared norm h_n of P_n^{(alpha,beta)} under the unit-mass Jacobi weight.
pub fn jacobi_norm(n: usize, p: JacobiParams) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let (a, b) = (p.alpha, p.beta);
    let mut r = 1.0;
    for i in 0..n {
        let i = i as f64;
        r *= (a + 1.0 + i) * (b + 1.0 + i) / ((i + 1.0) * (a + b + 2.0 + i));
    }
    let nf = n as f64;
    r * (a + b + nf + 1.0) / (a + b + 2.0 * nf + 1.0)
}

/// P_n^{(alpha,beta)}(1) = (alpha + 1)_n / n!.
pub fn jacobi_at_one(n: usize, p: JacobiParams) -> f64 {
    (0..n).fold(1.0, |acc, i| {
        acc * (p.alpha + 1.0 + i as f64) / (i as f64 + 1.0)
    })
}

/// c_{alpha,beta} = Gamma(alpha + beta + 2) / (Gamma(alpha + 1) Gamma(beta + 1)).
pub fn c_ab(alpha: f64, beta: f64) -> f64 {
    use statrs::function::gamma::ln_gamma;
    (ln_gamma(alpha + beta + 2.0) - ln_gamma(alpha + 1.0) - ln_gamma(beta + 1.0)).exp()
}

/// c_{a,b} / c_{a+k,b} for a non-negative integer shift k, as a finite product.
pub fn c_ratio_shift_first(a: f64, b: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| {
        let i = i as f64;
        acc * (a + 1.0 + i) / (a + b + 2.0 + i)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    use num_rational::BigRational;
    use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

    /// Hypergeometric series of P_n^{(a,b)}(x) summed in exact rational arithmetic.
    fn series_oracle(n: usize, a: f64, b: f64, x: f64) -> f64 {
        // P_n = (a+1)_n/n! * 2F1(-n, n+a+b+1; a+1; (1-x)/2)
        let q = |v: f64| BigRational::from_f64(v).unwrap();
        let (a, b, x) = (q(a), q(b), q(x));
        let one = BigRational::one();
        let two = q(2.0);
        let nn = BigRational::from_usize(n).unwrap();
        let z = (&one - &x) / &two;
        let mut term = one.clone();
        let mut sum = one.clone();
        for k in 0..n {
            let kf = BigRational::from_usize(k).unwrap();
            term = term * (-&nn + &kf) * (&nn + &a + &b + &one + &kf)
                / ((&a + &one + &kf) * (&kf + &one))
                * &z;
            sum += &term;
        }
        let mut pre = one.clone();
        for i in 0..n {
            let i = BigRational::from_usize(i).unwrap();
            pre = pre * (&a + &one + &i) / (&i + &one);
        }
        let v = pre * sum;
        if v.is_zero() {
            0.0
        } else {
            v.to_f64().unwrap()
        }
    }

    #[test]
    fn degree_zero_and_endpoint() {
        let p = JacobiParams::new(0.7, -0.3).unwrap();
        assert_eq!(jacobi_eval(0, p, 0.3), 1.0);
        let leg = JacobiParams::new(0.0, 0.0).unwrap();
        assert!((jacobi_eval(5, leg, 1.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn matches_series_example() {
        let p = JacobiParams::new(1.5, -0.5).unwrap();
        let v = jacobi_eval(3, p, 0.2);
        let o = series_oracle(3, 1.5, -0.5, 0.2);
        assert!((v - o).abs() < 1e-13 * o.abs().max(1.0), "{v} {o}");
    }

    #[test]
    fn matches_series_grid() {
        for &a in &[-0.5, 0.0, 1.5, 3.0, -0.9] {
            for &b in &[-0.5, 0.0, 2.0, -0.7] {
                let p = JacobiParams::new(a, b).unwrap();
                for n in 0..=30 {
                    for &x in &[-0.95, -0.4, 0.0, 0.33, 0.8, 1.0] {
                        let v = jacobi_eval(n, p, x);
                        let o = series_oracle(n, a, b, x);
                        let scale = jacobi_at_one(n, p)
                            .abs()
                            .max(jacobi_at_one(n, JacobiParams { alpha: b, beta: a }).abs())
                            .max(1.0);
                        assert!(
                            (v - o).abs() <= 1e-11 * scale,
                            "n={n} a={a} b={b} x={x}: {v} vs {o}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn eval_all_matches_single() {
        let p = JacobiParams::new(2.0, 0.5).unwrap();
        let mut out = vec![0.0; 12];
        jacobi_eval_all(p, -0.37, &mut out);
        for (k, v) in out.iter().enumerate() {
            assert_eq!(*v, jacobi_eval(k, p, -0.37));
        }
    }

    #[test]
    fn norm_hand_values() {
        assert_eq!(jacobi_norm(0, JacobiParams::new(-0.5, -0.5).unwrap()), 1.0);
        assert!((jacobi_norm(1, JacobiParams::new(0.0, 0.0).unwrap()) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(JacobiParams::new(-1.0, 0.0).is_err());
        assert!(JacobiParams::new(0.0, -1.2).is_err());
    }

    #[test]
    fn c_ratio_matches_gamma() {
        for &(a, b, k) in &[(0.0, 0.0, 3usize), (1.5, -0.5, 4), (-0.5, 2.0, 7)] {
            let r = c_ab(a, b) / c_ab(a + k as f64, b);
            assert!((r - c_ratio_shift_first(a, b, k)).abs() < 1e-12 * r);
        }
    }
}
