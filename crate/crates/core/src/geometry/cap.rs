//! Weighted measures of intrinsic caps: closed-form equivalent and adaptive quadrature.

use std::f64::consts::{FRAC_PI_2, PI};

use super::point::Point;
use super::weight::{Domain, WeightSpec};
use crate::error::{Error, Result};

/// Closed form equivalent (up to absolute constants) to the weighted measure of the cap c(center, r).
pub fn cap_measure_formula(w: &WeightSpec, center: &Point, r: f64) -> f64 {
    let d = w.d as f64;
    let t = center.t;
    let r2 = r * r;
    match w.domain {
        Domain::Surface => {
            r.powf(d) * (t + r2).powf(w.beta + d / 2.0) * (1.0 - t + r2).powf(w.gamma + 0.5)
        }
        Domain::Cone => {
            let x2: f64 = center.x[..w.d].iter().map(|v| v * v).sum();
            r.powf(d + 1.0)
                * (t + r2).powf(w.beta + (d - 1.0) / 2.0)
                * (1.0 - t + r2).powf(w.gamma + 0.5)
                * ((t * t - x2).max(0.0) + r2 * (t + r2)).powf(w.mu)
        }
    }
}

/// The weight scaled by cap measures: n^dim * cap(center, 1/n), the quantity w(n; t) of the kernel bounds.
pub fn w_n(w: &WeightSpec, center: &Point, n: f64) -> f64 {
    n.powi(w.dim() as i32) * cap_measure_formula(w, center, 1.0 / n)
}

fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if b <= a {
        return Ok(0.0);
    }
    let out = quadrature::integrate(f, a, b, tol);
    let scale = out.integral.abs().max(1e-300);
    if !out.integral.is_finite() || out.error_estimate > 1e-6 * scale + 1e3 * tol {
        return Err(Error::Quadrature {
            achieved: out.error_estimate,
        });
    }
    Ok(out.integral)
}

/// Integral split at interior break points.
fn integrate_split(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: f64,
) -> Result<f64> {
    let mut pts = vec![a];
    let mut bs: Vec<f64> = breaks.iter().copied().filter(|&c| c > a && c < b).collect();
    bs.sort_by(f64::total_cmp);
    pts.extend(bs);
    pts.push(b);
    let mut s = 0.0;
    for w in pts.windows(2) {
        s += integrate(f, w[0], w[1], tol)?;
    }
    Ok(s)
}

/// Largest inner angle psi0(s) so that points at height s with angle <= psi0 lie in the cap.
fn psi_max(t: f64, s: f64, r: f64) -> f64 {
    let num = r.cos() - ((1.0 - t) * (1.0 - s)).max(0.0).sqrt();
    let den = (t * s).max(0.0).sqrt();
    if num <= 0.0 {
        PI
    } else if den == 0.0 || num >= den {
        0.0
    } else {
        2.0 * (num / den).acos()
    }
}

/// Heights where the cap starts to contain whole slices (break point of psi0).
fn tau_break(t: f64, r: f64) -> Option<f64> {
    let c = r.cos();
    if c <= 0.0 || t >= 1.0 {
        return None;
    }
    let s = 1.0 - c * c / (1.0 - t);
    (s > 0.0 && s < 1.0).then(|| s.sqrt().asin())
}

/// Sign changes of f on [lo, hi], refined by bisection.
fn level_crossings(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Vec<f64> {
    let m = 256;
    let mut out = Vec::new();
    let mut xa = lo;
    let mut fa = f(xa);
    for i in 1..=m {
        let xb = lo + (hi - lo) * i as f64 / m as f64;
        let fb = f(xb);
        if (fa < 0.0) != (fb < 0.0) {
            let (mut a, mut b, mut ga) = (xa, xb, fa);
            for _ in 0..60 {
                let c = 0.5 * (a + b);
                let gc = f(c);
                if (gc < 0.0) == (ga < 0.0) {
                    a = c;
                    ga = gc;
                } else {
                    b = c;
                }
            }
            out.push(0.5 * (a + b));
        }
        xa = xb;
        fa = fb;
    }
    out
}

/// Normalized weight measure of the cap, by quadrature over heights and an inner angular fraction.
pub fn cap_measure_quad(w: &WeightSpec, center: &Point, r: f64) -> Result<f64> {
    let t = center.t.clamp(0.0, 1.0);
    let e = w.t_exponent();
    let g = w.gamma;
    // s = sin^2 b, ds = 2 sin b cos b db
    let dens = move |b: f64| 2.0 * b.sin().powf(2.0 * e + 1.0) * b.cos().powf(2.0 * g + 1.0);
    let a = t.sqrt().asin();
    let lo = (a - r).max(0.0);
    let hi = (a + r).min(FRAC_PI_2);
    let mut breaks: Vec<f64> = tau_break(t, r).into_iter().collect();
    let tol = 1e-12;
    let z = integrate_split(&dens, 0.0, FRAC_PI_2, &breaks, tol)?;
    let frac: Box<dyn Fn(f64) -> Result<f64>> = match w.domain {
        Domain::Surface => {
            let d = w.d;
            Box::new(move |psi0: f64| {
                Ok(if d == 2 {
                    psi0 / PI
                } else {
                    (1.0 - psi0.cos()) / 2.0
                })
            })
        }
        Domain::Cone => {
            let lift = center.lift_cone(w.d);
            let z0 = lift[w.d].clamp(0.0, 1.0);
            let hemi = HemisphereCap::new(w.d, w.mu, z0)?;
            let p1 = hemi.z0.atan2(hemi.z1);
            for target in [p1, PI - p1] {
                breaks.extend(level_crossings(
                    |b| psi_max(t, b.sin().powi(2), r) - target,
                    lo,
                    hi,
                ));
            }
            Box::new(move |psi0: f64| hemi.fraction(psi0))
        }
    };
    let err = std::cell::Cell::new(None);
    let integrand = |b: f64| {
        let s = b.sin().powi(2);
        let psi0 = psi_max(t, s, r);
        if psi0 <= 0.0 {
            return 0.0;
        }
        match frac(psi0) {
            Ok(f) => dens(b) * f,
            Err(e) => {
                err.set(Some(e.to_string()));
                0.0
            }
        }
    };
    let v = integrate_split(&integrand, lo, hi, &breaks, tol)?;
    if err.take().is_some() {
        return Err(Error::Quadrature { achieved: f64::NAN });
    }
    Ok((v / z).clamp(0.0, 1.0))
}

/// Fraction of the hemisphere measure z_{d+1}^{2 mu} d sigma within angle psi0 of a point whose last
/// coordinate is z0.
struct HemisphereCap {
    d: usize,
    mu: f64,
    z0: f64,
    z1: f64,
    total: f64,
}

impl HemisphereCap {
    fn new(d: usize, mu: f64, z0: f64) -> Result<Self> {
        let z1 = ((1.0 - z0) * (1.0 + z0)).max(0.0).sqrt();
        let mut h = Self {
            d,
            mu,
            z0,
            z1,
            total: 1.0,
        };
        h.total = h.partial(PI)?;
        Ok(h)
    }

    fn inner(&self, phi: f64) -> f64 {
        let a = self.z0 * phi.cos();
        let b = self.z1 * phi.sin();
        let p = 2.0 * self.mu;
        match self.d {
            2 => {
                let cmax = if b <= 1e-300 {
                    if a >= 0.0 {
                        PI
                    } else {
                        0.0
                    }
                } else {
                    (-a / b).clamp(-1.0, 1.0).acos()
                };
                if p == 0.0 {
                    cmax
                } else if cmax <= 0.0 {
                    0.0
                } else {
                    quadrature::integrate(
                        |c: f64| (a + b * c.cos()).max(0.0).powf(p),
                        0.0,
                        cmax,
                        1e-13,
                    )
                    .integral
                }
            }
            _ => {
                if b <= 1e-300 {
                    if a >= 0.0 {
                        2.0 * a.powf(p)
                    } else {
                        0.0
                    }
                } else {
                    let top = (a + b).max(0.0).powf(p + 1.0);
                    let bot = (a - b).max(0.0).powf(p + 1.0);
                    (top - bot) / (b * (p + 1.0))
                }
            }
        }
    }

    fn partial(&self, psi0: f64) -> Result<f64> {
        let d = self.d as i32;
        let f = |phi: f64| phi.sin().powi(d - 1) * self.inner(phi);
        let p1 = self.z0.atan2(self.z1);
        integrate_split(&f, 0.0, psi0.min(PI), &[p1, PI - p1], 1e-13)
    }

    fn fraction(&self, psi0: f64) -> Result<f64> {
        Ok((self.partial(psi0)? / self.total).clamp(0.0, 1.0))
    }
}
