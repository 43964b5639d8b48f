use rand::Rng;
use serde::{Deserialize, Serialize};

use super::weight::Domain;

/// A point (x, t) of the surface or the solid cone; only the first d entries of `x` are used.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: [f64; 3],
    pub t: f64,
}

impl Point {
    pub fn new(x: &[f64], t: f64) -> Self {
        let mut a = [0.0; 3];
        a[..x.len()].copy_from_slice(x);
        Self { x: a, t }
    }

    pub fn apex() -> Self {
        Self {
            x: [0.0; 3],
            t: 0.0,
        }
    }

    /// Point t * xi for a unit vector xi.
    pub fn on_ray(xi: &[f64], t: f64) -> Self {
        let mut a = [0.0; 3];
        for (o, v) in a.iter_mut().zip(xi) {
            *o = t * v;
        }
        Self { x: a, t }
    }

    pub fn norm_x(&self, d: usize) -> f64 {
        self.x[..d].iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Membership test with the given tolerance.
    pub fn is_valid(&self, domain: Domain, d: usize, tol: f64) -> bool {
        if !(self.t >= -tol && self.t <= 1.0 + tol) {
            return false;
        }
        let r = self.norm_x(d);
        match domain {
            Domain::Surface => (r - self.t).abs() <= tol,
            Domain::Cone => r <= self.t + tol,
        }
    }

    /// Direction x / t on the surface (arbitrary unit vector at the apex).
    pub fn direction(&self, d: usize) -> [f64; 3] {
        let r = self.norm_x(d);
        let mut a = [0.0; 3];
        if r > 0.0 {
            for i in 0..d {
                a[i] = self.x[i] / r;
            }
        } else {
            a[0] = 1.0;
        }
        a
    }

    /// Lift to the upper hemisphere S^d_+: (x / t, sqrt(1 - |x/t|^2)); the north pole at the apex.
    pub fn lift_cone(&self, d: usize) -> [f64; 4] {
        let mut a = [0.0; 4];
        if self.t <= 0.0 {
            a[d] = 1.0;
            return a;
        }
        let mut r2 = 0.0;
        for i in 0..d {
            a[i] = self.x[i] / self.t;
            r2 += a[i] * a[i];
        }
        let r = r2.sqrt().min(1.0);
        a[d] = ((1.0 - r) * (1.0 + r)).max(0.0).sqrt();
        a
    }
}

/// Uniform point on S^{d-1}.
pub fn random_unit<R: Rng>(d: usize, rng: &mut R) -> [f64; 3] {
    loop {
        let mut v = [0.0f64; 3];
        let mut s = 0.0f64;
        for c in v.iter_mut().take(d) {
            *c = rng.gen_range(-1.0..1.0);
            s += *c * *c;
        }
        if s > 1e-4 && s <= 1.0 {
            let r = s.sqrt();
            for c in v.iter_mut().take(d) {
                *c /= r;
            }
            return v;
        }
    }
}

/// Random point of the domain, uniform in the parameters (t uniform; direction or ball point uniform).
pub fn random_point<R: Rng>(domain: Domain, d: usize, rng: &mut R) -> Point {
    let t: f64 = rng.gen_range(0.0..=1.0);
    let xi = random_unit(d, rng);
    match domain {
        Domain::Surface => Point::on_ray(&xi, t),
        Domain::Cone => {
            let rho: f64 = rng.gen_range(0.0f64..=1.0).powf(1.0 / d as f64);
            let mut p = Point::on_ray(&xi, t * rho);
            p.t = t;
            p
        }
    }
}
