//! Nonnegative polynomials equal to one at a center and decaying fast away from it.

use crate::geometry::{Domain, Point};

/// Fast-decay bump polynomial around a fixed center.
#[derive(Clone, Copy, Debug)]
pub struct FastDecay {
    pub domain: Domain,
    pub d: usize,
    pub center: Point,
    pub n: usize,
    pub r: usize,
    m: usize,
}

/// Chebyshev U_k(z) by the three-term recurrence.
fn cheb_u(k: usize, z: f64) -> f64 {
    let (mut a, mut b) = (1.0, 2.0 * z);
    if k == 0 {
        return 1.0;
    }
    for _ in 1..k {
        let c = 2.0 * z * b - a;
        a = b;
        b = c;
    }
    b
}

impl FastDecay {
    pub fn new(domain: Domain, d: usize, center: Point, n: usize, r: usize) -> Self {
        let r = r.max(1);
        let m = (n / (2 * r)).max(1);
        Self {
            domain,
            d,
            center,
            n,
            r,
            m,
        }
    }

    /// Even polynomial S(z) = (U_{2m}(z) / (2m + 1))^{2r}, equal to one at z = 1.
    pub fn s(&self, z: f64) -> f64 {
        let z = z.clamp(-1.0, 1.0);
        let v = cheb_u(2 * self.m, z) / (2 * self.m + 1) as f64;
        v.powi(2 * self.r as i32)
    }

    /// Degree in (y, s): 2mr on the surface, three times that after clearing the cone denominator.
    pub fn degree_certificate(&self) -> usize {
        let base = 2 * self.m * self.r;
        match self.domain {
            Domain::Surface => base,
            Domain::Cone => 3 * base,
        }
    }

    /// Surface bump on the surface of dimension `dd` with centers given by coordinates.
    fn surface_t(&self, x: &[f64], t: f64, y: &[f64], s: f64) -> f64 {
        let xy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
        let a = (0.5 * (xy + t * s)).max(0.0).sqrt();
        let b = ((1.0 - t).max(0.0) * (1.0 - s).max(0.0)).sqrt();
        (self.s(a + b) + self.s(a - b)) / (1.0 + self.s(2.0 * t - 1.0))
    }

    pub fn eval(&self, p: &Point) -> f64 {
        let d = self.d;
        let c = &self.center;
        match self.domain {
            Domain::Surface => self.surface_t(&c.x[..d], c.t, &p.x[..d], p.t),
            Domain::Cone => {
                let lift = |q: &Point, sign: f64| {
                    let mut v = [0.0; 4];
                    v[..d].copy_from_slice(&q.x[..d]);
                    let r2: f64 = q.x[..d].iter().map(|a| a * a).sum();
                    v[d] = sign * (q.t * q.t - r2).max(0.0).sqrt();
                    v
                };
                let xx = lift(c, 1.0);
                let xs = lift(c, -1.0);
                let yy = lift(p, 1.0);
                let ys = lift(p, -1.0);
                let k = d + 1;
                let num = self.surface_t(&xx[..k], c.t, &yy[..k], p.t)
                    + self.surface_t(&xx[..k], c.t, &ys[..k], p.t);
                num / (1.0 + self.surface_t(&xx[..k], c.t, &xs[..k], c.t))
            }
        }
    }
}

/// Value at `point` of the fast-decay polynomial centered at `center`.
pub fn fast_decay_poly(
    domain: Domain,
    d: usize,
    center: &Point,
    n: usize,
    r: usize,
    point: &Point,
) -> f64 {
    FastDecay::new(domain, d, *center, n, r).eval(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{dist, random_point, reference_quadrature, WeightSpec};
    use crate::kernels::OrthoBasis;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn one_at_center_and_s_at_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for domain in [Domain::Surface, Domain::Cone] {
            for _ in 0..20 {
                let c = random_point(domain, 2, &mut rng);
                let f = FastDecay::new(domain, 2, c, 12, 2);
                assert!((f.s(1.0) - 1.0).abs() < 1e-14);
                assert!((f.eval(&c) - 1.0).abs() < 1e-12, "{domain:?} {c:?}");
            }
        }
    }

    #[test]
    fn nonnegative_and_decaying() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for domain in [Domain::Surface, Domain::Cone] {
            let mut consts = Vec::new();
            for n in [8, 16, 32] {
                let mut sup: f64 = 0.0;
                let mut rng2 = ChaCha8Rng::seed_from_u64(7);
                let c = random_point(domain, 2, &mut rng);
                for _ in 0..1000 {
                    let p = random_point(domain, 2, &mut rng2);
                    let v = fast_decay_poly(domain, 2, &c, n, 2, &p);
                    assert!(v >= 0.0);
                    let dd = dist(domain, 2, &c, &p);
                    sup = sup.max(v * (1.0 + n as f64 * dd).powi(4));
                }
                consts.push(sup);
            }
            let (lo, hi) = consts
                .iter()
                .fold((f64::MAX, 0.0f64), |a, &b| (a.0.min(b), a.1.max(b)));
            assert!(hi / lo < 10.0, "{domain:?} {consts:?}");
        }
    }

    #[test]
    fn surface_bump_is_polynomial_of_certified_degree() {
        // a polynomial of degree k has no component of degree > k in the orthogonal expansion
        let w = WeightSpec::surface(2, -1.0, 0.0).unwrap();
        let c = Point::on_ray(&[0.6, 0.8], 0.45);
        let f = FastDecay::new(Domain::Surface, 2, c, 6, 1);
        let k = f.degree_certificate();
        assert!(k <= 6);
        let b = OrthoBasis::new(&w, k + 2).unwrap();
        let q = reference_quadrature(&w, 2 * (k + 2)).unwrap();
        let mut coef = vec![0.0; b.len()];
        let mut v = Vec::new();
        for (z, wt) in q.rule.nodes.iter().zip(&q.rule.weights) {
            b.eval_all(z, &mut v);
            let fz = f.eval(z);
            for i in 0..b.len() {
                coef[i] += wt * fz * v[i];
            }
        }
        for i in b.degree_range(k + 1).chain(b.degree_range(k + 2)) {
            assert!(coef[i].abs() < 1e-10, "{:?} {}", b.label(i), coef[i]);
        }
    }
}
