//! Intrinsic distances. Every distance is evaluated from 1 - cos d, assembled from terms that are
//! each free of cancellation, and converted with d = 2 asin(sqrt((1 - cos d) / 2)).

use super::point::Point;
use super::weight::Domain;

#[inline]
fn from_one_minus_cos(v: f64) -> f64 {
    2.0 * (v.max(0.0) / 2.0).sqrt().min(1.0).asin()
}

/// 1 - cos d_{[0,1]}(t, s) with cos d_{[0,1]} = sqrt(ts) + sqrt((1-t)(1-s)).
#[inline]
fn one_minus_cos_interval(t: f64, s: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    let s = s.clamp(0.0, 1.0);
    let a = (t.sqrt() + s.sqrt()).max(f64::MIN_POSITIVE);
    let b = ((1.0 - t).sqrt() + (1.0 - s).sqrt()).max(f64::MIN_POSITIVE);
    let da = if t == s { 0.0 } else { (t - s) / a };
    let db = if t == s { 0.0 } else { (s - t) / b };
    0.5 * (da * da + db * db)
}

/// Distance on [0,1]: arccos(sqrt(ts) + sqrt((1-t)(1-s))).
pub fn dist_interval(t: f64, s: f64) -> f64 {
    from_one_minus_cos(one_minus_cos_interval(t, s))
}

/// Angle between two unit vectors, accurate for nearby vectors.
pub fn angle_between(u: &[f64], v: &[f64]) -> f64 {
    let dd: f64 = u.iter().zip(v).map(|(a, b)| (a - b) * (a - b)).sum();
    2.0 * (dd.sqrt() / 2.0).min(1.0).asin()
}

/// Geodesic distance on the unit sphere.
pub fn dist_sphere(u: &[f64], v: &[f64]) -> f64 {
    angle_between(u, v)
}

/// Distance on the unit ball: arccos(<u,v> + sqrt(1-|u|^2) sqrt(1-|v|^2)).
pub fn dist_ball(u: &[f64], v: &[f64]) -> f64 {
    let lift = |w: &[f64]| {
        let r2: f64 = w.iter().map(|a| a * a).sum();
        let r = r2.sqrt().min(1.0);
        let mut a = w.to_vec();
        a.push(((1.0 - r) * (1.0 + r)).max(0.0).sqrt());
        a
    };
    angle_between(&lift(u), &lift(v))
}

/// 1 - cos of the surface distance given t, s and the sphere angle psi between the directions.
#[inline]
pub fn one_minus_cos_surface_angle(t: f64, s: f64, psi: f64) -> f64 {
    let half = (psi / 4.0).sin();
    one_minus_cos_interval(t, s) + (t * s).max(0.0).sqrt() * 2.0 * half * half
}

/// Intrinsic distance on the conic surface.
pub fn dist_surface(d: usize, p: &Point, q: &Point) -> f64 {
    let psi = if p.t > 0.0 && q.t > 0.0 {
        angle_between(&p.direction(d)[..d], &q.direction(d)[..d])
    } else {
        0.0
    };
    from_one_minus_cos(one_minus_cos_surface_angle(p.t, q.t, psi))
}

/// Intrinsic distance on the solid cone through the lift to the surface one dimension up.
pub fn dist_cone(d: usize, p: &Point, q: &Point) -> f64 {
    let psi = if p.t > 0.0 && q.t > 0.0 {
        angle_between(&p.lift_cone(d)[..=d], &q.lift_cone(d)[..=d])
    } else {
        0.0
    };
    from_one_minus_cos(one_minus_cos_surface_angle(p.t, q.t, psi))
}

/// Intrinsic distance on the tagged domain.
pub fn dist(domain: Domain, d: usize, p: &Point, q: &Point) -> f64 {
    match domain {
        Domain::Surface => dist_surface(d, p, q),
        Domain::Cone => dist_cone(d, p, q),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::point::{random_point, random_unit};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn dot(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn trivial_values() {
        let xi = [0.6, 0.8];
        let p = Point::on_ray(&xi, 0.3);
        assert_eq!(dist_surface(2, &p, &p), 0.0);
        let top = Point::on_ray(&xi, 1.0);
        assert!((dist_surface(2, &Point::apex(), &top) - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn same_ray_and_top_boundary() {
        let xi = [0.0, 1.0];
        let (th, ph) = (0.7f64, 2.1f64);
        let p = Point::on_ray(&xi, (th / 2.0).cos().powi(2));
        let q = Point::on_ray(&xi, (ph / 2.0).cos().powi(2));
        assert!((dist_surface(2, &p, &q) - (th - ph).abs() / 2.0).abs() < 1e-14);
        let a = [1.3f64.cos(), 1.3f64.sin()];
        let b = [(-0.4f64).cos(), (-0.4f64).sin()];
        let ds = dot(&a, &b).acos();
        let d = dist_surface(2, &Point::on_ray(&a, 1.0), &Point::on_ray(&b, 1.0));
        assert!((d - ds / 2.0).abs() < 1e-14);
    }

    #[test]
    fn decomposition_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let p = random_point(Domain::Surface, 2, &mut rng);
            let q = random_point(Domain::Surface, 2, &mut rng);
            let lhs = 1.0 - dist_surface(2, &p, &q).cos();
            // direct arccos-free right side
            let (t, s) = (p.t, q.t);
            let di = ((t * s).sqrt() + ((1.0 - t) * (1.0 - s)).sqrt()).clamp(-1.0, 1.0);
            let c = dot(&p.direction(2)[..2], &q.direction(2)[..2]).clamp(-1.0, 1.0);
            let rhs = (1.0 - di) + (t * s).sqrt() * (1.0 - (c.acos() / 2.0).cos());
            assert!((lhs - rhs).abs() < 1e-12, "{lhs} {rhs}");
            // raw formula
            let raw = (((dot(&p.x[..2], &q.x[..2]) + t * s) / 2.0).max(0.0).sqrt()
                + ((1.0 - t) * (1.0 - s)).sqrt())
            .clamp(-1.0, 1.0);
            assert!((lhs - (1.0 - raw)).abs() < 1e-12);
        }
    }

    #[test]
    fn cone_matches_raw_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..1000 {
            let p = random_point(Domain::Cone, 2, &mut rng);
            let q = random_point(Domain::Cone, 2, &mut rng);
            let (t, s) = (p.t, q.t);
            let r = ((t * t - dot(&p.x[..2], &p.x[..2])).max(0.0)
                * (s * s - dot(&q.x[..2], &q.x[..2])).max(0.0))
            .sqrt();
            let c = (((t * s + dot(&p.x[..2], &q.x[..2]) + r) / 2.0)
                .max(0.0)
                .sqrt()
                + ((1.0 - t) * (1.0 - s)).sqrt())
            .clamp(-1.0, 1.0);
            assert!((dist_cone(2, &p, &q) - c.acos()).abs() < 1e-7);
            assert!(((1.0 - dist_cone(2, &p, &q).cos()) - (1.0 - c)).abs() < 1e-12);
        }
    }

    #[test]
    fn ball_and_sphere() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_unit(3, &mut rng);
        let v = random_unit(3, &mut rng);
        assert!((dist_sphere(&u, &v) - dot(&u, &v).acos()).abs() < 1e-12);
        let a = [0.3, -0.2];
        let b = [0.1, 0.5];
        let c = dot(&a, &b) + (1.0 - dot(&a, &a)).sqrt() * (1.0 - dot(&b, &b)).sqrt();
        assert!((dist_ball(&a, &b) - c.acos()).abs() < 1e-12);
    }
}
