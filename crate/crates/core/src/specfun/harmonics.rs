use serde::{Deserialize, Serialize};

/// Kind of a circular harmonic on S^1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HarmonicKind {
    Const,
    Cos,
    Sin,
}

/// Circular harmonic orthonormal for dtheta / (2 pi).
pub fn circle_harmonic(m: usize, kind: HarmonicKind, theta: f64) -> f64 {
    let s2 = std::f64::consts::SQRT_2;
    match kind {
        HarmonicKind::Const => 1.0,
        HarmonicKind::Cos => s2 * (m as f64 * theta).cos(),
        HarmonicKind::Sin => s2 * (m as f64 * theta).sin(),
    }
}

/// Dimension of the space of spherical harmonics of degree m on S^{d-1}.
pub fn harmonic_dim(d: usize, m: usize) -> usize {
    match d {
        2 => {
            if m == 0 {
                1
            } else {
                2
            }
        }
        3 => 2 * m + 1,
        _ => panic!("harmonic_dim: unsupported d = {d}"),
    }
}

/// Number of harmonics of degree < m on S^{d-1}.
pub fn harmonic_offset(d: usize, m: usize) -> usize {
    match d {
        2 => {
            if m == 0 {
                0
            } else {
                2 * m - 1
            }
        }
        3 => m * m,
        _ => panic!("harmonic_offset: unsupported d = {d}"),
    }
}

/// Solid harmonics |x|^m Y(x/|x|) for all m <= mmax at x in R^d (d = 2, 3), orthonormal on the
/// sphere for the normalized surface measure. Layout: degree m occupies
/// `out[harmonic_offset(d, m)..harmonic_offset(d, m + 1)]`; within a degree the zonal-order term
/// comes first, then (cos, sin) pairs of increasing azimuthal order.
pub fn solid_harmonics(d: usize, mmax: usize, x: &[f64], out: &mut Vec<f64>) {
    out.clear();
    out.resize(harmonic_offset(d, mmax + 1), 0.0);
    let s2 = std::f64::consts::SQRT_2;
    // (re, im) of (x1 + i x2)^k
    let mut pw = Vec::with_capacity(mmax + 1);
    let (mut re, mut im) = (1.0, 0.0);
    pw.push((re, im));
    for _ in 0..mmax {
        let nr = re * x[0] - im * x[1];
        let ni = re * x[1] + im * x[0];
        re = nr;
        im = ni;
        pw.push((re, im));
    }
    match d {
        2 => {
            out[0] = 1.0;
            for m in 1..=mmax {
                let o = harmonic_offset(2, m);
                out[o] = s2 * pw[m].0;
                out[o + 1] = s2 * pw[m].1;
            }
        }
        3 => {
            let z = x[2];
            let r2 = x[0] * x[0] + x[1] * x[1] + z * z;
            let mut ckk = 1.0;
            for k in 0..=mmax {
                if k > 0 {
                    let kf = k as f64;
                    ckk *= ((2.0 * kf + 1.0) / (2.0 * kf)).sqrt();
                }
                let fac = if k == 0 { 1.0 } else { s2 };
                let mut q2 = 0.0;
                let mut q1 = ckk;
                for l in k..=mmax {
                    let q = if l == k {
                        ckk
                    } else if l == k + 1 {
                        (2.0 * k as f64 + 3.0).sqrt() * z * ckk
                    } else {
                        let (lf, kf) = (l as f64, k as f64);
                        let a = ((4.0 * lf * lf - 1.0) / (lf * lf - kf * kf)).sqrt();
                        let b = (((lf - 1.0).powi(2) - kf * kf) / (4.0 * (lf - 1.0).powi(2) - 1.0))
                            .sqrt();
                        a * (z * q1 - b * r2 * q2)
                    };
                    if l > k {
                        q2 = q1;
                        q1 = q;
                    }
                    let o = harmonic_offset(3, l);
                    if k == 0 {
                        out[o] = q;
                    } else {
                        out[o + 2 * k - 1] = fac * q * pw[k].0;
                        out[o + 2 * k] = fac * q * pw[k].1;
                    }
                }
            }
        }
        _ => panic!("solid_harmonics: unsupported d = {d}"),
    }
}

/// Eigenvalue of the Laplace-Beltrami operator on S^{d-1} for degree m.
pub fn laplace_beltrami_eigen(d: usize, m: usize) -> f64 {
    -(m as f64) * (m as f64 + d as f64 - 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gegenbauer::zonal_eval;
    use crate::specfun::gegenbauer::zonal_limit0;
    use crate::specfun::quadrature::gauss_legendre;

    #[test]
    fn const_harmonic() {
        assert_eq!(circle_harmonic(0, HarmonicKind::Const, 1.0), 1.0);
    }

    #[test]
    fn circle_addition_identity() {
        let (a, b) = (0.4f64, 2.1f64);
        for mmax in 0..12 {
            let mut s = 1.0;
            for m in 1..=mmax {
                s += circle_harmonic(m, HarmonicKind::Cos, a)
                    * circle_harmonic(m, HarmonicKind::Cos, b)
                    + circle_harmonic(m, HarmonicKind::Sin, a)
                        * circle_harmonic(m, HarmonicKind::Sin, b);
            }
            let direct = 1.0
                + (1..=mmax)
                    .map(|k| 2.0 * (k as f64 * (a - b)).cos())
                    .sum::<f64>();
            assert!((s - direct).abs() < 1e-12);
            let zs: f64 = (0..=mmax).map(|k| zonal_limit0(k, (a - b).cos())).sum();
            assert!((s - zs).abs() < 1e-11);
        }
    }

    #[test]
    fn circle_discrete_orthonormality() {
        let n = 64;
        let mut funcs: Vec<(usize, HarmonicKind)> = vec![(0, HarmonicKind::Const)];
        for m in 1..=20 {
            funcs.push((m, HarmonicKind::Cos));
            funcs.push((m, HarmonicKind::Sin));
        }
        for (i, &(m1, k1)) in funcs.iter().enumerate() {
            for (j, &(m2, k2)) in funcs.iter().enumerate() {
                let g: f64 = (0..n)
                    .map(|q| {
                        let th = 2.0 * std::f64::consts::PI * q as f64 / n as f64;
                        circle_harmonic(m1, k1, th) * circle_harmonic(m2, k2, th)
                    })
                    .sum::<f64>()
                    / n as f64;
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g - want).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn solid_d2_matches_circle() {
        let th = 0.77f64;
        let r = 0.6;
        let mut out = Vec::new();
        solid_harmonics(2, 6, &[r * th.cos(), r * th.sin()], &mut out);
        for m in 1..=6 {
            let o = harmonic_offset(2, m);
            assert!(
                (out[o] - r.powi(m as i32) * circle_harmonic(m, HarmonicKind::Cos, th)).abs()
                    < 1e-14
            );
            assert!(
                (out[o + 1] - r.powi(m as i32) * circle_harmonic(m, HarmonicKind::Sin, th)).abs()
                    < 1e-14
            );
        }
    }

    fn sphere_point(th: f64, ph: f64) -> [f64; 3] {
        [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()]
    }

    #[test]
    fn sphere_orthonormal_and_addition() {
        let lmax = 10;
        let gl = gauss_legendre(lmax + 2, [-1.0, 1.0]).unwrap();
        let nphi = 2 * lmax + 3;
        let dim = harmonic_offset(3, lmax + 1);
        let mut gram = vec![0.0; dim * dim];
        let mut out = Vec::new();
        for (z, w) in gl.nodes.iter().zip(&gl.weights) {
            for q in 0..nphi {
                let ph = 2.0 * std::f64::consts::PI * q as f64 / nphi as f64;
                let p = sphere_point(z.acos(), ph);
                solid_harmonics(3, lmax, &p, &mut out);
                for i in 0..dim {
                    for j in 0..dim {
                        gram[i * dim + j] += w / nphi as f64 * out[i] * out[j];
                    }
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (gram[i * dim + j] - want).abs() < 1e-12,
                    "{i} {j} {}",
                    gram[i * dim + j]
                );
            }
        }
        let a = sphere_point(0.3, 1.2);
        let b = sphere_point(2.0, -0.4);
        let c: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
        let mut ya = Vec::new();
        let mut yb = Vec::new();
        solid_harmonics(3, lmax, &a, &mut ya);
        solid_harmonics(3, lmax, &b, &mut yb);
        for m in 0..=lmax {
            let (o0, o1) = (harmonic_offset(3, m), harmonic_offset(3, m + 1));
            let s: f64 = (o0..o1).map(|i| ya[i] * yb[i]).sum();
            let z = zonal_eval(m, 0.5, c).unwrap();
            assert!((s - z).abs() < 1e-12 * (1.0 + z.abs()), "{m}: {s} {z}");
        }
    }

    #[test]
    fn solid_homogeneity() {
        let p = sphere_point(1.1, 0.5);
        let r = 0.37;
        let mut u = Vec::new();
        let mut v = Vec::new();
        solid_harmonics(3, 7, &p, &mut u);
        solid_harmonics(3, 7, &[r * p[0], r * p[1], r * p[2]], &mut v);
        for m in 0..=7 {
            for i in harmonic_offset(3, m)..harmonic_offset(3, m + 1) {
                assert!((v[i] - r.powi(m as i32) * u[i]).abs() < 1e-13);
            }
        }
    }
}
