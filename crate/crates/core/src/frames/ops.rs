//! Analysis and synthesis in coefficient space, Parseval defects and the frame operator.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::NeedletFrame;
use crate::approx::spectral::{project_fn, SpectralCoeffs};
use crate::cubature::MomentOperator;
use crate::error::{Error, Result};
use crate::geometry::{reference_quadrature, Point};
use crate::kernels::OrthoBasis;

/// Frame coefficients <f, psi_{z,j}>, one vector per level in node order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameCoefficients {
    pub levels: Vec<Vec<f64>>,
}

impl FrameCoefficients {
    pub fn zeros(frame: &NeedletFrame) -> Self {
        Self {
            levels: frame.levels.iter().map(|l| vec![0.0; l.len()]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sum of squares at level j.
    pub fn energy(&self, j: usize) -> f64 {
        self.levels
            .get(j)
            .map_or(0.0, |v| v.iter().map(|c| c * c).sum())
    }

    pub fn total_energy(&self) -> f64 {
        (0..self.levels.len()).map(|j| self.energy(j)).sum()
    }

    /// a * self + b * other.
    pub fn axpby(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        if self.levels.len() != other.levels.len()
            || self
                .levels
                .iter()
                .zip(&other.levels)
                .any(|(x, y)| x.len() != y.len())
        {
            return Err(Error::Shape("frame coefficient layouts differ".into()));
        }
        let levels = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(x, y)| x.iter().zip(y).map(|(u, v)| a * u + b * v).collect())
            .collect();
        Ok(Self { levels })
    }
}

/// Parseval comparison for one function.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParsevalReport {
    pub frame_energy: f64,
    pub norm_sq: f64,
    pub defect: f64,
    /// True when the function's degree lies in the range where the frame is exactly tight.
    pub band_limited: bool,
}

impl NeedletFrame {
    /// Moment operator of level j restricted to degree <= n.
    fn level_operator(&self, j: usize, n: usize) -> Result<MomentOperator> {
        MomentOperator::new(&self.weight, n, &self.levels[j].nodes)
    }

    /// Frame coefficients of several expansions: c_{z,j} = sqrt(lambda_z) sum_i h_j(n_i) f_i phi_i(z).
    pub fn analyze_spectral_many(&self, fs: &[SpectralCoeffs]) -> Result<Vec<FrameCoefficients>> {
        if fs.iter().any(|f| f.weight != self.weight) {
            return Err(Error::Shape("coefficients belong to another weight".into()));
        }
        let nf = fs.iter().map(|f| f.degree).max().unwrap_or(0);
        let mut out: Vec<FrameCoefficients> =
            fs.iter().map(|_| FrameCoefficients::zeros(self)).collect();
        for (j, lvl) in self.levels.iter().enumerate() {
            let h = self.multipliers(j);
            let kd = (h.len() - 1).min(nf);
            if h[..=kd].iter().all(|v| *v == 0.0) {
                continue;
            }
            let op = self.level_operator(j, kd)?;
            let degs = SpectralCoeffs::zeros(&self.weight, kd).degrees();
            for (f, o) in fs.iter().zip(out.iter_mut()) {
                let y: Vec<f64> = degs
                    .iter()
                    .enumerate()
                    .map(|(i, &k)| f.coeffs.get(i).map_or(0.0, |c| c * h[k]))
                    .collect();
                let v = op.apply_t(&y);
                o.levels[j] = v.iter().zip(&lvl.sqrt_lambda).map(|(a, s)| a * s).collect();
            }
        }
        Ok(out)
    }

    pub fn analyze_spectral(&self, f: &SpectralCoeffs) -> Result<FrameCoefficients> {
        Ok(self
            .analyze_spectral_many(std::slice::from_ref(f))?
            .remove(0))
    }

    /// Frame coefficients of an evaluable function, projected first onto the polynomials of degree
    /// max_degree() with the reference rule of degree `quad_degree` (default 2^{J+1}); exact for
    /// f of degree <= 2^J.
    pub fn analyze(
        &self,
        f: impl Fn(&Point) -> f64 + Sync,
        quad_degree: Option<usize>,
    ) -> Result<FrameCoefficients> {
        let n = self.max_degree();
        let q = quad_degree.unwrap_or(2usize << self.j_max);
        let fh = project_fn(&self.weight, n, f, q)?;
        self.analyze_spectral(&fh)
    }

    /// Coefficients of sum_{j,z} c_{z,j} psi_{z,j} in the orthonormal basis of degree max_degree().
    pub fn synthesize(&self, c: &FrameCoefficients) -> Result<SpectralCoeffs> {
        if c.levels.len() != self.levels.len()
            || c.levels
                .iter()
                .zip(&self.levels)
                .any(|(a, l)| a.len() != l.len())
        {
            return Err(Error::Shape(
                "coefficients do not match the frame layout".into(),
            ));
        }
        let mut g = SpectralCoeffs::zeros(&self.weight, self.max_degree());
        for (j, lvl) in self.levels.iter().enumerate() {
            if c.levels[j].iter().all(|v| *v == 0.0) {
                continue;
            }
            let h = self.multipliers(j);
            let kd = h.len() - 1;
            let op = self.level_operator(j, kd)?;
            let x: Vec<f64> = c.levels[j]
                .iter()
                .zip(&lvl.sqrt_lambda)
                .map(|(a, s)| a * s)
                .collect();
            let v = op.apply(&x);
            let degs = SpectralCoeffs::zeros(&self.weight, kd).degrees();
            for (i, (&k, vi)) in degs.iter().zip(&v).enumerate() {
                g.coeffs[i] += h[k] * vi;
            }
        }
        Ok(g)
    }

    /// Pointwise values of the synthesized function.
    pub fn synthesize_at(&self, c: &FrameCoefficients, pts: &[Point]) -> Result<Vec<f64>> {
        self.synthesize(c)?.eval_many(pts)
    }

    /// Relative Parseval defects |sum |<f, psi>|^2 - ||f||^2| / ||f||^2, with ||f||^2 computed by the
    /// reference rule from point values of f.
    pub fn parseval_many(&self, fs: &[SpectralCoeffs]) -> Result<Vec<ParsevalReport>> {
        let coeffs = self.analyze_spectral_many(fs)?;
        let nf = fs.iter().map(|f| f.degree).max().unwrap_or(0);
        let q = reference_quadrature(&self.weight, 2 * nf)?;
        let series: Vec<Vec<f64>> = fs.iter().map(|f| f.resized(nf).coeffs).collect();
        let vals = OrthoBasis::new(&self.weight, nf)?.eval_series_batch(&series, &q.rule.nodes);
        let exact = self.exact_degree();
        Ok(fs
            .iter()
            .enumerate()
            .zip(&coeffs)
            .map(|((k, f), c)| {
                let norm_sq: f64 = vals
                    .iter()
                    .zip(&q.rule.weights)
                    .map(|(v, w)| w * v[k] * v[k])
                    .sum();
                let e = c.total_energy();
                ParsevalReport {
                    frame_energy: e,
                    norm_sq,
                    defect: (e - norm_sq).abs() / norm_sq,
                    band_limited: f.degree <= exact,
                }
            })
            .collect())
    }

    pub fn parseval_check(&self, f: &SpectralCoeffs) -> Result<ParsevalReport> {
        Ok(self.parseval_many(std::slice::from_ref(f))?.remove(0))
    }

    /// Matrix of the frame operator f -> sum <f, psi> psi on the polynomials of degree <= n, in the
    /// orthonormal basis.
    pub fn frame_operator(&self, n: usize) -> Result<DMatrix<f64>> {
        let dim = self.weight.dim_pi(n);
        let mut s = DMatrix::zeros(dim, dim);
        for (j, lvl) in self.levels.iter().enumerate() {
            let h = self.multipliers(j);
            let kd = (h.len() - 1).min(n);
            if h[..=kd].iter().all(|v| *v == 0.0) {
                continue;
            }
            let op = self.level_operator(j, kd)?;
            let degs = SpectralCoeffs::zeros(&self.weight, kd).degrees();
            let m = op.rows();
            let mut b = DMatrix::zeros(m, lvl.len());
            for z in 0..lvl.len() {
                let col = op.column(z);
                for i in 0..m {
                    b[(i, z)] = h[degs[i]] * col[i] * lvl.sqrt_lambda[z];
                }
            }
            let bbt = &b * b.transpose();
            let mut view = s.view_mut((0, 0), (m, m));
            view += bbt;
        }
        Ok(s)
    }
}

/// Spectral-norm distance of a symmetric matrix from the identity.
pub fn identity_defect(s: &DMatrix<f64>) -> f64 {
    let n = s.nrows();
    let e = (s - DMatrix::<f64>::identity(n, n)).symmetric_eigen();
    e.eigenvalues.iter().fold(0.0, |a, v| a.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::super::build_frame;
    use super::*;
    use crate::geometry::{random_point, WeightSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_coeffs(w: &WeightSpec, n: usize, rng: &mut ChaCha8Rng) -> SpectralCoeffs {
        SpectralCoeffs::from_vec(
            w,
            n,
            (0..w.dim_pi(n)).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn parseval_and_round_trip_surface() {
        let w = WeightSpec::surface(2, -1.0, 0.0).unwrap();
        let f = build_frame(&w, 4, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let fs: Vec<SpectralCoeffs> = (0..5).map(|_| random_coeffs(&w, 8, &mut rng)).collect();
        for r in f.parseval_many(&fs).unwrap() {
            assert!(r.band_limited);
            assert!(r.defect < 1e-8, "{r:?}");
        }
        let c = f.analyze_spectral(&fs[0]).unwrap();
        let g = f.synthesize(&c).unwrap();
        let pts: Vec<Point> = (0..100)
            .map(|_| random_point(w.domain, w.d, &mut rng))
            .collect();
        let a = fs[0].eval_many(&pts).unwrap();
        let b = g.eval_many(&pts).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-7, "{x} vs {y}");
        }
    }

    #[test]
    fn constant_lives_on_level_zero() {
        let w = WeightSpec::cone(2, 0.0, 0.0).unwrap();
        let f = build_frame(&w, 3, 0.5).unwrap();
        let c = f.analyze(|_| 1.0, None).unwrap();
        let l0: f64 = f.levels[0]
            .sqrt_lambda
            .iter()
            .zip(&c.levels[0])
            .map(|(s, v)| (v - s).abs())
            .fold(0.0, f64::max);
        assert!(l0 < 1e-12);
        for j in 1..=3 {
            assert!(c.energy(j) < 1e-24, "level {j}: {}", c.energy(j));
        }
        let r = f
            .parseval_check(&SpectralCoeffs::from_vec(&w, 0, vec![1.0]).unwrap())
            .unwrap();
        assert!(r.defect <= 1e-10);
    }

    #[test]
    fn band_limited_coefficients_vanish() {
        let w = WeightSpec::surface(2, -1.0, 0.0).unwrap();
        let f = build_frame(&w, 5, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        // degree 3 only: levels with 2^{j-2} > 3 carry nothing, nor does level 0 or 1
        let g = random_coeffs(&w, 3, &mut rng).proj(3);
        let c = f.analyze_spectral(&g).unwrap();
        for j in [0usize, 1, 5] {
            assert!(c.energy(j) < 1e-24, "level {j}");
        }
        // degree 4 polynomial: level energy vanishes once 2^{j-2} > 4
        let g4 = random_coeffs(&w, 4, &mut rng);
        let c4 = f.analyze_spectral(&g4).unwrap();
        assert!(c4.energy(5) <= 1e-10);
    }

    #[test]
    fn synthesis_is_linear_and_elementwise() {
        let w = WeightSpec::surface(2, -1.0, 0.5).unwrap();
        let f = build_frame(&w, 3, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut rc = || FrameCoefficients {
            levels: f
                .levels
                .iter()
                .map(|l| (0..l.len()).map(|_| rng.gen_range(-1.0..1.0)).collect())
                .collect(),
        };
        let (a, b) = (rc(), rc());
        let pts: Vec<Point> = (0..20)
            .map(|i| random_point(w.domain, w.d, &mut ChaCha8Rng::seed_from_u64(i)))
            .collect();
        let lhs = f
            .synthesize_at(&a.axpby(2.0, &b, -0.5).unwrap(), &pts)
            .unwrap();
        let ra = f.synthesize_at(&a, &pts).unwrap();
        let rb = f.synthesize_at(&b, &pts).unwrap();
        for i in 0..pts.len() {
            assert!((lhs[i] - (2.0 * ra[i] - 0.5 * rb[i])).abs() < 1e-12 * (1.0 + lhs[i].abs()));
        }
        let zero = f
            .synthesize_at(&FrameCoefficients::zeros(&f), &pts)
            .unwrap();
        assert!(zero.iter().all(|v| *v == 0.0));
        let bad = FrameCoefficients {
            levels: vec![vec![1.0]],
        };
        assert!(f.synthesize(&bad).is_err());
    }

    #[test]
    fn frame_operator_is_identity() {
        let w = WeightSpec::cone(2, 0.0, 0.0).unwrap();
        let f = build_frame(&w, 3, 0.5).unwrap();
        let s = f.frame_operator(4).unwrap();
        assert!(identity_defect(&s) < 1e-6, "{}", identity_defect(&s));
        // beyond the exact band the operator is a contraction, not the identity
        let s8 = f.frame_operator(8).unwrap();
        assert!(identity_defect(&s8) > 1e-3);
    }
}
