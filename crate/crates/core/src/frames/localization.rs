//! Evaluation of single frame elements and their normalized localization suprema.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::NeedletFrame;
use crate::error::{Error, Result};
use crate::geometry::{dist, random_point, w_n, Point};
use crate::kernels::{point_toward, KernelConfig, KernelEvaluator, OrthoBasis};

/// Evaluates psi_{z,j}(p) = sqrt(lambda_z) F_j(p, z): by the addition formula for localizable
/// weights, by the orthonormal basis otherwise.
pub struct ElementEvaluator<'a> {
    frame: &'a NeedletFrame,
    mult: Vec<Vec<f64>>,
    kernel: Option<KernelEvaluator>,
    basis: Option<OrthoBasis>,
}

impl<'a> ElementEvaluator<'a> {
    pub fn new(frame: &'a NeedletFrame) -> Result<Self> {
        let mult: Vec<Vec<f64>> = (0..=frame.j_max).map(|j| frame.multipliers(j)).collect();
        let kmax = frame.max_degree();
        let w = frame.weight;
        let (kernel, basis) = if w.localizable() {
            (
                Some(KernelEvaluator::new(&KernelConfig::new(w), kmax)?),
                None,
            )
        } else {
            (None, Some(OrthoBasis::new(&w, kmax)?))
        };
        Ok(Self {
            frame,
            mult,
            kernel,
            basis,
        })
    }

    /// F_j(p, q).
    pub fn kernel(&self, j: usize, p: &Point, q: &Point) -> f64 {
        let h = &self.mult[j];
        if let Some(k) = &self.kernel {
            return k.series(h, p, q);
        }
        let b = self
            .basis
            .as_ref()
            .expect("basis is set when no addition formula exists");
        let (mut u, mut v) = (Vec::new(), Vec::new());
        b.eval_all(p, &mut u);
        b.eval_all(q, &mut v);
        let mut s = 0.0;
        for (k, hk) in h.iter().enumerate() {
            if *hk != 0.0 {
                s += hk * b.degree_range(k).map(|i| u[i] * v[i]).sum::<f64>();
            }
        }
        s
    }

    /// psi_{z,j}(p) for node index z of level j.
    pub fn element(&self, j: usize, z: usize, p: &Point) -> f64 {
        let l = &self.frame.levels[j];
        l.sqrt_lambda[z] * self.kernel(j, p, &l.nodes[z])
    }
}

/// Settings of the localization check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NeedletDecayOptions {
    pub kappa: f64,
    /// Element centers sampled per level (the nodes closest to the apex and to the rim come first).
    pub centers: usize,
    /// Probe points per center, at distances spread log-uniformly from 0.1 / 2^j to pi.
    pub probes: usize,
    pub seed: u64,
}

impl Default for NeedletDecayOptions {
    fn default() -> Self {
        Self {
            kappa: 6.0,
            centers: 6,
            probes: 24,
            seed: 0,
        }
    }
}

/// Per-level suprema of |psi_{z,j}(p)| sqrt(w(2^j; p)) (1 + 2^j d(p, z))^kappa / 2^{j dim / 2}.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelDecay {
    pub j: usize,
    pub sup: f64,
    /// Same quantity restricted to p = z.
    pub sup_center: f64,
    pub evaluations: usize,
}

/// Normalized localization suprema for levels 1..=J.
pub fn needlet_decay_check(
    frame: &NeedletFrame,
    opts: &NeedletDecayOptions,
) -> Result<Vec<LevelDecay>> {
    let w = frame.weight;
    if !w.localizable() {
        return Err(Error::Unsupported(format!(
            "frame elements are not localized for {w:?}"
        )));
    }
    let ev = ElementEvaluator::new(frame)?;
    let dim = w.dim() as i32;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut out = Vec::new();
    for j in 1..=frame.j_max {
        let lvl = &frame.levels[j];
        let nj = (1u64 << j) as f64;
        let by_t = |key: fn(&Point) -> f64| {
            (0..lvl.len())
                .min_by(|&a, &b| key(&lvl.nodes[a]).total_cmp(&key(&lvl.nodes[b])))
                .unwrap_or(0)
        };
        let mut centers = vec![by_t(|p| p.t), by_t(|p| -p.t)];
        while centers.len() < opts.centers.max(2).min(lvl.len()) {
            centers.push(rng.gen_range(0..lvl.len()));
        }
        let norm = |p: &Point, z: &Point, v: f64| {
            v.abs()
                * w_n(&w, p, nj).sqrt()
                * (1.0 + nj * dist(w.domain, w.d, p, z)).powf(opts.kappa)
                / nj.powi(dim).sqrt()
        };
        let (mut sup, mut sup_c, mut count) = (0.0f64, 0.0f64, 0usize);
        for &zi in &centers {
            let z = lvl.nodes[zi];
            let c = norm(&z, &z, ev.element(j, zi, &z));
            sup_c = sup_c.max(c);
            sup = sup.max(c);
            count += 1;
            for _ in 0..opts.probes {
                let r = rng
                    .gen_range((0.1f64).ln()..(nj * std::f64::consts::PI).ln())
                    .exp()
                    / nj;
                let far = random_point(w.domain, w.d, &mut rng);
                let p = point_toward(&w, &z, &far, r);
                sup = sup.max(norm(&p, &z, ev.element(j, zi, &p)));
                count += 1;
            }
        }
        out.push(LevelDecay {
            j,
            sup,
            sup_center: sup_c,
            evaluations: count,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::{build_frame, build_frame_with, FrameOptions};
    use super::*;
    use crate::geometry::WeightSpec;
    use crate::specfun::Cutoff;

    #[test]
    fn element_matches_synthesis_of_unit_coefficient() {
        for w in [
            WeightSpec::surface(2, -1.0, 0.0).unwrap(),
            WeightSpec::surface(2, -0.5, 0.0).unwrap(),
        ] {
            let f = build_frame(&w, 3, 0.5).unwrap();
            let ev = ElementEvaluator::new(&f).unwrap();
            let mut c = super::super::FrameCoefficients::zeros(&f);
            let (j, z) = (3, 5);
            c.levels[j][z] = 1.0;
            let g = f.synthesize(&c).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            for _ in 0..10 {
                let p = random_point(w.domain, w.d, &mut rng);
                let a = ev.element(j, z, &p);
                let b = g.eval(&p).unwrap();
                assert!((a - b).abs() < 1e-9 * (1.0 + b.abs()), "{w:?}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn smooth_elements_localize_better_than_sharp_bands() {
        let w = WeightSpec::surface(2, -1.0, 0.0).unwrap();
        let opts = NeedletDecayOptions {
            kappa: 6.0,
            ..Default::default()
        };
        let smooth = needlet_decay_check(&build_frame(&w, 5, 0.5).unwrap(), &opts).unwrap();
        let fo = FrameOptions {
            cutoff: Cutoff::Indicator,
            ..Default::default()
        };
        let sharp =
            needlet_decay_check(&build_frame_with(&w, 5, 0.5, &fo).unwrap(), &opts).unwrap();
        let gs = smooth[4].sup / smooth[2].sup;
        let gr = sharp[4].sup / sharp[2].sup;
        assert!(gr > 4.0 * gs, "smooth growth {gs}, sharp growth {gr}");
        for l in &smooth {
            assert!(l.sup_center > 0.0 && l.sup_center.is_finite());
        }
    }

    #[test]
    fn rejects_unlocalized_weights() {
        let w = WeightSpec::surface(2, 0.0, 0.0).unwrap();
        let f = build_frame(&w, 1, 0.5).unwrap();
        assert!(needlet_decay_check(&f, &NeedletDecayOptions::default()).is_err());
    }
}
