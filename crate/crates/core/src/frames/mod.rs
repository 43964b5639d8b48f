//! Needlet tight frames: per-level positive cubature on separated sets, frame elements
//! psi_{z,j} = sqrt(lambda_z) F_j(., z) with F_0 = 1 and F_j = L_{2^{j-1}} for the dyadic cut-off.

pub mod io;
pub mod localization;
pub mod ops;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cubature::{calibrate_delta, solve_positive_cubature};
use crate::error::{Error, Result};
use crate::geometry::{build_separated_set, CubatureRule, Point, SeparatedSet, WeightSpec};
use crate::specfun::{cutoff_eval, Cutoff};

pub use io::{
    read_coeffs_csv, read_frame, write_coeffs_csv, write_frame, FrameManifest, LevelManifest,
};
pub use localization::{needlet_decay_check, ElementEvaluator, LevelDecay, NeedletDecayOptions};
pub use ops::{FrameCoefficients, ParsevalReport};

/// Construction settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameOptions {
    /// Upper bound on the per-level rule degree. Tightness on polynomials of degree N only needs
    /// rules exact to degree 2N, so a cap of 2^J keeps Parseval exact for degree <= 2^{J-1}.
    pub degree_cap: Option<usize>,
    /// Halve the level spacing (down to 1/8 of the nominal value) when a level is infeasible.
    pub calibrate: bool,
    pub seed: u64,
    /// Dyadic cut-off; `Indicator` gives sharp bands and serves as a non-localized control.
    pub cutoff: Cutoff,
}

impl Default for FrameOptions {
    fn default() -> Self {
        Self {
            degree_cap: None,
            calibrate: true,
            seed: 0,
            cutoff: Cutoff::TypeBFrame,
        }
    }
}

/// One level of the frame.
#[derive(Clone, Debug)]
pub struct FrameLevel {
    pub j: usize,
    /// Separation of the level's node set.
    pub eps: f64,
    pub rule_degree: usize,
    pub residual: f64,
    pub nodes: Vec<Point>,
    pub sqrt_lambda: Vec<f64>,
    /// Ring index of each node in the separated set it came from.
    pub ring: Vec<usize>,
}

impl FrameLevel {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn rule(&self) -> CubatureRule {
        CubatureRule {
            nodes: self.nodes.clone(),
            weights: self.sqrt_lambda.iter().map(|s| s * s).collect(),
            degree: self.rule_degree,
            residual: self.residual,
        }
    }
}

/// Needlet frame with levels 0..=j_max.
#[derive(Clone, Debug)]
pub struct NeedletFrame {
    pub weight: WeightSpec,
    pub j_max: usize,
    pub delta: f64,
    pub cutoff: Cutoff,
    pub seed: u64,
    pub levels: Vec<FrameLevel>,
}

/// Degree multipliers of F_j: index k holds the coefficient of P_k, trailing zeros removed. The
/// indicator variant keeps the sharp band 2^{j-2} < k <= 2^{j-1}.
pub fn level_multipliers(j: usize, cutoff: Cutoff) -> Vec<f64> {
    if j == 0 {
        return vec![1.0];
    }
    let n = 1usize << (j - 1);
    let h = |x: f64| match cutoff {
        Cutoff::Indicator => f64::from(u8::from(x > 0.5 && x <= 1.0)),
        c => cutoff_eval(c, x),
    };
    let mut c: Vec<f64> = (0..=2 * n).map(|k| h(k as f64 / n as f64)).collect();
    while c.len() > 1 && *c.last().unwrap() == 0.0 {
        c.pop();
    }
    c
}

/// Rule degree of level j: 2^{j+1}, optionally capped.
pub fn level_rule_degree(j: usize, cap: Option<usize>) -> usize {
    let d = 1usize << (j + 1);
    cap.map_or(d, |c| d.min(c.max(1)))
}

fn ring_labels(set: &SeparatedSet, nodes: &[Point]) -> Vec<usize> {
    let key = |p: &Point| (p.t.to_bits(), p.x.map(f64::to_bits));
    let map: HashMap<_, usize> = set
        .nodes
        .iter()
        .zip(&set.ring_index)
        .map(|(p, &r)| (key(p), r))
        .collect();
    nodes
        .iter()
        .map(|p| map.get(&key(p)).copied().unwrap_or(0))
        .collect()
}

/// Frame with levels 0..=j_max; level j uses a separated set with eps_j = delta / 2^j and a positive
/// cubature rule of degree 2^{j+1}. With the default options an infeasible level retries with
/// halved spacing, and the spacing actually used is recorded per level.
pub fn build_frame(w: &WeightSpec, j_max: usize, delta: f64) -> Result<NeedletFrame> {
    build_frame_with(w, j_max, delta, &FrameOptions::default())
}

/// As [`build_frame`]. A capped level keeps the spacing eps_j = 2 delta / degree_j of its rule degree.
pub fn build_frame_with(
    w: &WeightSpec,
    j_max: usize,
    delta: f64,
    opts: &FrameOptions,
) -> Result<NeedletFrame> {
    w.validate()?;
    if opts.cutoff == Cutoff::TypeA {
        return Err(Error::InvalidParameter(
            "frames need a dyadic cut-off (TypeBFrame or Indicator)".into(),
        ));
    }
    if !(delta > 0.0) || j_max > 12 {
        return Err(Error::InvalidParameter(format!(
            "frame needs delta > 0 and J <= 12 (got {delta}, {j_max})"
        )));
    }
    let mut levels = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max {
        let deg = level_rule_degree(j, opts.degree_cap);
        let wrap = |e: Error| Error::FrameLevel {
            level: j,
            source: Box::new(e),
        };
        let (set, rule) = if opts.calibrate {
            let c = calibrate_delta(w, deg, opts.seed, 2.0 * delta, 2.0 * delta / 8.0, 1e-8)
                .map_err(wrap)?;
            (c.set, c.rule)
        } else {
            let set = build_separated_set(w.domain, w.d, 2.0 * delta / deg as f64, opts.seed)
                .map_err(wrap)?;
            let rule = solve_positive_cubature(&set, deg, w).map_err(wrap)?;
            (set, rule)
        };
        levels.push(FrameLevel {
            j,
            eps: set.eps,
            rule_degree: deg,
            residual: rule.residual,
            ring: ring_labels(&set, &rule.nodes),
            sqrt_lambda: rule.weights.iter().map(|l| l.sqrt()).collect(),
            nodes: rule.nodes,
        });
    }
    Ok(NeedletFrame {
        weight: *w,
        j_max,
        delta,
        cutoff: opts.cutoff,
        seed: opts.seed,
        levels,
    })
}

impl NeedletFrame {
    /// Total number of frame elements.
    pub fn len(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Largest polynomial degree of any element.
    pub fn max_degree(&self) -> usize {
        self.multipliers(self.j_max).len() - 1
    }

    /// Degree multipliers of level j.
    pub fn multipliers(&self, j: usize) -> Vec<f64> {
        level_multipliers(j, self.cutoff)
    }

    /// Largest degree N for which the frame is tight on polynomials of degree <= N.
    pub fn exact_degree(&self) -> usize {
        let mut n = if self.j_max == 0 {
            0
        } else {
            1usize << (self.j_max - 1)
        };
        for l in &self.levels {
            if self.multipliers(l.j).len() - 1 > l.rule_degree / 2 {
                n = n.min(l.rule_degree / 2);
            }
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Domain;

    #[test]
    fn multipliers_partition_unity() {
        for cutoff in [Cutoff::TypeBFrame, Cutoff::Indicator] {
            for k in 0..=64usize {
                let s: f64 = (0..=8)
                    .map(|j| {
                        let m = level_multipliers(j, cutoff);
                        m.get(k).map_or(0.0, |v| v * v)
                    })
                    .sum();
                assert!((s - 1.0).abs() < 1e-12, "{cutoff:?} k = {k}: {s}");
            }
        }
        let b = Cutoff::TypeBFrame;
        assert_eq!(level_multipliers(0, b), vec![1.0]);
        assert_eq!(level_multipliers(1, b), vec![0.0, 1.0]);
        assert_eq!(level_multipliers(3, b).len(), 8);
        assert_eq!(level_multipliers(3, b)[..2], [0.0, 0.0]);
        assert_eq!(
            level_multipliers(3, Cutoff::Indicator),
            vec![0.0, 0.0, 0.0, 1.0, 1.0]
        );
    }

    #[test]
    fn level_sizes_grow() {
        let w = WeightSpec::surface(2, -1.0, 0.0).unwrap();
        let f = build_frame(&w, 4, 0.5).unwrap();
        assert_eq!(f.levels.len(), 5);
        for (j, l) in f.levels.iter().enumerate() {
            assert_eq!(l.rule_degree, 1 << (j + 1));
            assert!(l.sqrt_lambda.iter().all(|s| *s > 0.0));
            assert!(l.residual <= 1e-8);
        }
        let r = f.levels[4].len() as f64 / f.levels[3].len() as f64;
        assert!((2.5..6.0).contains(&r), "ratio {r}");
        assert_eq!(f.exact_degree(), 8);
    }

    #[test]
    fn single_level_is_constant() {
        let w = WeightSpec::cone(2, 0.0, 0.0).unwrap();
        let f = build_frame(&w, 0, 0.5).unwrap();
        assert_eq!(f.levels.len(), 1);
        assert_eq!(f.levels[0].rule_degree, 2);
        assert_eq!(f.weight.domain, Domain::Cone);
        let s: f64 = f.levels[0].sqrt_lambda.iter().map(|v| v * v).sum();
        assert!((s - 1.0).abs() < 1e-10);
    }

    #[test]
    fn infeasible_level_reports_index() {
        let w = WeightSpec::surface(2, -1.0, 0.0).unwrap();
        let e = build_frame(&w, 3, 4.0).unwrap_err();
        match e {
            Error::FrameLevel { level, .. } => assert!(level <= 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            e.root(),
            Error::Infeasible { .. } | Error::NoRings { .. }
        ));
    }
}
