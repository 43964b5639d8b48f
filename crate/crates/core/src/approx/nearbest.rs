//! Discrete near-best operator L_n * f = sum_z lambda_z f(z) L_n(., z) on a positive cubature rule.

use crate::cubature::{calibrate_delta, MomentOperator};
use crate::error::{Error, Result};
use crate::geometry::{CubatureRule, Point, WeightSpec};
use crate::kernels::{KernelConfig, KernelEvaluator};
use crate::specfun::{cutoff_eval, Cutoff};

use super::spectral::SpectralCoeffs;

/// Near-best operator of order n. The kernel has degree 2n - 1, so a rule exact to degree 3n
/// makes the operator reproduce every polynomial of degree <= n when the cut-off is of type a.
pub struct NearBest {
    pub weight: WeightSpec,
    pub n: usize,
    pub cutoff: Cutoff,
    pub rule: CubatureRule,
    op: MomentOperator,
}

impl NearBest {
    pub fn new(w: &WeightSpec, n: usize, cutoff: Cutoff, rule: CubatureRule) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "near-best order must be positive".into(),
            ));
        }
        if rule.degree < 3 * n {
            return Err(Error::InvalidParameter(format!(
                "rule of degree {} is below 3n = {}",
                rule.degree,
                3 * n
            )));
        }
        if cutoff == Cutoff::TypeBFrame {
            return Err(Error::InvalidParameter(
                "near-best operator needs a cut-off equal to 1 near 0".into(),
            ));
        }
        let op = MomentOperator::new(w, 2 * n, &rule.nodes)?;
        Ok(Self {
            weight: *w,
            n,
            cutoff,
            rule,
            op,
        })
    }

    /// Builds the rule by halving the spacing from delta = 1 until a positive rule of degree 3n exists.
    pub fn build(w: &WeightSpec, n: usize, cutoff: Cutoff, seed: u64) -> Result<Self> {
        let c = calibrate_delta(w, 3 * n, seed, 1.0, 1.0 / 32.0, 1e-8)?;
        Self::new(w, n, cutoff, c.rule)
    }

    /// Coefficients of L_n * f (degree 2n) from the samples f(z) at the rule nodes.
    pub fn apply_values(&self, fz: &[f64]) -> Result<SpectralCoeffs> {
        if fz.len() != self.rule.len() {
            return Err(Error::Shape(format!(
                "{} samples for {} nodes",
                fz.len(),
                self.rule.len()
            )));
        }
        let lf: Vec<f64> = fz
            .iter()
            .zip(&self.rule.weights)
            .map(|(f, l)| f * l)
            .collect();
        let c = SpectralCoeffs::from_vec(&self.weight, 2 * self.n, self.op.apply(&lf))?;
        let n = self.n as f64;
        Ok(c.multiply(|k| cutoff_eval(self.cutoff, k as f64 / n)))
    }

    pub fn apply(&self, f: impl Fn(&Point) -> f64) -> Result<SpectralCoeffs> {
        let fz: Vec<f64> = self.rule.nodes.iter().map(f).collect();
        self.apply_values(&fz)
    }

    /// Direct kernel sum sum_z lambda_z f(z) L_n(p, z) by the addition formula.
    pub fn apply_direct(&self, fz: &[f64], p: &Point) -> Result<f64> {
        let ev = KernelEvaluator::new(&KernelConfig::new(self.weight), 2 * self.n)?;
        Ok(self
            .rule
            .nodes
            .iter()
            .zip(&self.rule.weights)
            .zip(fz)
            .map(|((z, l), f)| l * f * ev.localized(self.n, self.cutoff, p, z))
            .sum())
    }
}
