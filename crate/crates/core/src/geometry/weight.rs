use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which conic domain a weight lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    /// Conic surface {(x, t) : |x| = t, 0 <= t <= 1}.
    Surface,
    /// Solid cone {(x, t) : |x| <= t, 0 <= t <= 1}.
    Cone,
}

impl std::str::FromStr for Domain {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "surface" => Ok(Domain::Surface),
            "cone" => Ok(Domain::Cone),
            _ => Err(Error::InvalidParameter(format!("unknown domain {s:?}"))),
        }
    }
}

/// Jacobi-type weight: t^beta (1 - t)^gamma on the surface, t^beta (1 - t)^gamma (t^2 - |x|^2)^(mu - 1/2)
/// on the cone. Always normalized to unit mass.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub domain: Domain,
    pub d: usize,
    pub beta: f64,
    pub gamma: f64,
    pub mu: f64,
}

impl WeightSpec {
    pub fn surface(d: usize, beta: f64, gamma: f64) -> Result<Self> {
        let w = Self {
            domain: Domain::Surface,
            d,
            beta,
            gamma,
            mu: 0.0,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn cone(d: usize, gamma: f64, mu: f64) -> Result<Self> {
        let w = Self {
            domain: Domain::Cone,
            d,
            beta: 0.0,
            gamma,
            mu,
        };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d != 2 && self.d != 3 {
            return Err(Error::Unsupported(format!(
                "dimension d = {} (only 2 and 3)",
                self.d
            )));
        }
        let finite = self.beta.is_finite() && self.gamma.is_finite() && self.mu.is_finite();
        let ok = finite
            && match self.domain {
                Domain::Surface => self.beta > -(self.d as f64) && self.gamma > -1.0,
                Domain::Cone => self.gamma > -1.0 && self.mu >= 0.0 && self.t_exponent() > -1.0,
            };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "weight parameters out of range: {self:?}"
            )))
        }
    }

    /// Dimension of the domain as a manifold: d for the surface, d + 1 for the cone.
    pub fn dim(&self) -> usize {
        match self.domain {
            Domain::Surface => self.d,
            Domain::Cone => self.d + 1,
        }
    }

    /// True when an addition formula and localized kernels are available.
    pub fn localizable(&self) -> bool {
        match self.domain {
            Domain::Surface => self.beta == -1.0 && self.gamma >= -0.5,
            Domain::Cone => self.beta == 0.0 && self.mu >= 0.0 && self.gamma >= -0.5,
        }
    }

    /// True when the Lipschitz-type kernel bound is established (cone only at mu = 0).
    pub fn lipschitz_flag(&self) -> bool {
        self.localizable() && (self.domain == Domain::Surface || self.mu == 0.0)
    }

    /// Exponent of t in the radial density after integrating out the angular part.
    pub fn t_exponent(&self) -> f64 {
        match self.domain {
            Domain::Surface => self.beta + self.d as f64 - 1.0,
            Domain::Cone => self.beta + 2.0 * self.mu + self.d as f64 - 1.0,
        }
    }

    /// Doubling index alpha(w).
    pub fn doubling_index(&self) -> f64 {
        let d = self.d as f64;
        match self.domain {
            Domain::Surface => {
                d + 2.0 * (self.beta + d / 2.0).max(0.0) + 2.0 * (self.gamma + 0.5).max(0.0)
            }
            Domain::Cone => {
                2.0 * self.mu
                    + d
                    + 1.0
                    + 2.0 * (self.beta + (d - 1.0) / 2.0).max(0.0)
                    + 2.0 * (self.gamma + 0.5).max(0.0)
            }
        }
    }

    /// Eigenvalue magnitude mu(k) of the second-order operator on degree-k polynomials.
    pub fn eigen_mu(&self, k: usize) -> Result<f64> {
        let k = k as f64;
        let d = self.d as f64;
        match self.domain {
            Domain::Surface if self.beta == -1.0 => Ok(k * (k + self.gamma + d - 1.0)),
            Domain::Cone if self.beta == 0.0 => Ok(k * (k + 2.0 * self.mu + self.gamma + d)),
            _ => Err(Error::Unsupported(format!(
                "no eigen-operator for {self:?}"
            ))),
        }
    }

    /// Index lambda of the zonal polynomials in the addition formula.
    pub fn zonal_lambda(&self) -> f64 {
        match self.domain {
            Domain::Surface => self.gamma + self.d as f64 - 1.0,
            Domain::Cone => 2.0 * self.mu + self.gamma + self.d as f64,
        }
    }

    /// Dimension of the space of orthogonal polynomials of exact degree n.
    pub fn dim_vn(&self, n: usize) -> usize {
        match (self.domain, self.d) {
            (Domain::Surface, 2) => 2 * n + 1,
            (Domain::Surface, 3) => (n + 1) * (n + 1),
            (Domain::Cone, 2) => (n + 1) * (n + 2) / 2,
            (Domain::Cone, 3) => (n + 1) * (n + 2) * (n + 3) / 6,
            _ => unreachable!(),
        }
    }

    /// Dimension of the polynomials of degree at most n on the domain.
    pub fn dim_pi(&self, n: usize) -> usize {
        (0..=n).map(|k| self.dim_vn(k)).sum()
    }
}
