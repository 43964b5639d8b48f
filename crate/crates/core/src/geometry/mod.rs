//! Conic domains: points, weights, intrinsic distances, cap measures, reference quadrature and
//! separated point sets.

pub mod cap;
pub mod distance;
pub mod point;
pub mod refquad;
pub mod separated;
pub mod weight;

pub use cap::{cap_measure_formula, cap_measure_quad, w_n};
pub use distance::{dist, dist_ball, dist_cone, dist_interval, dist_sphere, dist_surface};
pub use point::{random_point, random_unit, Point};
pub use refquad::{reference_quadrature, CubatureRule, ReferenceQuadrature};
pub use separated::{build_separated_set, SeparatedSet};
pub use weight::{Domain, WeightSpec};
