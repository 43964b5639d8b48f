//! Orthogonal bases, reproducing kernels, localized kernels, Christoffel functions and decay checks.

pub mod addition;
pub mod basis;
pub mod decay;
pub mod eigen;
pub mod fastdecay;
pub mod reproducing;

pub use addition::{AdditionKernel, KernelConfig};
pub use basis::{basis_eval, basis_norm, BasisIndex, OrthoBasis};
pub use decay::{decay_report, point_toward, probe_pairs, DecayOptions, DecayReport};
pub use eigen::{eigen_check, EigenCheck};
pub use fastdecay::{fast_decay_poly, FastDecay};
pub use reproducing::{
    basis_sum, christoffel, localized_coeffs, localized_frac_coeffs, localized_kernel,
    localized_kernel_frac, reprod_kernel, KernelEvaluator, KernelMethod,
};
