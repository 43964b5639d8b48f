//! One-dimensional building blocks: Jacobi and Gegenbauer polynomials, Gauss-Jacobi rules,
//! cut-off functions and spherical harmonics.

pub mod cutoff;
pub mod gegenbauer;
pub mod harmonics;
pub mod jacobi;
pub mod quadrature;

pub use cutoff::{cutoff_eval, Cutoff};
pub use gegenbauer::{even_zonal_all, gegenbauer_eval, zonal_eval, zonal_limit0};
pub use harmonics::{
    circle_harmonic, harmonic_dim, harmonic_offset, solid_harmonics, HarmonicKind,
};
pub use jacobi::{c_ab, jacobi_at_one, jacobi_eval, jacobi_eval_all, jacobi_norm, JacobiParams};
pub use quadrature::{gauss_jacobi, gauss_jacobi_cached, gauss_legendre, QuadratureRule1D};
