//! Orthogonal polynomial analysis on the conic surface and the solid cone: intrinsic distances,
//! reproducing and localized kernels, separated point sets, positive cubature, needlet frames and
//! approximation operators.

pub mod approx;
pub mod cli;
pub mod cubature;
pub mod error;
pub mod frames;
pub mod geometry;
pub mod kernels;
pub mod specfun;

pub use error::{Error, Result};
