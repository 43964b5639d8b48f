//! Positive cubature on separated sets, exactness certification, Marcinkiewicz-Zygmund constants
//! and rule files.

pub mod io;
pub mod moment;
pub mod mz;
pub mod nnls;
pub mod solve;

pub use io::{read_json, read_rule_csv, write_json, write_rule_csv, RuleMeta};
pub use moment::MomentOperator;
pub use mz::{mz_constants, random_coefficients, MzConstants, MzNorm};
pub use nnls::{nnls, NnlsSolution};
pub use solve::{
    calibrate_delta, solve_positive_cubature, solve_positive_cubature_with, verify_exactness,
    verify_exactness_at, weight_comparability, Calibrated, CubatureOptions,
};
