//! Polynomial approximation: projections, Cesaro means, convolution, translation, fractional
//! powers, near-best operators, smoothness moduli and K-functionals.

pub mod experiments;
pub mod nearbest;
pub mod operators;
pub mod smoothness;
pub mod spectral;

pub use experiments::{
    bernstein_report, corpus, log_slope, nikolskii_report, sandwich_experiment, write_sandwich,
    BernsteinRow, CorpusFunction, NikolskiiReport, NikolskiiRow, SandwichBand, SandwichConfig,
    SandwichReport, SandwichRow,
};
pub use nearbest::NearBest;
pub use operators::{
    cesaro_mean, cesaro_multipliers, convolution_multipliers, convolve, frac_diff,
    jacobi_reduction, near_best_spectral, project, translate, translate_multipliers,
};
pub use smoothness::{
    best_approx_error, dense_grid, k_functional_upper, modulus, theta_grid, KHat, Norm,
    NormEvaluator,
};
pub use spectral::{eval_batch, project_fn, project_many, SpectralCoeffs};
