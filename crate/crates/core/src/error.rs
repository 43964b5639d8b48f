use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no rings: eps = {eps} gives N = floor(pi / (2 eps)) = 0")]
    NoRings { eps: f64 },
    #[error("unsupported combination: {0}")]
    Unsupported(String),
    #[error("eigen-solver did not converge for {m} nodes with alpha = {alpha}, beta = {beta}")]
    EigenSolver { m: usize, alpha: f64, beta: f64 },
    #[error("quadrature did not converge: achieved error {achieved:e}")]
    Quadrature { achieved: f64 },
    #[error("cubature infeasible at degree {degree}: residual {residual:e} (min weight {min_weight:e}); try a smaller delta")]
    Infeasible {
        degree: usize,
        residual: f64,
        min_weight: f64,
    },
    #[error("frame level {level}: {source}")]
    FrameLevel { level: usize, source: Box<Error> },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// The innermost error, looking through frame-level wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::FrameLevel { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
