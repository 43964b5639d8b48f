//! Command-line driver: argument parsing, dispatch and exit codes.

mod check;
mod commands;
mod formats;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::geometry::WeightSpec;
use crate::specfun::Cutoff;

pub use check::{run_suite, Invariant, Suite};
pub use formats::FORMATS;

/// Exit status of a successful run.
pub const EXIT_OK: i32 = 0;
/// Invalid or unsupported configuration.
pub const EXIT_CONFIG: i32 = 2;
/// Numerical infeasibility (cubature, eigen-solver, quadrature).
pub const EXIT_INFEASIBLE: i32 = 3;
/// An invariant of `check` failed.
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "conekit",
    version,
    about = "Orthogonal polynomials, localized kernels, positive cubature, needlets and approximation on conic domains",
    after_help = "File formats: conekit --help formats"
)]
pub struct Cli {
    #[command(flatten)]
    pub weight: WeightArgs,
    /// Seed of every randomized construction; echoed into all JSON output.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Also write gnuplot scripts next to CSV reports.
    #[arg(long, global = true)]
    pub gnuplot: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    Surface,
    Cone,
}

/// Weight parameters shared by all commands.
#[derive(Args, Debug, Clone)]
pub struct WeightArgs {
    #[arg(long, global = true, value_enum, default_value = "surface")]
    pub domain: DomainArg,
    #[arg(long, global = true, default_value_t = 2)]
    pub d: usize,
    /// Exponent of t on the surface (default -1); must be 0 on the cone.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(
        long,
        global = true,
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    pub gamma: f64,
    #[arg(long, global = true, default_value_t = 0.0)]
    pub mu: f64,
}

impl WeightArgs {
    pub fn spec(&self) -> crate::Result<WeightSpec> {
        match self.domain {
            DomainArg::Surface => {
                WeightSpec::surface(self.d, self.beta.unwrap_or(-1.0), self.gamma)
            }
            DomainArg::Cone => {
                if self.beta.is_some_and(|b| b != 0.0) {
                    return Err(Error::Unsupported("the cone weight has beta = 0".into()));
                }
                WeightSpec::cone(self.d, self.gamma, self.mu)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CutoffArg {
    A,
    B,
    Indicator,
}

impl From<CutoffArg> for Cutoff {
    fn from(c: CutoffArg) -> Self {
        match c {
            CutoffArg::A => Cutoff::TypeA,
            CutoffArg::B => Cutoff::TypeBFrame,
            CutoffArg::Indicator => Cutoff::Indicator,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelOp {
    /// Normalized suprema N1, N2, N3 of the localized kernel.
    Decay,
    /// Addition formula against the basis sum for the reproducing kernel.
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ApproxOp {
    /// Parseval defect of a frame written by `frame`.
    Parseval,
    /// Direct and inverse estimates over the function corpus.
    Sandwich,
    Nikolskii,
    Bernstein,
    /// Sup-norm error of the discrete near-best operator on a corpus function.
    Nearbest,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Separated point set: points.csv and points.json.
    Points {
        #[arg(long)]
        eps: f64,
        /// Random probes of the covering estimate.
        #[arg(long, default_value_t = 2000)]
        probes: usize,
    },
    /// Positive cubature of degree n on a (delta / n)-separated set: rule.csv and rule.json.
    Cubature {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        /// Halve delta (down to delta / 16) until the rule is feasible.
        #[arg(long)]
        calibrate: bool,
        #[arg(long, default_value_t = 1e-8)]
        residual: f64,
    },
    /// Kernel studies: kernel_decay.csv or kernel_oracle.csv.
    Kernel {
        #[arg(long, value_enum, default_value = "decay")]
        op: KernelOp,
        #[arg(long, value_delimiter = ',', default_values_t = [16usize, 32, 64])]
        n: Vec<usize>,
        #[arg(long, default_value_t = 8.0)]
        kappa: f64,
        #[arg(long, value_enum, default_value = "a")]
        cutoff: CutoffArg,
        #[arg(long, default_value_t = 200)]
        pairs: usize,
    },
    /// Needlet frame with levels 0..=J: frame/frame.json and frame/level_<j>.csv.
    Frame {
        #[arg(long = "J")]
        j: usize,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        /// Upper bound on the rule degree of each level.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum, default_value = "b")]
        cutoff: CutoffArg,
        /// Fail instead of refining the spacing of an infeasible level.
        #[arg(long)]
        no_calibrate: bool,
    },
    /// Approximation experiments.
    Approx {
        #[arg(long, value_enum)]
        op: ApproxOp,
        /// Frame directory for `parseval` (default: <out>/frame).
        #[arg(long)]
        frame: Option<PathBuf>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        r: Vec<f64>,
        /// Corpus function for `nearbest`.
        #[arg(long, default_value = "abs_t_half")]
        function: String,
    },
    /// Invariant suites; exits 4 listing the failed invariants.
    Check {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Prints the documentation of every output file.
    Formats,
}

/// Failure of a command.
#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Invariants(Vec<String>),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Invariants(ids) => write!(f, "failed invariants: {}", ids.join(", ")),
        }
    }
}

/// Exit code of an error.
pub fn exit_code(e: &CliError) -> i32 {
    match e {
        CliError::Invariants(_) => EXIT_INVARIANT,
        CliError::Lib(e) => match e.root() {
            Error::Infeasible { .. } | Error::EigenSolver { .. } | Error::Quadrature { .. } => {
                EXIT_INFEASIBLE
            }
            _ => EXIT_CONFIG,
        },
    }
}

/// Caps the rayon pool at CONEKIT_THREADS when set.
pub fn init_threads() {
    if let Some(n) = std::env::var("CONEKIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
}

/// Runs a parsed command; the summary JSON is returned for printing.
pub fn run(cli: &Cli) -> Result<serde_json::Value, CliError> {
    commands::dispatch(cli)
}

/// Parses the arguments, runs and returns the process exit code.
pub fn main_entry<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    if args
        .windows(2)
        .any(|w| w[0] == "--help" && w[1] == "formats")
    {
        print!("{FORMATS}");
        return EXIT_OK;
    }
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    if let Command::Formats = cli.command {
        print!("{FORMATS}");
        return EXIT_OK;
    }
    init_threads();
    match run(&cli) {
        Ok(v) => {
            println!("{}", serde_json::to_string_pretty(&v).unwrap_or_default());
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
