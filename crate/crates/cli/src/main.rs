//! `qonkit`: runs the library's verifications and emits residual reports.
//!
//! Exit status is 0 when every check passes, 1 when a residual exceeds its
//! tolerance (the failing relations are named on stderr) and 2 for usage
//! errors, including parameters the library rejects.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qonkit::acceptance::DEFAULT_SEED;

use report::{Format, Report};

#[derive(Parser, Debug)]
#[command(
    name = "qonkit",
    version,
    about = "Deformed oscillators, wedge products and coherent states, checked numerically"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Tolerance for every check, replacing the per-check defaults.
    #[arg(long, env = "QONKIT_TOL", value_parser = positive)]
    pub tol: Option<f64>,
    /// Seed for randomized instances.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

impl Common {
    /// The override when one was given, else `default`.
    pub fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    OneParam,
    TwoParam,
    Symmetric,
}

/// Deformation parameters shared by the oscillator subcommands.
#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    #[arg(long, value_enum, default_value_t = SchemeArg::OneParam)]
    pub scheme: SchemeArg,
    /// Deformation parameter, e.g. `0.5` or `0.3+0.4i`.
    #[arg(long, allow_hyphen_values = true, value_parser = complex)]
    pub q: Option<Complex64>,
    /// Second parameter of the two-parameter scheme.
    #[arg(long, allow_hyphen_values = true, value_parser = complex, default_value = "1")]
    pub p: Complex64,
    /// Use `q = e^{2 pi i / k}` instead of `--q`.
    #[arg(long, conflicts_with = "q")]
    pub k: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Deformed numbers, factorials, exponentials and Jackson moments.
    Qcalc {
        #[command(flatten)]
        params: ParamArgs,
        /// Largest `n` in the table.
        #[arg(long, default_value_t = 10)]
        n: u32,
        /// Evaluate the deformed exponential here.
        #[arg(long, allow_hyphen_values = true, value_parser = complex)]
        x: Option<Complex64>,
        /// `type1` divides by `[n]!`, `type2` by `|[n]|!`.
        #[arg(long, value_enum, default_value_t = VariantArg::Type1)]
        variant: VariantArg,
        #[command(flatten)]
        common: Common,
    },
    /// Braid and Yang-Baxter residuals of a deformation matrix.
    BraidCheck {
        #[arg(long, value_enum, default_value_t = Preset::Multiparametric)]
        preset: Preset,
        /// Dimension of the underlying space.
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Phase for the `quon` preset.
        #[arg(long, allow_hyphen_values = true, value_parser = complex)]
        q: Option<Complex64>,
        /// Read the matrix from a JSON file instead of a preset.
        #[arg(long, conflicts_with = "preset")]
        lambda: Option<std::path::PathBuf>,
        /// Write the matrix to a JSON file.
        #[arg(long)]
        export: Option<std::path::PathBuf>,
        /// Also report the wedge space dimensions for each degree.
        #[arg(long)]
        dims: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Normal ordering and d^2 = 0 on random noncommutative forms.
    NcformsCheck {
        /// Number of coordinates.
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        /// Use `q_ij = p_i = 1`.
        #[arg(long)]
        classical: bool,
        /// Differentiate the polynomial in this file (lines `e1 e2 ... : re im`).
        #[arg(long)]
        poly: Option<std::path::PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Oscillator relations on the truncated Fock representation.
    FockVerify {
        #[command(flatten)]
        params: ParamArgs,
        /// Number of levels.
        #[arg(long = "D", default_value_t = qonkit::fock::DEFAULT_DIM)]
        dim: usize,
        /// Include the matrices in the output.
        #[arg(long)]
        matrices: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Coherent states and the Jackson resolution of unity.
    CsResolution {
        #[command(flatten)]
        params: ParamArgs,
        /// Levels in the resolution check.
        #[arg(long, default_value_t = 12)]
        n: usize,
        /// Build the coherent state with this label.
        #[arg(long, allow_hyphen_values = true, value_parser = complex)]
        z: Option<Complex64>,
        /// Truncation for the state; chosen from the tail when omitted.
        #[arg(long = "D")]
        dim: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Partition function and occupation of a quon mode.
    QuonDist {
        /// Root-of-unity order; omit for an unrestricted mode.
        #[arg(long)]
        k: Option<u32>,
        /// Deformation of an unrestricted mode.
        #[arg(long, allow_hyphen_values = true, value_parser = complex, default_value = "1", conflicts_with = "k")]
        q: Complex64,
        #[arg(long, required_unless_present = "eta_grid", conflicts_with = "eta_grid")]
        eta: Option<f64>,
        /// `start:stop:step`, inclusive.
        #[arg(long, value_parser = grid)]
        eta_grid: Option<Grid>,
        #[command(flatten)]
        common: Common,
    },
    /// Exact checks in the graded parafermion algebra.
    GradedCheck {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(2..=3))]
        k: u32,
        /// `j` in `xi xibar = q^j xibar xi`; defaults to 1 (anticommuting) for
        /// k = 2 and 0 for k = 3.
        #[arg(long)]
        reorder: Option<u32>,
        /// Solve for the resolution weights under every reorder convention.
        #[arg(long)]
        solve_h: bool,
        /// Boson label for the supercoherent table (k = 3).
        #[arg(long, allow_hyphen_values = true, value_parser = complex)]
        z: Option<Complex64>,
        #[arg(long, default_value_t = 24)]
        dim_boson: usize,
        /// Random word triples in the associativity check.
        #[arg(long, default_value_t = 200)]
        triples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// The full acceptance suite.
    AllAcceptance {
        /// Run only these criteria, e.g. `1,4,9`.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Type1,
    Type2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// The flip `P`.
    Permutation,
    /// Random unimodular exchange table.
    Multiparametric,
    /// A multiparametric solution conjugated by a random `A (x) A`.
    BraidSolution,
    /// `q P` with `--q`.
    Quon,
    /// A random dense matrix, generically not a solution.
    Dense,
}

fn complex(s: &str) -> Result<Complex64, String> {
    s.trim().parse::<Complex64>().map_err(|_| format!("'{s}' is not a complex literal like 0.5, 2i or 0.3-0.4i"))
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("'{s}' is not a positive number")),
    }
}

/// Points of an `--eta-grid`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid(pub Vec<f64>);

/// `start:stop:step` with `stop` included when it lies on the grid.
fn grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, h] = parts.as_slice() else {
        return Err(format!("'{s}' is not start:stop:step"));
    };
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"));
    let (a, b, h) = (parse(a)?, parse(b)?, parse(h)?);
    if h.is_nan() || h <= 0.0 || b < a {
        return Err(format!("'{s}' needs step > 0 and stop >= start"));
    }
    let count = ((b - a) / h + 1e-9).floor() as usize + 1;
    if count > 100_000 {
        return Err(format!("'{s}' has {count} points"));
    }
    Ok(Grid((0..count).map(|i| a + i as f64 * h).collect()))
}

pub enum Failure {
    Usage(String),
}

impl From<qonkit::Error> for Failure {
    fn from(e: qonkit::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, format) = match commands::run(&cli.command) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = report.render(format, &mut out).and_then(|_| out.flush()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    exit_for(&report)
}

fn exit_for(report: &Report) -> ExitCode {
    if report.pass {
        return ExitCode::SUCCESS;
    }
    for c in report.failures() {
        eprintln!("failed: {} (residual {:e}, tolerance {:e})", c.tag, c.residual, c.tolerance);
    }
    ExitCode::from(1)
}
