use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "volsel", version, about = "Hypervolume subset selection")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Coordinate arithmetic: f64 or exact 64-bit integers.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Float)]
    pub mode: ModeArg,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Report elapsed_ms as 0 so that repeated runs are byte-identical.
    #[arg(long, global = true)]
    pub no_timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Float,
    Exact,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Volume of the union of anchored boxes.
    Hv(HvArgs),
    /// Select at most k points.
    Solve(SolveArgs),
    /// Run several solvers over several files and budgets; CSV output.
    Bench(BenchArgs),
    /// Check the hardness gadget or the approximation lemmas.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Log-uniform random points in [1, spread]^d.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1e6)]
        spread: f64,
    },
    /// Exact-mode instance from a triangular-grid vertex set; needs --output.
    Hardness {
        /// File with one `i j` pair per line.
        #[arg(long)]
        gamma_vertices: PathBuf,
        #[arg(long)]
        ell: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Sweep,
    Ie,
    Mc,
}

#[derive(Debug, Args)]
pub struct HvArgs {
    pub file: PathBuf,
    /// Comma-separated point indices; all points if omitted.
    #[arg(long, value_delimiter = ',')]
    pub indices: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = Engine::Sweep)]
    pub engine: Engine,
    /// Relative accuracy of the Monte Carlo engine.
    #[arg(long, default_value_t = 0.05)]
    pub eps: f64,
    /// Failure probability of the Monte Carlo engine.
    #[arg(long, default_value_t = 0.01)]
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Brute,
    Exact2d,
    Greedy,
    Eptas,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fallback {
    Error,
    Greedy,
}

#[derive(Debug, Clone, Args)]
pub struct SolverOptions {
    /// Approximation parameter of the eptas solver, in (0, 1/2].
    #[arg(long)]
    pub eps: Option<f64>,
    /// Largest cell the eptas solver enumerates exhaustively.
    #[arg(long, default_value_t = volsel_core::eptas::DEFAULT_CELL_CAP)]
    pub cell_cap: usize,
    /// What the eptas solver does with a cell above the cap.
    #[arg(long, value_enum, default_value_t = Fallback::Error)]
    pub fallback: Fallback,
    /// Largest number of subsets the brute solver may enumerate.
    #[arg(long, default_value_t = volsel_core::exact::DEFAULT_BRUTE_BUDGET)]
    pub budget: u128,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub algo: Algo,
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub options: SolverOptions,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    /// Comma-separated solvers.
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    pub algos: Vec<Algo>,
    /// Comma-separated budgets.
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<usize>,
    #[command(flatten)]
    pub options: SolverOptions,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Exact checks of the gadget for one m, or of a full reduction.
    Hardness {
        #[arg(long, conflicts_with_all = ["gamma_vertices", "ell"], required_unless_present = "gamma_vertices")]
        m: Option<usize>,
        #[arg(long, requires = "ell")]
        gamma_vertices: Option<PathBuf>,
        #[arg(long)]
        ell: Option<usize>,
        /// Random subsets for the additive-volume lemma.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Largest number of vertex subsets to enumerate.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u128,
    },
    /// Randomized checks of the approximation lemmas.
    Lemmas {
        /// One suite name, or `all`.
        #[arg(long, default_value = "all")]
        which: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
    },
}
