//! Command-line surface.  Every run is fully described by the parsed
//! arguments plus the seed; nothing reads the environment except the
//! cache-directory override.

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use orbitforge::orbits_gl::KRange;
use orbitforge::orbits_sp::SpMode;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "orbitforge",
    version,
    about = "Exact defining equations and charts for nilpotent orbit closures in gl_n and sp_2m",
    max_term_width = 100
)]
pub struct Cli {
    /// Worker threads for internal parallelism (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Directory for cached computation results.
    #[arg(long, global = true, env = "ORBITFORGE_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Defining equations of one nilpotent orbit closure.
    Closure(ClosureArgs),
    /// Localization charts along the orbit inside its closure.
    Charts(ChartsArgs),
    /// Representation-theoretic generators V_{i,p} and their assembly.
    Weyman(WeymanArgs),
    /// Symplectic constraint families cutting sp_2m out of gl_2m.
    Constraints(ConstraintsArgs),
    /// Coefficient statistics, factorial bound and admissible prime.
    Bound(BoundArgs),
    /// Reduce an equation-set JSON document (stdin) modulo a prime.
    Reduce(ReduceArgs),
    /// Sampling oracle: closure membership versus dominance order.
    Oracle(OracleArgs),
    /// Run the full self-check suite.
    Verify(VerifyArgs),
    /// Emit a computer-algebra script for an equation system.
    Export(ExportArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum AlgebraArg {
    Gl,
    Sp,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum FormatArg {
    Json,
    Text,
    Cas,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum SpModeArg {
    /// Linear equations from X^T*Omega + Omega*X = 0.
    Lie,
    /// The quadratic group-condition families.
    Paper,
}

impl SpModeArg {
    pub fn mode(self) -> SpMode {
        match self {
            SpModeArg::Lie => SpMode::Lie,
            SpModeArg::Paper => SpMode::Group,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Default, ValueEnum)]
pub enum KRangeArg {
    /// Stop at the first power with rank condition zero.
    #[default]
    Pruned,
    /// Run the literal k = 1..n loop.
    Full,
}

impl KRangeArg {
    pub fn range(self) -> KRange {
        match self {
            KRangeArg::Pruned => KRange::Pruned,
            KRangeArg::Full => KRange::Full,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            KRangeArg::Pruned => "pruned",
            KRangeArg::Full => "full",
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Default, ValueEnum)]
pub enum DialectArg {
    #[default]
    Singular,
    Macaulay2,
}

/// Selects one orbit: the algebra, its size, and the partition.
#[derive(Args, Debug)]
#[command(group(ArgGroup::new("size").required(true).args(["n", "m"])))]
pub struct OrbitSelector {
    /// Ambient algebra; inferred from --n / --m when omitted.
    #[arg(long, value_enum)]
    pub algebra: Option<AlgebraArg>,

    /// Matrix size for gl_n.
    #[arg(long)]
    pub n: Option<usize>,

    /// Half the matrix size for sp_2m.
    #[arg(long)]
    pub m: Option<usize>,

    /// Partition, e.g. "[2,1]".
    #[arg(long)]
    pub lambda: String,

    /// Symplectic constraint mode (sp only).
    #[arg(long = "sp-mode", value_enum, default_value_t = SpModeArg::Lie)]
    pub sp_mode: SpModeArg,

    /// Power range for the rank conditions.
    #[arg(long = "k-range", value_enum, default_value_t)]
    pub k_range: KRangeArg,
}

#[derive(Args, Debug)]
pub struct ClosureArgs {
    #[command(flatten)]
    pub orbit: OrbitSelector,

    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,

    /// Script dialect for --format cas.
    #[arg(long, value_enum, default_value_t)]
    pub dialect: DialectArg,
}

#[derive(Args, Debug)]
pub struct ChartsArgs {
    #[command(flatten)]
    pub orbit: OrbitSelector,

    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct WeymanArgs {
    /// Matrix size for gl_n.
    #[arg(long)]
    pub n: usize,

    /// Partition, e.g. "[2,1]".
    #[arg(long)]
    pub lambda: String,

    /// Also run the sampling comparison against the rank-condition set.
    #[arg(long)]
    pub compare: bool,

    /// Sample count per stratum for --compare.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,

    /// Master seed for --compare.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,

    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct ConstraintsArgs {
    /// Half the matrix size for sp_2m.
    #[arg(long)]
    pub m: usize,

    /// Constraint mode.
    #[arg(long, value_enum, default_value_t = SpModeArg::Lie)]
    pub mode: SpModeArg,

    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    /// Matrix size for gl_n.
    #[arg(long)]
    pub n: usize,

    /// Partition, e.g. "[2,1]".
    #[arg(long)]
    pub lambda: String,

    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    /// Prime modulus.
    #[arg(long)]
    pub p: u64,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    /// Largest n to sweep (2..=max-n; capped at 5 by memory).
    #[arg(long = "max-n", default_value_t = 4)]
    pub max_n: usize,

    /// Samples per stratum.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,

    /// Master seed.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,

    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Largest n the checks range over.
    #[arg(long = "max-n", default_value_t = 4)]
    pub max_n: usize,

    /// Samples per stratum in the sampling checks.
    #[arg(long, default_value_t = 10)]
    pub samples: usize,

    /// Master seed.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,

    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Default, ValueEnum)]
pub enum ExportSource {
    /// Rank-condition closure equations.
    #[default]
    Closure,
    /// The V_{i,p} generator assembly.
    Weyman,
    /// One localization chart (closure equations plus h*t - 1).
    Charts,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[command(flatten)]
    pub orbit: OrbitSelector,

    /// Which equation system to export.
    #[arg(long, value_enum, default_value_t)]
    pub source: ExportSource,

    /// Chart index for --source charts.
    #[arg(long)]
    pub chart: Option<usize>,

    #[arg(long, value_enum, default_value_t)]
    pub dialect: DialectArg,
}
