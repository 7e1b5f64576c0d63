use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cache::CACHE_DIR_ENV;

#[derive(Debug, Parser)]
#[command(
    name = "asmrel",
    version,
    about = "Exact refined ASM counts and checks of the linear relations between them"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Worker threads; 0 picks one per core.
    #[arg(long, short = 'j', default_value_t = 0, global = true)]
    pub jobs: usize,

    /// Allow sizes above the practical bounds (up to the hard limits).
    #[arg(long, global = true)]
    pub force: bool,

    /// Compute every table; neither read nor write the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Cache directory [default: $XDG_CACHE_HOME/asmrel or ~/.cache/asmrel].
    #[arg(long, env = CACHE_DIR_ENV, global = true)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a refined count table, or one entry of it.
    Count(CountArgs),
    /// Check identities and write a report; exits 1 if any fails.
    Verify(VerifyArgs),
    /// Build the uniqueness system for the top-d-rows counts and report its rank.
    Conjecture(ConjectureArgs),
    /// Inspect or clear the table cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Family slug (A, A_nk, top-bottom, ...), or `coefficients` with --c/--d.
    #[arg(long)]
    pub family: String,

    #[arg(long)]
    pub n: usize,

    /// Print only this entry, e.g. `--index 2,3`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub index: Option<Vec<i64>>,

    /// Bottom positions for `coefficients`.
    #[arg(long)]
    pub c: Option<usize>,

    /// Top positions for `coefficients`.
    #[arg(long)]
    pub d: Option<usize>,

    #[arg(long, value_enum, default_value_t = TableFormat::Text)]
    pub format: TableFormat,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("which").required(true).args(["identity", "all"])))]
#[command(group(clap::ArgGroup::new("size").required(true).args(["n", "n_max"])))]
pub struct VerifyArgs {
    /// Identity slug; may be repeated.
    #[arg(long)]
    pub identity: Vec<String>,

    /// Every identity, each over the part of the size range it supports.
    #[arg(long)]
    pub all: bool,

    /// A single size.
    #[arg(long)]
    pub n: Option<usize>,

    /// All sizes from --n-min up to this one.
    #[arg(long)]
    pub n_max: Option<usize>,

    #[arg(long, default_value_t = 1, requires = "n_max")]
    pub n_min: usize,

    /// Report path; `-` writes the report to standard output.
    #[arg(long, default_value = "asmrel-verify.json")]
    pub report: PathBuf,

    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Zero,
    Restrict,
    Both,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    #[arg(long)]
    pub n: usize,

    #[arg(long)]
    pub d: usize,

    /// Treatment of swap equations reaching index n + 1.
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    pub mode: ModeArg,

    /// Report path; `-` writes the report to standard output.
    #[arg(long, default_value = "asmrel-conjecture.json")]
    pub report: PathBuf,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum CacheAction {
    /// Print the cache directory.
    Path,
    /// List entries and whether they validate.
    List,
    /// Delete all entries.
    Clear,
}
