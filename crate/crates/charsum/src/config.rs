//! Everything a run depends on. A `RunConfig` parsed from the command line
//! can be saved as JSON and replayed to reproduce the run's outputs.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

/// Environment variable giving the default worker count.
pub const THREADS_ENV: &str = "CHARSUM_THREADS";

#[derive(Parser, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[command(
    name = "charsum",
    version,
    about = "Exact character sums and planar-function certificates over finite fields"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads (defaults to one per core).
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Output file, or directory for commands writing one file per item.
    /// Reports go to stdout when absent.
    #[arg(long, global = true)]
    pub emit: Option<PathBuf>,

    /// Default seed for the `random` catalog entry.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write this configuration as JSON before running.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub save_config: Option<PathBuf>,
}

#[derive(ValueEnum, Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Perfect nonlinearity and bentness tests.
    #[command(subcommand)]
    Test(TestCommand),
    /// Runs the PN and bent tests independently and compares them (odd p).
    Crosscheck(FnArgs),
    /// Salem constants of function graphs, or the exact check for bent f.
    Salem(SalemCommand),
    /// Difference operators rebuilt from those at an F_p-basis.
    #[command(subcommand)]
    Decomp(DecompCommand),
    /// Distance-one perturbations and pairwise distances of planar functions.
    #[command(subcommand)]
    Mindist(MindistCommand),
    /// Built-in functions.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Field parameters and element tables.
    #[command(subcommand)]
    Field(FieldCommand),
    /// Reruns a saved configuration.
    Replay { config: PathBuf },
}

#[derive(Subcommand, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub enum TestCommand {
    Pn(FnArgs),
    Bent(BentArgs),
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct BentArgs {
    #[command(flatten)]
    pub function: FnArgs,
    /// Floating transform with exact spot checks on 1% of frequencies.
    #[arg(long, conflicts_with = "exact")]
    pub fast: bool,
    /// Exact cyclotomic transform (the default).
    #[arg(long)]
    #[serde(skip)]
    pub exact: bool,
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[command(args_conflicts_with_subcommands = true)]
pub struct SalemCommand {
    #[command(subcommand)]
    pub verify: Option<SalemVerify>,
    #[command(flatten)]
    pub function: FnArgs,
    /// Field orders to evaluate the same function on, e.g. `5,7,9,25`.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["p", "input", "modulus"])]
    pub family: Option<Vec<u32>>,
}

#[derive(Subcommand, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub enum SalemVerify {
    /// Exact case-by-case values and constant 1 for the graph of a bent f.
    VerifyThm1(FnArgs),
}

#[derive(Subcommand, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub enum DecompCommand {
    /// Rebuilds every difference operator from those at a basis.
    Verify(DecompArgs),
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct DecompArgs {
    #[command(flatten)]
    pub function: FnArgs,
    /// Basis as point indices (default: the standard basis).
    #[arg(long, value_delimiter = ',')]
    pub basis: Option<Vec<usize>>,
}

#[derive(Subcommand, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub enum MindistCommand {
    /// Tests every single-point edit of a planar function.
    Sweep(SweepArgs),
    /// Hamming distances between planar functions on one field.
    Pairwise(PairwiseArgs),
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct SweepArgs {
    #[command(flatten)]
    pub function: FnArgs,
    /// Include wall-clock time in the report (breaks byte-identity).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct PairwiseArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// `catalog:NAME[:k=v,..]`, `poly:c0,c1,..` or `table:PATH`; repeatable.
    #[arg(long = "fn", required = true)]
    pub functions: Vec<String>,
}

#[derive(Subcommand, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub enum CatalogCommand {
    List,
    /// Writes a function as a table file.
    Export(FnArgs),
}

#[derive(Subcommand, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub enum FieldCommand {
    Info(FieldArgs),
}

#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq, Default)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    pub p: Option<u32>,
    /// Extension degree.
    #[arg(long, default_value_t = 1)]
    pub ell: u32,
    /// Little-endian monic modulus coefficients, e.g. `1,0,1` for t^2 + 1.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
}

/// A function: a catalog entry, a univariate polynomial, or a table file.
#[derive(Args, Serialize, Deserialize, Clone, Debug, PartialEq, Default)]
pub struct FnArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Input dimension (catalog entries have their own defaults).
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, conflicts_with_all = ["input", "poly"])]
    pub catalog: Option<String>,
    /// Catalog parameters `k=v,..` with keys d, e, c, b, seed.
    #[arg(long, requires = "catalog")]
    pub params: Option<String>,
    /// Function table file.
    #[arg(long, conflicts_with = "poly")]
    pub input: Option<PathBuf>,
    /// Coefficients c0,c1,.. of a polynomial in one variable.
    #[arg(long, value_delimiter = ',')]
    pub poly: Option<Vec<u32>>,
}
