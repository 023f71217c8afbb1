use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sepscan_core::criteria::CriterionId;

#[derive(Debug, Parser)]
#[command(name = "sepscan", version, about = "Detect and witness entanglement of finite-dimensional quantum states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate separability criteria on a state.
    Check(CheckArgs),
    /// Bisect the detection threshold of a criterion over a noisy family.
    Scan(ScanArgs),
    /// Transform a state to its filtering normal form.
    Nf(NfArgs),
    /// Build an entanglement witness.
    Witness(WitnessArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Acin,
    Isotropic,
    Bell,
    Ghz,
    MaxEntangled,
    MaximallyMixed,
    RandomFullRank,
    RandomSeparable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Cm,
    Gcm,
    Lur,
    Ppt,
    Ccnr,
    All,
}

impl CriterionArg {
    pub fn ids(self) -> Vec<CriterionId> {
        match self {
            CriterionArg::Cm => vec![CriterionId::Cm],
            CriterionArg::Gcm => vec![CriterionId::Gcm],
            CriterionArg::Lur => vec![CriterionId::Lur],
            CriterionArg::Ppt => vec![CriterionId::Ppt],
            CriterionArg::Ccnr => vec![CriterionId::Ccnr],
            CriterionArg::All => CriterionId::ALL.to_vec(),
        }
    }
}

/// Family parameters. Unused ones are ignored.
#[derive(Debug, Clone, Args)]
pub struct FamilyParams {
    /// Noise-free state family; `--p` is the weight of the family state
    /// against white noise.
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    #[arg(long, default_value_t = 2.0)]
    pub a: f64,
    #[arg(long, default_value_t = 3.0)]
    pub b: f64,
    #[arg(long, default_value_t = 0.6)]
    pub c: f64,
    /// Local dimension (isotropic).
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// First dimension (max-entangled) or party count (ghz).
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    /// Second dimension (max-entangled).
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Party dimensions for the random and maximally mixed families.
    #[arg(long, value_delimiter = ',', default_value = "2,2")]
    pub dims: Vec<usize>,
    /// Product terms in a random separable mixture (default: product of dims).
    #[arg(long)]
    pub terms: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// State file (JSON with dims, re, im).
    #[arg(long, conflicts_with = "family")]
    pub file: Option<PathBuf>,
    #[command(flatten)]
    pub params: FamilyParams,
    /// Noise weight for `--family`.
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the JSON report (or, for `nf`, the normal-form state) here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the JSON report instead of a text summary.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Check every `*.json` state file in a directory.
    #[arg(long, conflicts_with_all = ["file", "family"])]
    pub batch: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "all")]
    pub criterion: CriterionArg,
    #[arg(long)]
    pub normal_form: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub params: FamilyParams,
    #[arg(long, value_enum)]
    pub criterion: CriterionArg,
    #[arg(long)]
    pub normal_form: bool,
    /// Width of the final bracket.
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
    #[arg(long, default_value_t = 0.0)]
    pub p_lo: f64,
    #[arg(long, default_value_t = 0.99)]
    pub p_hi: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct NfArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Residual at which the sweeps stop.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 500)]
    pub max_sweeps: usize,
    /// Also write the JSON report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WitnessArgs {
    /// Witness adapted to the maximally entangled state of M x N.
    #[arg(long, num_args = 2, value_names = ["M", "N"], conflicts_with_all = ["canonical_multi", "from_state"])]
    pub canonical: Option<Vec<usize>>,
    /// Multipartite witness from the standard observables.
    #[arg(long, num_args = 2.., value_name = "DIMS", conflicts_with = "from_state")]
    pub canonical_multi: Option<Vec<usize>>,
    /// Build the witness from a bipartite state file.
    #[arg(long, conflicts_with_all = ["file", "family"])]
    pub from_state: Option<PathBuf>,
    /// State to build the witness from, or to evaluate a canonical witness on.
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}
