use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use tamesc_core::matrix::DEFAULT_BUDGET;

#[derive(Parser, Debug, Clone)]
#[command(name = "tamesc", version, about = "Exact checks for tame supercuspidal representations of SL_n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Norm index, |A_phi|, conductor, formal degree and the gamma-factor identity.
    Verify(VerifyArgs),
    /// Build delta by enumeration and compare its dimension with the formula.
    Brute(InstanceArgs),
    /// L-, epsilon- and gamma-factors of the tame or principal parameter.
    Factors(FactorsArgs),
    /// Band-by-band Artin conductor of Ad o phi.
    Conductor(InstanceArgs),
    /// Symbolic verification over every instance up to a bound.
    Sweep(SweepArgs),
}

#[derive(Args, Debug, Clone, Default)]
pub struct InstanceArgs {
    /// Residue characteristic (odd prime, prime to n).
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Ramification index.
    #[arg(long)]
    pub e: Option<usize>,
    /// Residue degree.
    #[arg(long)]
    pub f: Option<usize>,
    /// Level.
    #[arg(long)]
    pub r: Option<u32>,
    /// Relation sigma tau sigma^-1 = tau^m (default p mod e).
    #[arg(long)]
    pub m: Option<u64>,
    /// Relation sigma^f = tau^c (default 0).
    #[arg(long)]
    pub c: Option<u64>,
    /// Unit w in y^e = p w (default -1).
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<i64>,
    /// Evaluate at this value of q.
    #[arg(long)]
    pub q: Option<u64>,
    /// Keep q symbolic even when p is given.
    #[arg(long)]
    pub symbolic: bool,
    /// TOML file of named instances; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Emit the report as JSON.
    #[arg(long)]
    pub json: bool,
    /// Also write the report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Maximum number of group or ring elements to enumerate.
    #[arg(long, env = "TAMESC_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
}

impl Default for OutputArgs {
    fn default() -> Self {
        OutputArgs { json: false, out: None, budget: DEFAULT_BUDGET }
    }
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Run the symbolic sweep instead of a single instance.
    #[arg(long)]
    pub sweep: bool,
    #[arg(long, default_value_t = 6)]
    pub n_max: usize,
    #[arg(long, default_value_t = 3)]
    pub r_extra: u32,
}

#[derive(Args, Debug, Clone)]
pub struct FactorsArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Factors of the principal parameter phi_0 (only n is used).
    #[arg(long)]
    pub principal: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 6)]
    pub n_max: usize,
    #[arg(long, default_value_t = 3)]
    pub r_extra: u32,
    /// Accepted for symmetry with verify; the sweep is always symbolic.
    #[arg(long)]
    pub symbolic: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}
