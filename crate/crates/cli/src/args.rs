use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "ct3", version, about = "Certified canonical threshold bounds and interval classification")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Directory for cached reports.
    #[arg(long, env = "CT3_CACHE_DIR", global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Recompute every pruned candidate with the brute-force evaluator.
    #[arg(long, global = true)]
    pub audit: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Upper bound for ct(X, S) from a weighted blow-up search.
    Compute(ComputeArgs),
    /// Exhaustive finite check of one identity or proposition.
    Verify(VerifyArgs),
    /// Candidate thresholds of one or all families in an interval.
    Classify(ClassifyArgs),
    /// 1/a + 1/b for x^a + y^b + z^c, when c >= lcm(a, b).
    Brieskorn { a: u64, b: u64, c: u64 },
    /// List family members and their weights, one JSON object per line.
    Families(FamiliesArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ComputeArgs {
    /// sm, index1, or a family type (cA, cA/n, cD-1, cD-2, cD/2-1, cD/2-2).
    #[arg(long = "type")]
    pub kind: String,
    #[arg(long)]
    pub phi: Option<String>,
    /// Second equation for the codimension-two models.
    #[arg(long)]
    pub phi2: Option<String>,
    /// Group action, e.g. "1/2(1,1,1,0)". Index one when omitted.
    #[arg(long)]
    pub action: Option<String>,
    /// Structural integer of a family presentation.
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long)]
    pub f: String,
    /// Largest numerator sum searched.
    #[arg(long, default_value_t = 12)]
    pub bound: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    /// sm-lower, sm-not-ab1, ca-split, delta, assumption-a, boundindex or discrepancy-id.
    pub prop: String,
    #[arg(long)]
    pub max: Option<u64>,
    #[arg(long)]
    pub a_max: Option<u64>,
    #[arg(long)]
    pub d_max: Option<u64>,
    #[arg(long)]
    pub n_max: Option<u64>,
    #[arg(long, default_value_t = 2)]
    pub k: i64,
    #[arg(long, default_value_t = 100)]
    pub pairs: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ClassifyArgs {
    /// Family or group of families (cD covers both cD cases).
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    pub family: Option<String>,
    #[arg(long)]
    pub all: bool,
    /// k for (1/k, 1/(k-1)), or explicit endpoints "lo,hi".
    #[arg(long)]
    pub interval: String,
    #[arg(long, default_value_t = 25)]
    pub a_max: u64,
    #[arg(long, default_value_t = 6)]
    pub d_max: u64,
    #[arg(long, default_value_t = 6)]
    pub n_max: u64,
    /// Denominator bound for the union report.
    #[arg(long, default_value_t = 50)]
    pub denom_max: u64,
    /// Fail when a survivor is outside the named set (half-plus).
    #[arg(long)]
    pub expect: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FamiliesArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value_t = 10)]
    pub a_max: u64,
    #[arg(long, default_value_t = 4)]
    pub d_max: u64,
    #[arg(long, default_value_t = 4)]
    pub n_max: u64,
}
