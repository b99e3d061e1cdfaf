use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

/// Centrality, spectra and diffusion on synthetic or loaded networks.
///
/// Every run is a pure function of its flags: randomness comes only from
/// --seed, and each output file records the seed and parameters used.
#[derive(Debug, Parser)]
#[command(name = "netspectra", version, propagate_version = true)]
pub struct Cli {
    /// Seed for every random draw (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Output directory. Without it the main artifact goes to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Which artifacts to emit (default all).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// JSON run configuration; command-line flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a graph and write it as an edge list.
    Generate(GenerateArgs),
    /// Full report: centralities, spectra, diffusion, composite ranking, vulnerability.
    Analyze(AnalyzeArgs),
    /// Simulate x(t+1) = A x(t) from one node and record the reach curve.
    Diffuse(DiffuseArgs),
    /// Adjacency and Laplacian spectra with gap diagnostics.
    Spectrum(GraphArgs),
    /// Degree, closeness, betweenness and eigenvector centrality.
    Centrality(CentralityArgs),
    /// Compare generator families over many seeds (specs come from --config).
    Compare(CompareArgs),
}

impl Command {
    pub fn name(&self) -> CommandName {
        match self {
            Command::Generate(_) => CommandName::Generate,
            Command::Analyze(_) => CommandName::Analyze,
            Command::Diffuse(_) => CommandName::Diffuse,
            Command::Spectrum(_) => CommandName::Spectrum,
            Command::Centrality(_) => CommandName::Centrality,
            Command::Compare(_) => CommandName::Compare,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandName {
    Generate,
    Analyze,
    Diffuse,
    Spectrum,
    Centrality,
    Compare,
}

impl CommandName {
    pub fn as_str(self) -> &'static str {
        match self {
            CommandName::Generate => "generate",
            CommandName::Analyze => "analyze",
            CommandName::Diffuse => "diffuse",
            CommandName::Spectrum => "spectrum",
            CommandName::Centrality => "centrality",
            CommandName::Compare => "compare",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Dot,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Er,
    Ba,
    Ws,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    RawAdjacency,
    RowStochastic,
}

/// Model parameters; unset ones take the model's defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct ModelParams {
    /// Node count (all models; default 100).
    #[arg(long)]
    pub n: Option<usize>,
    /// ER edge probability (default 0.05).
    #[arg(long)]
    pub p: Option<f64>,
    /// BA edges per new node (default 2).
    #[arg(long)]
    pub m: Option<usize>,
    /// WS lattice degree, even (default 4).
    #[arg(long)]
    pub k: Option<usize>,
    /// WS rewiring probability (default 0.1).
    #[arg(long)]
    pub beta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub model: Option<ModelKind>,
    #[command(flatten)]
    pub params: ModelParams,
}

/// Where the graph comes from: an edge-list file (or "-" for stdin), or a
/// generator.
#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Edge-list file, or "-" to read stdin.
    #[arg(conflicts_with = "model")]
    pub input: Option<String>,
    /// Generate the graph instead of reading it.
    #[arg(long, value_enum)]
    pub model: Option<ModelKind>,
    #[command(flatten)]
    pub params: ModelParams,
}

#[derive(Debug, Args)]
pub struct DiffusionArgs {
    /// Node holding the initial unit state (default 0).
    #[arg(long)]
    pub diffusion_source: Option<usize>,
    /// Number of steps; default runs up to 2n, stopping once every node is reached.
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// A node counts as reached once |x_i| exceeds this (default 1e-12).
    #[arg(long)]
    pub reach_eps: Option<f64>,
}

#[derive(Debug, Args)]
pub struct EigenArgs {
    /// Residual bound for eigenvector centrality (default 1e-10).
    #[arg(long)]
    pub eigen_tol: Option<f64>,
    /// Iteration cap for eigenvector centrality (default 100000).
    #[arg(long)]
    pub eigen_max_iter: Option<usize>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub diffusion: DiffusionArgs,
    #[command(flatten)]
    pub eigen: EigenArgs,
    /// Include the per-source diffusion signal even above 500 nodes.
    #[arg(long)]
    pub full_diffusion_signal: bool,
}

#[derive(Debug, Args)]
pub struct DiffuseArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub diffusion: DiffusionArgs,
}

#[derive(Debug, Args)]
pub struct CentralityArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[command(flatten)]
    pub eigen: EigenArgs,
    /// Report normalized scores instead of raw ones.
    #[arg(long)]
    pub normalized: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Seeds per spec; overrides the config's "seeds".
    #[arg(long)]
    pub seeds: Option<usize>,
}
