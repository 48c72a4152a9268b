use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "bandgrid", version, about = "Single-pass band-grid classifier experiments")]
pub struct Cli {
    /// Directory holding the raw dataset files.
    #[arg(long, global = true, env = "BANDGRID_DATA", default_value = "data")]
    pub data_root: PathBuf,

    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train a grid in one pass and save it as a model file.
    Train(TrainArgs),
    /// Report accuracy of a saved model, or of a freshly trained one.
    Evaluate(EvaluateArgs),
    /// Evaluate across a range of band counts.
    Sweep(SweepArgs),
    /// Dump the band weights of a saved model.
    Inspect(InspectArgs),
    /// Rerun every published benchmark and compare.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct DatasetArgs {
    /// Built-in dataset name (iris, wine, zoo, abalone, user-modelling, banknote).
    #[arg(long)]
    pub dataset: Option<String>,
    /// Path to a dataset descriptor (TOML).
    #[arg(long)]
    pub descriptor: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
pub struct OptionalDatasetArgs {
    /// Built-in dataset name; defaults to the one recorded in the model.
    #[arg(long)]
    pub dataset: Option<String>,
    /// Path to a dataset descriptor (TOML).
    #[arg(long)]
    pub descriptor: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    /// ow = 1/rows for every category.
    Flat,
    /// ow = 1/count per category.
    PerCategory,
    /// ow = 1/(count + adjustment); needs --adjustments or --denominators.
    Adjusted,
    /// ow taken from --ow.
    Manual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundaryArg {
    Uniform,
    Gaps,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScoringArg {
    /// Output weight divided by the cell's scale weight.
    Ratio,
    /// Input value times scale weight times output weight.
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AdjustModeArg {
    Dominant,
    TrueClass,
    AllWrong,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Experiment settings; anything unset falls back to the descriptor defaults.
#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Bands per variable.
    #[arg(long)]
    pub bands: Option<usize>,
    #[arg(long, value_enum)]
    pub boundaries: Option<BoundaryArg>,
    #[arg(long, value_enum)]
    pub policy: Option<PolicyArg>,
    /// Signed per-category adjustments for --policy adjusted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub adjustments: Option<Vec<i64>>,
    /// Final per-category denominators for --policy adjusted.
    #[arg(long, value_delimiter = ',', conflicts_with = "adjustments")]
    pub denominators: Option<Vec<u64>>,
    /// Per-category increments for --policy manual.
    #[arg(long, value_delimiter = ',')]
    pub ow: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    pub scoring: Option<ScoringArg>,
}

/// Experimental post-training adjustment of output weights.
#[derive(Debug, Args)]
pub struct AdjustArgs {
    /// Run the adjustment phase on the training rows after training.
    #[arg(long)]
    pub adjust: bool,
    #[arg(long, default_value_t = 0.01, requires = "adjust")]
    pub eta: f64,
    #[arg(long, default_value_t = 1, requires = "adjust")]
    pub epochs: usize,
    #[arg(long, default_value_t = 0.0, requires = "adjust")]
    pub floor: f64,
    #[arg(long, value_enum, default_value = "dominant", requires = "adjust")]
    pub adjust_mode: AdjustModeArg,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,
    #[command(flatten)]
    pub experiment: ExperimentArgs,
    #[command(flatten)]
    pub adjust: AdjustArgs,
    /// Model file to write.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Replace an existing model file.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Saved model; without it a model is trained from the flags below.
    #[arg(long)]
    pub model: Option<PathBuf>,
    #[command(flatten)]
    pub dataset: OptionalDatasetArgs,
    #[command(flatten)]
    pub experiment: ExperimentArgs,
    #[command(flatten)]
    pub adjust: AdjustArgs,
    /// Include per-row predictions in JSON output.
    #[arg(long)]
    pub predictions: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub dataset: DatasetArgs,
    /// Band counts, e.g. `5..20`, `5..=20`, `2,4,8` or `2,5-9`.
    #[arg(long = "range", value_name = "SPEC")]
    pub range: String,
    #[command(flatten)]
    pub experiment: ExperimentArgs,
    /// Skip configurations with more than this many cells (variables x bands).
    #[arg(long, default_value_t = bandgrid_core::DEFAULT_CELL_CAP)]
    pub cell_cap: u64,
    /// Also write band count vs accuracy as CSV to this file.
    #[arg(long)]
    pub plot_data: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Only this variable (1-based index or column name).
    #[arg(long)]
    pub variable: Option<String>,
    /// Decimal places in text output.
    #[arg(long, default_value_t = 3)]
    pub decimals: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Only these targets (key or dataset name); repeatable.
    #[arg(long = "only")]
    pub only: Vec<String>,
    /// Exit with status 5 when any row fails or errors.
    #[arg(long)]
    pub strict: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}
