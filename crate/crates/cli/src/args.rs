use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "entlab",
    version,
    about = "Entanglement under local channels: experiments and checks"
)]
pub struct Cli {
    /// Seed for every random ensemble.
    #[arg(long, env = "ENTLAB_SEED", default_value_t = 0, global = true)]
    pub seed: u64,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Input/output concurrence rows for the Werner and Schmidt families.
    Diagram {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, value_delimiter = ',', default_value = "werner,schmidt")]
        families: Vec<FamilyArg>,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// Leave out the Choi-bound and diagonal reference lines.
        #[arg(long)]
        no_reference: bool,
    },
    /// Compare outputs of random inputs against the Choi-state bound.
    TheoremCheck {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = EnsembleArg::Mixed)]
        ensemble: EnsembleArg,
    },
    /// Spread of the concurrence over images of random maximally entangled states.
    IsoCheck {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Depolarized Werner/Schmidt pair and the full closed-form grids.
    Example1 {
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long, default_value_t = 101)]
        grid: usize,
    },
    /// Four-qubit contraction counterexample with log-negativity.
    Example2 {
        #[arg(long, default_value_t = 0.8)]
        alpha2: f64,
        /// Basis state the contracted qubit is reset to.
        #[arg(long, default_value_t = 0)]
        target: usize,
    },
    /// Search for a pair of states whose order the channel reverses.
    InvertSearch {
        #[command(flatten)]
        channel: ChannelArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Families)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1e-3)]
        delta: f64,
        /// Grid size in families mode, number of pairs in random mode.
        #[arg(long, default_value_t = 2001)]
        samples: usize,
    },
    /// Check a channel and summarize its Choi state.
    ValidateChannel {
        #[command(flatten)]
        channel: ChannelArgs,
    },
}

#[derive(Debug, Args)]
pub struct ChannelArgs {
    #[arg(long, value_enum, conflicts_with = "channel_file")]
    pub channel: Option<ChannelKind>,
    /// Depolarizing parameter p in [0, 1].
    #[arg(long)]
    pub param: Option<f64>,
    #[arg(long, value_enum)]
    pub gate: Option<Gate>,
    /// Basis index of the contraction target.
    #[arg(long)]
    pub target: Option<usize>,
    /// Kraus operators in the JSON channel format.
    #[arg(long)]
    pub channel_file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChannelKind {
    Depolarizing,
    Unitary,
    Contraction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Gate {
    #[value(name = "I")]
    I,
    #[value(name = "X")]
    X,
    #[value(name = "Y")]
    Y,
    #[value(name = "Z")]
    Z,
    #[value(name = "H")]
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Werner,
    Schmidt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnsembleArg {
    Mixed,
    Pure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Families,
    Random,
}
