use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Score model-agnostic XAI methods against the explanation requirements of
/// legal provisions.
#[derive(Debug, Parser)]
#[command(name = "xaiact", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check method catalogs and regulation sets (the built-in dataset when no paths are given)
    Validate {
        paths: Vec<PathBuf>,
        /// Treat warnings, such as unreported scores, as failures
        #[arg(long)]
        strict: bool,
    },
    /// Rank admissible methods for one provision
    Rank {
        /// Regulation id, e.g. art86
        regulation: String,
        /// faithfulness, robustness, complexity or overall
        #[arg(default_value = "overall")]
        target: String,
        /// Keep the best k entries plus any entries tied with the k-th
        #[arg(long)]
        top: Option<usize>,
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Full compliance matrix, inadmissible methods included
    Score {
        /// Restrict to one regulation id
        #[arg(long)]
        regulation: Option<String>,
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Sweep a uniform shift of all strength factors and report stability
    Sensitivity {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = -0.2, allow_negative_numbers = true)]
        delta_min: f64,
        #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
        delta_max: f64,
        #[arg(long, default_value_t = 41)]
        steps: usize,
        /// Write the sweep CSV here and the summary to stdout; otherwise the
        /// CSV goes to stdout and the summary to stderr
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the reference top-3 table and diff it cell by cell
    Reproduce {
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Print one of the built-in documents in canonical form
    ExportBuiltin {
        #[arg(value_enum)]
        kind: DocumentKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct Inputs {
    /// Method catalog (default: built-in)
    #[arg(long)]
    pub methods: Option<PathBuf>,
    /// Regulation set (default: built-in)
    #[arg(long)]
    pub regulations: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Records,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DocumentKind {
    Methods,
    Regulations,
}
