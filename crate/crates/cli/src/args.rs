use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "msa-decide",
    version,
    about = "Microservice decomposition decision model: validate, recommend, compare"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ModelArg {
    /// Knowledge base file (.dmkb.json); the built-in model when absent.
    #[arg(env = "MSA_DECIDE_MODEL")]
    pub model: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a knowledge base for structural errors.
    Validate {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        json: bool,
    },
    /// Rank the eligible patterns for weights and context facts.
    Recommend {
        #[command(flatten)]
        model: ModelArg,
        /// QA weight, `qa=value` (repeatable).
        #[arg(long = "weight", value_name = "QA=VALUE")]
        weights: Vec<String>,
        /// Context fact, `name=value` (repeatable).
        #[arg(long = "fact", value_name = "NAME=VALUE")]
        facts: Vec<String>,
        /// Requirements file; flags override its entries.
        #[arg(long = "req", value_name = "FILE")]
        req: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Print the pattern by QA trade-off matrix.
    Matrix {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Text)]
        format: MatrixFormat,
    },
    /// Compare the rankings of two requirements files.
    Whatif {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, value_name = "FILE")]
        base: PathBuf,
        #[arg(long, value_name = "FILE")]
        variant: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write the decision graph in Graphviz DOT.
    ExportDot {
        #[command(flatten)]
        model: ModelArg,
    },
    /// Run the HTTP API over the model.
    Serve {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        bind: std::net::IpAddr,
        /// Origin allowed to call the API from a browser (repeatable; `*` for any).
        #[arg(long = "allow-origin", value_name = "ORIGIN")]
        allow_origin: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    Text,
    Csv,
    Json,
}
