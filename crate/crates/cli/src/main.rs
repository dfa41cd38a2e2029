use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod config;

use config::RunConfig;

#[derive(Parser, Debug)]
#[command(name = "trusskit", version, about = "Heaps, trusses and their ring extensions on finite carriers")]
struct Cli {
    /// JSON file with default values for any of the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "TRUSSKIT_THREADS")]
    threads: Option<usize>,

    /// Recorded in reports; runs are deterministic for a fixed seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Largest bimultiplication search (|End|²) attempted.
    #[arg(long, global = true)]
    omega_limit: Option<u128>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify rings or trusses on a group.
    Classify(ClassifyArgs),
    /// Build T(e), Tᶜ(e) or normal forms of words, with a smallness report.
    Extend(ExtendArgs),
    /// Compare the extensions of two homothetic data.
    Equiv(EquivArgs),
    /// Check a ring, truss or datum file.
    Validate(ValidateArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Print a catalog ring on Z_p x Z_p.
    Ring(RingArgs),
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Group orders, e.g. "2,2".
    #[arg(long)]
    pub group: String,
    /// Trusses with zero-multiplication retract only.
    #[arg(long, conflicts_with_all = ["trivial_ann", "rings", "ring"])]
    pub zero_mult: bool,
    /// Homothetic trusses over a catalog ring with trivial annihilator.
    #[arg(long, value_name = "RING-TOKEN")]
    pub trivial_ann: Option<String>,
    /// Ring classes instead of trusses.
    #[arg(long)]
    pub rings: bool,
    /// Homothetic trusses over one catalog ring, by truss isomorphism.
    #[arg(long, value_name = "RING-TOKEN")]
    pub ring: Option<String>,
    /// Output path; the extension (.json, .csv, .md) picks the format.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Split the truss search into this many shards.
    #[arg(long)]
    pub shards: Option<usize>,
    /// Directory holding per-shard results, reused by later runs.
    #[arg(long)]
    pub checkpoint_dir: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Integral,
    Cyclic,
    Words,
}

#[derive(Args, Debug)]
pub struct ExtendArgs {
    #[arg(long)]
    pub truss: PathBuf,
    /// Base element as a tuple, e.g. "[1,0]".
    #[arg(long)]
    pub elem: String,
    #[arg(long, value_enum, default_value = "integral")]
    pub mode: Mode,
    /// Words to normalize in words mode; letters are "0", tuples, or "e".
    #[arg(long = "word")]
    pub words: Vec<String>,
    /// Also search quotients of Tᶜ(e) for a minimal extension.
    #[arg(long)]
    pub minimal_search: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EquivArgs {
    /// Two datum files.
    #[arg(long = "datum", num_args = 1, required = true)]
    pub data: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct ValidateArgs {
    #[arg(long)]
    pub truss: Option<PathBuf>,
    #[arg(long)]
    pub ring: Option<PathBuf>,
    #[arg(long)]
    pub datum: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite id.
    pub suite: String,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub side: Option<String>,
    /// Largest q checked for ideals q·rZ of the integer trusses.
    #[arg(long)]
    pub integer_bound: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct RingArgs {
    pub token: String,
    #[arg(long, default_value_t = 2)]
    pub p: u64,
    /// Print T(R) instead of R.
    #[arg(long)]
    pub truss: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match RunConfig::load(cli.config.as_deref()).and_then(|c| c.overlay(cli.threads, cli.seed, cli.omega_limit)) {
        Ok(c) => c,
        Err(e) => return commands::report_failure(&e),
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.unwrap_or(0))
        .build_global()
    {
        eprintln!("warning: could not size the worker pool: {e}");
    }
    let result = match &cli.command {
        Command::Classify(a) => commands::classify(&cfg, a),
        Command::Extend(a) => commands::extend(&cfg, a),
        Command::Equiv(a) => commands::equiv(&cfg, a),
        Command::Validate(a) => commands::validate(a),
        Command::Verify(a) => commands::verify(&cfg, a),
        Command::Ring(a) => commands::ring(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => commands::report_failure(&e),
    }
}
