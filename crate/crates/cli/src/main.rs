//! `exclab`: verification suites, bound tables, Monte-Carlo simulation and
//! the exhaustive oracle for the exclusion game.
//!
//! Exit status: 0 on success, 1 when a checked invariant fails, 2 on usage
//! or resource errors.

mod commands;
mod output;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::parser::ValueSource;
use clap::{CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use commands::{BoundsArgs, ChooseKArgs, OracleArgs, SimulateArgs, SteeringArgs, VerifyPbrArgs};

#[derive(Parser, Debug)]
#[command(name = "exclab", version, about = "Exclusion-game experiments")]
struct Cli {
    /// Run the experiment described by a JSON spec file instead of a subcommand.
    #[arg(long, global = true)]
    spec: Option<PathBuf>,

    /// Output file (default: stdout).
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Output format; CSV is available for `bounds` only.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Random seed; an explicit flag beats a spec file's seed, which beats
    /// EXCLAB_SEED.
    #[arg(long, global = true, env = "EXCLAB_SEED", default_value_t = 0)]
    seed: u64,

    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug, Deserialize)]
#[serde(tag = "command", content = "parameters", rename_all = "kebab-case")]
enum Command {
    /// Check the exclusion measurement for m = 1..=m_max.
    VerifyPbr(VerifyPbrArgs),
    /// Tabulate classical and quantum information-cost bounds.
    Bounds(BoundsArgs),
    /// Monte-Carlo runs of a strategy.
    Simulate(SimulateArgs),
    /// Exhaustive minimal-exclusion search for small (n, m).
    Oracle(OracleArgs),
    /// Exactness report for the steering measurements.
    Steering(SteeringArgs),
    /// Number of shared blocks for abort budget δ at m = αn.
    ChooseK(ChooseKArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Batch description read by `--spec`:
/// `{"command": ..., "parameters": {...}, "output": {...}, "seed": ...}`.
#[derive(Debug)]
struct ExperimentSpec {
    command: Command,
    output: OutputSpec,
    seed: Option<u64>,
}

const SPEC_KEYS: [&str; 4] = ["command", "parameters", "output", "seed"];

impl ExperimentSpec {
    fn from_json(text: &str) -> Result<Self, String> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let serde_json::Value::Object(mut map) = value else {
            return Err("spec must be a JSON object".into());
        };
        if let Some(key) = map.keys().find(|k| !SPEC_KEYS.contains(&k.as_str())) {
            return Err(format!(
                "unknown field `{key}`, expected one of {}",
                SPEC_KEYS.join(", ")
            ));
        }
        let tagged = serde_json::json!({
            "command": map.remove("command").ok_or("missing field `command`")?,
            "parameters": map.remove("parameters").unwrap_or_else(|| serde_json::json!({})),
        });
        let command = serde_json::from_value(tagged).map_err(|e| e.to_string())?;
        let output = match map.remove("output") {
            Some(v) => serde_json::from_value(v).map_err(|e| format!("output: {e}"))?,
            None => OutputSpec::default(),
        };
        let seed = match map.remove("seed") {
            Some(v) => Some(serde_json::from_value(v).map_err(|e| format!("seed: {e}"))?),
            None => None,
        };
        Ok(ExperimentSpec {
            command,
            output,
            seed,
        })
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputSpec {
    path: Option<PathBuf>,
    format: Option<Format>,
}

/// Failure categories mapped onto exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Invariant(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) => write!(f, "error: {msg}"),
            Failure::Invariant(msg) => write!(f, "invariant violated: {msg}"),
        }
    }
}

impl From<exclab_core::Error> for Failure {
    fn from(e: exclab_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("i/o: {e}"))
    }
}

/// Everything a command needs besides its own arguments.
pub struct Context {
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: u64,
}

fn load_spec(path: &PathBuf) -> Result<ExperimentSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    ExperimentSpec::from_json(&text)
        .map_err(|e| Failure::Usage(format!("invalid spec {}: {e}", path.display())))
}

fn run(cli: Cli, seed_from_flag: bool) -> Result<(), Failure> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(Failure::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let (command, ctx) = match (cli.spec, cli.command) {
        (Some(_), Some(_)) => {
            return Err(Failure::Usage(
                "--spec and a subcommand are mutually exclusive".into(),
            ))
        }
        (None, None) => return Err(Failure::Usage("no command given (see --help)".into())),
        (None, Some(command)) => (
            command,
            Context {
                output: cli.output,
                format: cli.format,
                seed: cli.seed,
            },
        ),
        (Some(path), None) => {
            let spec = load_spec(&path)?;
            // flags given next to --spec take precedence
            let seed = match spec.seed {
                Some(s) if !seed_from_flag => s,
                _ => cli.seed,
            };
            let ctx = Context {
                output: cli.output.or(spec.output.path),
                format: cli.format.or(spec.output.format),
                seed,
            };
            (spec.command, ctx)
        }
    };
    match command {
        Command::VerifyPbr(args) => commands::verify_pbr(&args, &ctx),
        Command::Bounds(args) => commands::bounds(&args, &ctx),
        Command::Simulate(args) => commands::simulate(&args, &ctx),
        Command::Oracle(args) => commands::oracle(&args, &ctx),
        Command::Steering(args) => commands::steering(&args, &ctx),
        Command::ChooseK(args) => commands::choose_k(&args, &ctx),
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Invariant(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = Cli::from_arg_matches(&matches).unwrap_or_else(|e| e.exit());
    let seed_from_flag = matches.value_source("seed") == Some(ValueSource::CommandLine)
        || matches
            .subcommand()
            .is_some_and(|(_, sub)| sub.value_source("seed") == Some(ValueSource::CommandLine));
    match run(cli, seed_from_flag) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
