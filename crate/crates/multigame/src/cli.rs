//! The `multigame` command line.
//!
//! Four subcommands: `run` executes a tournament JSON and writes its
//! dataset, `validate` checks a document and reports every problem found,
//! `list` prints the supported games and strategies, and `summary` reads a
//! `records.csv` back and aggregates it.
//!
//! Exit codes: 0 on success, 1 when the input is invalid (bad arguments,
//! bad configuration, malformed dataset), 2 when a run or the filesystem
//! fails.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use crate::config::parse_tournament_spec;
use crate::engine::{run_tournament, TournamentPlan};
use crate::stats::{finalize_dataset, read_records_csv, summarize};
use crate::{games, strategies};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_RUNTIME: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "multigame",
    version,
    about = "Deterministic tournaments: one agent population, many games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Subcommand)]
enum Command {
    /// Run a tournament plan and write records.csv / trace.jsonl.
    Run {
        /// Path to the tournament JSON.
        #[arg(long)]
        config: PathBuf,
        /// Override the plan's seed (and with it the tournament id).
        #[arg(long)]
        seed: Option<u64>,
        /// Override the plan's output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse and validate a tournament plan, reporting every problem.
    Validate {
        /// Path to the tournament JSON.
        #[arg(long)]
        config: PathBuf,
    },
    /// List supported game types and strategies.
    List,
    /// Aggregate a records.csv into per-agent and per-strategy figures.
    Summary {
        /// A records.csv, or a directory containing one.
        #[arg(long = "in")]
        input: PathBuf,
    },
}

/// Entry point for the `multigame` binary.
pub fn main() -> ExitCode {
    let code = run_from(
        std::env::args().skip(1),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code)
}

/// Run the CLI against explicit arguments (without the program name) and
/// explicit output streams; returns the exit code. This is `main` minus
/// the process plumbing, so tests can drive it directly.
pub fn run_from(
    args: impl IntoIterator<Item = String>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> u8 {
    let argv = std::iter::once("multigame".to_owned()).chain(args);
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(parse_err) => {
            return match parse_err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{parse_err}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{parse_err}");
                    EXIT_INVALID
                }
            };
        }
    };
    match cli.command {
        Command::Run {
            config,
            seed,
            out: out_dir,
        } => cmd_run(&config, seed, out_dir, out, err),
        Command::Validate { config } => cmd_validate(&config, out, err),
        Command::List => cmd_list(out),
        Command::Summary { input } => cmd_summary(&input, out, err),
    }
}

fn load_plan(path: &Path, err: &mut dyn Write) -> Result<TournamentPlan, u8> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(io_err) => {
            let _ = writeln!(err, "cannot read {}: {io_err}", path.display());
            return Err(EXIT_RUNTIME);
        }
    };
    parse_tournament_spec(&text).map_err(|config_err| {
        let _ = writeln!(err, "{}: {config_err}", path.display());
        EXIT_INVALID
    })
}

fn cmd_run(
    config: &Path,
    seed: Option<u64>,
    out_dir: Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> u8 {
    let mut plan = match load_plan(config, err) {
        Ok(plan) => plan,
        Err(code) => return code,
    };
    if let Some(seed) = seed {
        plan.seed = seed;
    }
    if let Some(dir) = out_dir {
        plan.output.dir = dir;
    }

    let artifacts = match run_tournament(&plan) {
        Ok(artifacts) => artifacts,
        Err(engine_err) => {
            let _ = writeln!(err, "run failed: {engine_err}");
            return EXIT_RUNTIME;
        }
    };
    let paths = match finalize_dataset(
        &artifacts.records,
        &artifacts.trace,
        &plan.output.dir,
        plan.output.summary,
    ) {
        Ok(paths) => paths,
        Err(stats_err) => {
            let _ = writeln!(err, "cannot write dataset: {stats_err}");
            return EXIT_RUNTIME;
        }
    };

    let _ = writeln!(
        out,
        "tournament {}: {} game(s), {} agent(s), {} record(s)",
        artifacts.tournament_id,
        plan.games.len(),
        artifacts.population.len(),
        artifacts.records.len(),
    );
    let _ = writeln!(out, "records: {}", paths.records.display());
    let _ = writeln!(out, "trace: {}", paths.trace.display());
    if let Some(summary) = &paths.summary {
        let _ = writeln!(out, "summary: {}", summary.display());
    }
    EXIT_OK
}

fn cmd_validate(config: &Path, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match load_plan(config, err) {
        Ok(plan) => {
            let agents: usize = plan.population.iter().map(|g| g.count).sum();
            let _ = writeln!(
                out,
                "ok: seed {}, {} agent(s) in {} group(s), {} game(s)",
                plan.seed,
                agents,
                plan.population.len(),
                plan.games.len(),
            );
            EXIT_OK
        }
        Err(code) => code,
    }
}

fn cmd_list(out: &mut dyn Write) -> u8 {
    let _ = writeln!(out, "games:");
    for d in games::descriptors() {
        let _ = writeln!(
            out,
            "  {:<6}players {}; choices {}; identity {}",
            d.game_type.to_string(),
            d.players,
            d.choices,
            d.identity,
        );
        let _ = writeln!(out, "        {}", d.notes);
    }
    let _ = writeln!(out, "strategies:");
    for d in strategies::descriptors() {
        let _ = writeln!(out, "  {:<12}{}", d.name, d.applicability);
        if d.params.is_empty() {
            let _ = writeln!(out, "              no parameters");
        } else {
            let params: Vec<String> = d
                .params
                .iter()
                .map(|p| format!("{} ({})", p.name, p.bounds))
                .collect();
            let _ = writeln!(out, "              params: {}", params.join(", "));
        }
    }
    EXIT_OK
}

fn cmd_summary(input: &Path, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let path = if input.is_dir() {
        input.join("records.csv")
    } else {
        input.to_owned()
    };
    let text = match fs::read_to_string(&path) {
        Ok(text) => text,
        Err(io_err) => {
            let _ = writeln!(err, "cannot read {}: {io_err}", path.display());
            return EXIT_RUNTIME;
        }
    };
    match read_records_csv(&text) {
        Ok(records) => {
            let _ = write!(out, "{}", summarize(&records));
            EXIT_OK
        }
        Err(stats_err) => {
            let _ = writeln!(err, "{}: {stats_err}", path.display());
            EXIT_INVALID
        }
    }
}
