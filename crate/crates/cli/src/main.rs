//! `tropcsm`: JSON-in, JSON-out front end to the `tropcsm` library.
//!
//! Exit codes: 0 when every checked identity holds, 1 when one fails or a
//! computation gives up, 2 for usage and input errors.

mod commands;
mod paperchecks;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use commands::TriangulationSource;
use report::{CliError, Outcome, RunReport, SCHEMA};

/// Seed used by randomized checks when `--seed` is not given.
const DEFAULT_SEED: u64 = 20240917;

#[derive(Parser)]
#[command(name = "tropcsm", version, about = "Exact CSM cycles of matroid fans and related tropical checks")]
struct Cli {
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Add the wall-clock time to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Matroid invariants.
    #[command(subcommand)]
    Matroid(MatroidCmd),
    /// Bergman fans.
    #[command(subcommand)]
    Bergman(BergmanCmd),
    /// CSM cycles.
    #[command(subcommand)]
    Csm(CsmCmd),
    /// Weighted-fan calculus.
    #[command(subcommand)]
    Fan(FanCmd),
    /// Noether's formula for lattice 3-polytopes.
    #[command(subcommand)]
    Noether(NoetherCmd),
    /// Reproduce every published example value and counterexample.
    Paperchecks,
}

#[derive(Subcommand)]
enum MatroidCmd {
    /// Flats, characteristic polynomials and the beta invariant.
    Info { file: PathBuf },
}

#[derive(Subcommand)]
enum BergmanCmd {
    /// The Bergman fan as fan JSON, with chain annotations.
    Build { file: PathBuf },
}

#[derive(Subcommand)]
enum CsmCmd {
    /// `csm_k` for one `k`, or all of them, with the per-cone weight ledger.
    Compute {
        file: PathBuf,
        #[arg(short = 'k')]
        k: Option<usize>,
    },
    /// Chain weights against the ψ route, balancing, GL-invariance and the degree law.
    Verify {
        file: PathBuf,
        /// Random unimodular transforms for the GL-invariance check.
        #[arg(long, default_value_t = 20)]
        transforms: usize,
    },
}

#[derive(Subcommand)]
enum FanCmd {
    /// Check the balancing condition.
    Balance { file: PathBuf },
    /// Stable intersection of two fans.
    Intersect {
        first: PathBuf,
        second: PathBuf,
        /// Displacements tried before reporting a genericity failure.
        #[arg(long, default_value_t = 64)]
        max_attempts: usize,
    },
    /// Recession fan of a polyhedral cycle.
    Recession { file: PathBuf },
}

#[derive(Subcommand)]
enum NoetherCmd {
    /// Both sides of Noether's formula, optionally also via a triangulation census.
    Check {
        polytope: PathBuf,
        #[command(flatten)]
        triangulation: TriangulationArgs,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct TriangulationArgs {
    /// A unimodular triangulation `{"points": …, "tets": …}`.
    #[arg(long)]
    triangulation: Option<PathBuf>,
    /// Use the built-in staircase triangulation (dilated simplices and boxes).
    #[arg(long)]
    staircase: bool,
}

fn dispatch(cli: &Cli) -> Result<(String, Outcome), CliError> {
    use Command::*;
    Ok(match &cli.command {
        Matroid(MatroidCmd::Info { file }) => ("matroid info".into(), commands::matroid_info(file)?),
        Bergman(BergmanCmd::Build { file }) => ("bergman build".into(), commands::bergman_build(file)?),
        Csm(CsmCmd::Compute { file, k }) => ("csm compute".into(), commands::csm_compute(file, *k)?),
        Csm(CsmCmd::Verify { file, transforms }) => {
            ("csm verify".into(), commands::csm_verify(file, cli.seed, *transforms)?)
        }
        Fan(FanCmd::Balance { file }) => ("fan balance".into(), commands::fan_balance(file)?),
        Fan(FanCmd::Intersect { first, second, max_attempts }) => {
            ("fan intersect".into(), commands::fan_intersect(first, second, *max_attempts)?)
        }
        Fan(FanCmd::Recession { file }) => ("fan recession".into(), commands::fan_recession(file)?),
        Noether(NoetherCmd::Check { polytope, triangulation }) => {
            let source = match (&triangulation.triangulation, triangulation.staircase) {
                (Some(t), _) => TriangulationSource::File(t),
                (None, true) => TriangulationSource::Staircase,
                (None, false) => TriangulationSource::None,
            };
            ("noether check".into(), commands::noether(polytope, source)?)
        }
        Paperchecks => ("paperchecks".into(), paperchecks::run()),
    })
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Usage(e.render().to_string().trim_end().to_string())),
    };
    let start = Instant::now();
    let (command, outcome) = match dispatch(&cli) {
        Ok(v) => v,
        Err(e) => return fail(&e),
    };
    let report = RunReport {
        schema: SCHEMA,
        command,
        inputs: outcome.inputs,
        results: outcome.results,
        verdict: outcome.verdict,
        wall_time_ms: cli.timing.then(|| start.elapsed().as_secs_f64() * 1000.0),
    };
    println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    ExitCode::from(outcome.verdict.exit_code())
}
