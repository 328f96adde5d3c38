mod error;
mod expr;
mod output;
mod scenario;
mod solve;
mod table;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use slet_core::{Branch, QuantumNumbers};

use error::CliError;
use scenario::{Format, Mode, Problem, Scenario};

/// Default agreement tolerance between exact methods.
const DEFAULT_TOL: f64 = 1e-8;

#[derive(Parser)]
#[command(
    name = "kg-slet",
    version,
    about = "Klein-Gordon bound states by the shifted-l expansion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one or more states of a single potential pair.
    Solve(SolveArgs),
    /// Reproduce a Coulomb plus linear ground-state table.
    Table(TableArgs),
    /// Compare the expansion with closed forms, the shooting oracle and reference tables.
    Verify(VerifyArgs),
}

#[derive(Args, Default)]
struct ProblemArgs {
    /// TOML scenario file; flags given on the command line override it.
    #[arg(long)]
    scenario: Option<PathBuf>,
    #[arg(long)]
    mass: Option<f64>,
    /// Lorentz-vector potential, e.g. "-0.2/r + 0.05r".
    #[arg(long, allow_hyphen_values = true)]
    vector: Option<String>,
    /// Lorentz-scalar potential, same syntax as --vector.
    #[arg(long, allow_hyphen_values = true)]
    scalar: Option<String>,
    /// Radial quantum number.
    #[arg(long)]
    nr: Option<u32>,
    /// Orbital quantum number.
    #[arg(long)]
    l: Option<u32>,
    #[arg(long, value_parser = parse_branch)]
    branch: Option<Branch>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Agreement tolerance (relative) between exact methods.
    #[arg(long)]
    tol: Option<f64>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct TableArgs {
    /// Built-in table 1 to 4.
    #[arg(
        value_parser = clap::value_parser!(u8).range(1..=4),
        required_unless_present = "scenario",
        conflicts_with = "scenario"
    )]
    table: Option<u8>,
    /// TOML scenario with `linear` and `[[rows]]`.
    #[arg(long)]
    scenario: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[command(flatten)]
    output: OutputArgs,
}

fn parse_branch(text: &str) -> Result<Branch, String> {
    match text {
        "particle" => Ok(Branch::Particle),
        "antiparticle" => Ok(Branch::Antiparticle),
        other => Err(format!("expected particle or antiparticle, got `{other}`")),
    }
}

fn load(path: Option<&Path>) -> Result<Scenario, CliError> {
    path.map_or_else(|| Ok(Scenario::default()), Scenario::load)
}

fn resolve_problem(args: &ProblemArgs, scenario: &Scenario) -> Result<Problem, CliError> {
    let states = if args.nr.is_some() || args.l.is_some() {
        vec![QuantumNumbers::new(
            args.nr.unwrap_or(0),
            args.l.unwrap_or(0),
        )]
    } else if !scenario.states.is_empty() {
        scenario.states.iter().map(|&s| s.into()).collect()
    } else if args.scenario.is_some() && scenario.rows.is_empty() {
        return Err(CliError::Usage(
            "scenario lists no [[states]] and no --nr/--l was given".into(),
        ));
    } else {
        vec![QuantumNumbers::ground()]
    };
    Problem::build(
        args.mass.or(scenario.mass).unwrap_or(1.0),
        args.vector
            .as_deref()
            .or(scenario.vector.as_deref())
            .unwrap_or("0"),
        args.scalar
            .as_deref()
            .or(scenario.scalar.as_deref())
            .unwrap_or("0"),
        args.branch.or(scenario.branch).unwrap_or_default(),
        states,
    )
}

fn tolerance(output: &OutputArgs, scenario: &Scenario) -> Result<f64, CliError> {
    let tol = output.tol.or(scenario.tol).unwrap_or(DEFAULT_TOL);
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(CliError::Usage(format!(
            "--tol must be positive and finite, got {tol}"
        )))
    }
}

fn run_solve(args: &SolveArgs) -> Result<(), CliError> {
    let scenario = load(args.problem.scenario.as_deref())?;
    let problem = resolve_problem(&args.problem, &scenario)?;
    let mode = args.mode.or(scenario.mode).unwrap_or_default();
    let format = args
        .output
        .format
        .or(scenario.format)
        .unwrap_or(Format::Json);
    let text = solve::run(&problem, mode, format, tolerance(&args.output, &scenario)?)?;
    output::emit(&text, args.output.out.as_deref())
}

fn run_table(args: &TableArgs) -> Result<(), CliError> {
    let scenario = load(args.scenario.as_deref())?;
    let format = args
        .output
        .format
        .or(scenario.format)
        .unwrap_or(Format::Csv);
    let source = match args.table {
        Some(id) => table::Source::Builtin(id),
        None => table::Source::Scenario(&scenario),
    };
    let (rows, failed) = table::compute(source)?;
    output::emit(&table::render(&rows, format)?, args.output.out.as_deref())?;
    if failed > 0 {
        eprintln!("{failed} row(s) failed; see the ERROR entries");
        return Err(CliError::Verification(failed));
    }
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let p = &args.problem;
    let scenario = load(p.scenario.as_deref())?;
    let tol = tolerance(&args.output, &scenario)?;
    let custom = p.scenario.is_some() || p.vector.is_some() || p.scalar.is_some();
    let report = if custom {
        let problem = resolve_problem(p, &scenario)?;
        verify::run(verify::Suite::Problem(&problem, &scenario), tol)?
    } else {
        verify::run(verify::Suite::Builtin, tol)?
    };
    let format = args
        .output
        .format
        .or(scenario.format)
        .unwrap_or(Format::Table);
    output::emit(
        &verify::render(&report, format)?,
        args.output.out.as_deref(),
    )?;
    match report.summary.fail {
        0 => Ok(()),
        n => Err(CliError::Verification(n)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Table(args) => run_table(args),
        Command::Verify(args) => run_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
