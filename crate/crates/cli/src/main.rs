mod commands;
mod input;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use input::Source;
use report::{CliError, Outcome};

/// Exact checks on plane quartics, their bitangents and quartic-line curves.
#[derive(Parser, Debug)]
#[command(name = "quartica", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct InputArgs {
    /// Built-in curve or table name (see `quartica list`).
    #[arg(long, group = "source")]
    pub builtin: Option<String>,
    /// JSON file holding a curve, a line list, or a weak combinatorics vector.
    #[arg(long, group = "source")]
    pub input: Option<std::path::PathBuf>,
    /// Inline JSON list of lines over Q.
    #[arg(long, group = "source")]
    pub lines: Option<String>,
    /// Ciani quartic with the given rational parameter.
    #[arg(long, group = "source", allow_hyphen_values = true)]
    pub ciani: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct OutputArgs {
    /// Print the run report as JSON.
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    /// Print the incidence table as CSV.
    #[arg(long)]
    pub csv: bool,
    /// Include wall-clock timing (makes the report non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intersection points of a line arrangement and its incidence table.
    Incidence {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Keep only points of this multiplicity.
        #[arg(long)]
        filter: Option<usize>,
    },
    /// Checks that every line of the input is bitangent to its quartic.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Total Tjurina number, minimal resolution and class of the curve.
    Milnor {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Hirzebruch-type inequality on a curve or an explicit weak combinatorics.
    Hirzebruch {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Numerical search for the 28 bitangents of a quartic.
    FindBitangents {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Exact table to match the numeric lines against.
        #[arg(long = "match")]
        match_table: Option<String>,
    },
    /// Prints the input curve as canonical JSON.
    Export {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Lists the built-in names.
    List,
}

fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("QUARTICA_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Input(format!("QUARTICA_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Input(e.to_string()))
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let (output, mut outcome) = match cli.command {
        Command::Incidence { input, output, filter } => (output, commands::incidence(&Source::from_args(&input)?, filter)?),
        Command::Verify { input, output } => (output, commands::verify(&Source::from_args(&input)?)?),
        Command::Milnor { input, output } => (output, commands::milnor(&Source::from_args(&input)?)?),
        Command::Hirzebruch { input, output } => (output, commands::hirzebruch(&Source::from_args(&input)?)?),
        Command::FindBitangents {
            input,
            output,
            tol,
            match_table,
        } => (
            output,
            commands::find_bitangents(&Source::from_args(&input)?, tol, match_table.as_deref())?,
        ),
        Command::Export { input } => return commands::export(&Source::from_args(&input)?),
        Command::List => return Ok(commands::list()),
    };
    if output.timing {
        outcome.report.set_timing(start.elapsed());
    }
    outcome.format = report::Format::from_flags(output.json, output.csv);
    Ok(outcome)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = quartica_core::catalog::check_field_identities() {
        eprintln!("error: built-in field identities failed: {e}");
        return ExitCode::from(1);
    }
    let result = init_threads().and_then(|()| run(cli));
    match result {
        Ok(outcome) => {
            print!("{}", outcome.render());
            ExitCode::from(if outcome.report.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
