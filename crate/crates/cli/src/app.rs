use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use qt_core::oracle::DEFAULT_BUDGET;
use qt_core::DimensionVector;

use crate::commands::{
    cmd_oracle_census, cmd_strata, cmd_sweep, cmd_verdict, DEFAULT_SWEEP_LIMIT, EXIT_FAILURE,
    EXIT_INPUT,
};
use crate::error::CliError;
use crate::problem::parse_problem;
use crate::table::Format;

#[derive(Debug, Parser)]
#[command(
    name = "qt",
    version,
    about = "Harder-Narasimhan strata and Teleman weights for quiver moduli"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Txt,
    Csv,
    Md,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SweepOut {
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of unstable Harder-Narasimhan strata with their weights.
    Strata {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "txt")]
        format: FormatArg,
    },
    /// Vanishing and rigidity certificates. Exit code 0 rigid, 10 vanishing only, 20 neither.
    Verdict { file: PathBuf },
    /// Flags for every 0 < d <= dmax with the canonical stability parameter.
    Sweep {
        /// Problem file supplying the quiver; its d and theta are ignored.
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        dmax: Vec<u32>,
        #[arg(long, value_enum, default_value = "csv")]
        out: SweepOut,
        /// Maximum number of dimension vectors visited.
        #[arg(long, default_value_t = DEFAULT_SWEEP_LIMIT)]
        limit: u128,
    },
    /// Brute-force HN census over a finite field (debugging aid).
    OracleCensus {
        file: PathBuf,
        #[arg(long)]
        field: u32,
    },
}

impl From<FormatArg> for Format {
    fn from(arg: FormatArg) -> Self {
        match arg {
            FormatArg::Txt => Format::Txt,
            FormatArg::Csv => Format::Csv,
            FormatArg::Md => Format::Md,
        }
    }
}

fn env_number<T: std::str::FromStr>(name: &str) -> Result<Option<T>, CliError> {
    match std::env::var(name) {
        Ok(value) => value
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("{name}={value:?} is not a valid number"))),
        Err(_) => Ok(None),
    }
}

fn configure_threads() -> Result<(), CliError> {
    if let Some(threads) = env_number::<usize>("QT_THREADS")? {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    Ok(())
}

/// Exit code for an error: 2 for bad input, 1 otherwise.
pub fn error_exit_code(err: &CliError) -> i32 {
    match err {
        CliError::Output(_) | CliError::Csv(_) => EXIT_FAILURE,
        CliError::Core(qt_core::Error::BudgetExceeded { .. }) => EXIT_FAILURE,
        _ => EXIT_INPUT,
    }
}

/// Runs one command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "qt: {e}");
            error_exit_code(&e)
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Strata { file, format } => {
            let spec = parse_problem(&file)?;
            let format = Format::from(format);
            let result = cmd_strata(&spec, format)?;
            out.write_all(result.body.as_bytes())?;
            if format == Format::Csv {
                writeln!(err, "{}", result.summary)?;
            } else {
                writeln!(out, "\n{}", result.summary)?;
            }
            Ok(0)
        }
        Command::Verdict { file } => {
            let spec = parse_problem(&file)?;
            let (_, report, code) = cmd_verdict(&spec)?;
            out.write_all(report.as_bytes())?;
            Ok(code)
        }
        Command::Sweep {
            file,
            dmax,
            out: SweepOut::Csv,
            limit,
        } => {
            let spec = parse_problem(&file)?;
            let rows = cmd_sweep(&spec.quiver, &DimensionVector::new(dmax), limit, &mut *out)?;
            writeln!(
                err,
                "{} dimension vectors with nonempty semistable locus",
                rows.len()
            )?;
            Ok(0)
        }
        Command::OracleCensus { file, field } => {
            let spec = parse_problem(&file)?;
            let budget = env_number::<u128>("QT_BUDGET")?.unwrap_or(DEFAULT_BUDGET);
            let result = cmd_oracle_census(&spec, field, budget)?;
            out.write_all(result.report.as_bytes())?;
            Ok(if result.consistent { 0 } else { EXIT_FAILURE })
        }
    }
}
