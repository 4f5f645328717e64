//! `xxzpaths`: exact partition functions, correlations and checks for the
//! lattice-path model of XXZ interface ground states.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or precondition error.

mod commands;
mod output;
mod sweep;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use rayon::prelude::*;
use serde_json::{json, Value};

use commands::Command;
use output::{csv_string, envelope, Format, Output};
use xxz_paths::Execution;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] xxz_paths::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(name = "xxzpaths", version, about = "Exact lattice-path computations for XXZ interface ground states")]
struct Cli {
    /// Output format; `sample` defaults to text lines, everything else to json
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Print only the result, without the config/version envelope
    #[arg(long, global = true)]
    raw: bool,
    /// Read q values as binary floats instead of exact rationals
    #[arg(long, global = true)]
    float: bool,
    /// Run on one thread
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

impl Cli {
    fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    fn format(&self) -> Format {
        self.format.unwrap_or(match self.command {
            Command::Sample(_) => Format::Text,
            _ => Format::Json,
        })
    }
}

fn compute(cli: &Cli) -> Result<Output, CliError> {
    let exec = cli.exec();
    match &cli.command {
        Command::Partition(a) => commands::partition(a, cli.float),
        Command::Correlate(a) => commands::correlate(a, cli.float),
        Command::Fluctuations(a) => commands::fluctuations(a, cli.float, exec),
        Command::Sample(a) => commands::sample(a, cli.float, exec),
        Command::Reduce2d(a) => commands::reduce2d(a, exec),
        Command::Verify(a) => commands::verify_suite(a, exec),
        Command::Sweep(_) => unreachable!("sweeps are dispatched separately"),
    }
}

fn render(cli: &Cli, out: &Output) -> Result<String, CliError> {
    match cli.format() {
        Format::Json => {
            let value = if cli.raw {
                out.result.clone()
            } else {
                envelope(cli.command.name(), &cli.command.config(), out)
            };
            Ok(format!("{value}\n"))
        }
        Format::Csv => Ok(csv_string(&out.table, &[], &[], true)),
        Format::Text => match &out.text {
            Some(lines) => Ok(lines.iter().map(|l| format!("{l}\n")).collect()),
            None => Err(CliError::Usage(format!("{} has no text output; use json or csv", cli.command.name()))),
        },
    }
}

fn exit_code(failed: bool) -> ExitCode {
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_sweep(cli: &Cli, args: &commands::SweepArgs) -> Result<ExitCode, CliError> {
    let text = std::fs::read_to_string(&args.config)?;
    let file = sweep::SweepFile::parse(&text)?;
    let points = file.points()?;
    let format = cli.format();
    if format == Format::Text {
        return Err(CliError::Usage("sweep output is json lines or csv".into()));
    }
    let run_point = |point: &sweep::Point| -> (Value, Option<Output>, Option<String>) {
        let kept = sweep::without_unset(point);
        let argv = file.argv(&kept);
        let config: Value = kept
            .iter()
            .map(|(k, v)| (k.clone(), v.clone().map_or(Value::Bool(true), Value::String)))
            .collect::<serde_json::Map<_, _>>()
            .into();
        let job = match Cli::try_parse_from(&argv) {
            Ok(job) => job,
            Err(e) => return (config, None, Some(e.to_string().trim().to_string())),
        };
        match compute(&job) {
            Ok(out) => {
                let env = envelope(job.command.name(), &job.command.config(), &out);
                (env, Some(out), None)
            }
            Err(e) => (config, None, Some(e.to_string())),
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let results: Vec<_> = pool.install(|| points.par_iter().map(run_point).collect());

    // single emitter, in grid order
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    let keys = file.keys();
    let mut failed = false;
    let mut errored = false;
    let mut header_written = false;
    for (point, (value, out, err)) in points.iter().zip(results) {
        if let Some(e) = &err {
            errored = true;
            eprintln!("sweep point {value}: {e}");
        }
        failed |= out.as_ref().is_some_and(|o| o.failed);
        match format {
            Format::Json => {
                let line = match (&out, err) {
                    (_, Some(e)) => json!({ "config": value, "error": e }),
                    (Some(o), None) if cli.raw => o.result.clone(),
                    _ => value,
                };
                writeln!(w, "{line}")?;
            }
            Format::Csv => {
                if let Some(o) = out {
                    let prefix: Vec<String> = point
                        .iter()
                        .map(|(_, v)| v.clone().unwrap_or_else(|| "true".into()))
                        .collect();
                    let prefixes = vec![prefix; o.table.rows.len()];
                    write!(w, "{}", csv_string(&o.table, &keys, &prefixes, !header_written))?;
                    header_written = true;
                }
            }
            Format::Text => unreachable!("rejected above"),
        }
    }
    Ok(if errored { ExitCode::from(2) } else { exit_code(failed) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Sweep(args) => run_sweep(&cli, args),
        _ => compute(&cli).and_then(|out| {
            let text = render(&cli, &out)?;
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(exit_code(out.failed))
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
