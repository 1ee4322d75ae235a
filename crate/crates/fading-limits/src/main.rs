use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use fading_limits::cli::{Cli, Command};
use fading_limits::config::{run_config, threshold_config, CommandKind};
use fading_limits::{commands, CliError};

fn write_output(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let (config, out, threads) = match &cli.command {
        Command::Threshold(args) => (threshold_config(args)?, args.out.as_deref(), 1),
        Command::DorCurve(args) => (run_config(CommandKind::DorCurve, args)?, args.out.as_deref(), args.threads),
        Command::IorCurve(args) => (run_config(CommandKind::IorCurve, args)?, args.out.as_deref(), args.threads),
        Command::Simulate(args) => (
            run_config(CommandKind::Simulate(args.metric), &args.run)?,
            args.run.out.as_deref(),
            args.run.threads,
        ),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {threads} worker threads: {e}")))?;
    let output = pool.install(|| commands::run(&config))?;
    write_output(&output.table.render(), out)?;
    if let Some(summary) = &output.summary {
        eprint!("{summary}");
    }
    match output.disagreement {
        Some(what) => Err(CliError::Disagreement(what)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
