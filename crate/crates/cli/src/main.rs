use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use npeano_cli::{max_cells_from_env, run, Cli, CliError};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(violations) if violations.is_empty() => ExitCode::SUCCESS,
        Ok(violations) => {
            for v in &violations {
                eprintln!("invariant violated: {v}");
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(cli: &Cli) -> Result<Vec<String>, CliError> {
    let max_cells = max_cells_from_env()?;
    let mut out: Box<dyn Write> = match &cli.config.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let violations = run(cli, max_cells, &mut out)?;
    out.flush()?;
    Ok(violations)
}
