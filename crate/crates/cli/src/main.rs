mod args;
mod commands;
mod error;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Output};
use error::CliError;

fn emit(out: &Output, body: &str) -> Result<(), CliError> {
    match &out.out {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let (body, out, failed) = match &cli.command {
        Command::Curve { cell, variant, out } => {
            (commands::cmd_curve(cell, *variant, out)?, out, false)
        }
        Command::Gb {
            cell,
            check,
            variant,
            out,
        } => (commands::cmd_gb(cell, *check, *variant, out)?, out, false),
        Command::Hilbert { cell, order, out } => {
            (commands::cmd_hilbert(cell, *order, out)?, out, false)
        }
        Command::Betti { cell, out } => (commands::cmd_betti(cell, out)?, out, false),
        Command::Gr { cell, order, out } => (commands::cmd_gr(cell, *order, out)?, out, false),
        Command::Poincare {
            cell,
            order,
            ungraded,
            out,
        } => (
            commands::cmd_poincare(cell, *order, *ungraded, out)?,
            out,
            false,
        ),
        Command::Resolve {
            cell,
            steps,
            degree_cap,
            check,
            seed,
            out,
        } => (
            commands::cmd_resolve(cell, *steps, *degree_cap, *check, *seed, out)?,
            out,
            false,
        ),
        Command::Lattice { cell, order, out } => {
            (commands::cmd_lattice(cell, *order, out)?, out, false)
        }
        Command::Verify(args) => {
            let (body, failed) = commands::cmd_verify(args)?;
            (body, &args.out, failed)
        }
    };
    emit(out, &body)?;
    Ok(failed)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("wrc: {e}");
            e.exit_code()
        }
    }
}
