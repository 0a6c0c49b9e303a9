use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fuzzy_volterra::cli::{run_path, Overrides, EXIT_OK, EXIT_PARSE};

#[derive(Parser)]
#[command(
    name = "fcvide",
    version,
    about = "Closed-form solver for fuzzy convolution Volterra integro-differential equations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem file and print the closed form, diagnostics and oracle check.
    Solve {
        file: PathBuf,
        /// Write `t,r,lower,upper` samples to this path.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
        /// Skip the numerical cross-check.
        #[arg(long)]
        no_oracle: bool,
        /// Number of membership levels in [0, 1].
        #[arg(long, value_name = "N")]
        r_points: Option<usize>,
        /// Time steps for the oracle and the CSV grid.
        #[arg(long, value_name = "N")]
        steps: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let informational = !e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if informational { EXIT_OK } else { EXIT_PARSE } as u8);
        }
    };
    let Command::Solve {
        file,
        csv,
        no_oracle,
        r_points,
        steps,
    } = cli.command;
    let overrides = Overrides {
        csv,
        no_oracle,
        r_points,
        steps,
    };
    let code = run_path(
        &file,
        &overrides,
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
