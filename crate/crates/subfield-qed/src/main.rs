//! `subfield-qed`: parameter scans, self-tests and mode dumps.

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use subfield_qed::selftest::{self, Level, Status};
use subfield_qed::{modes, run_scan_to_files, CliError};

#[derive(Debug, Parser)]
#[command(
    name = "subfield-qed",
    version,
    about = "Dimensional reduction of cavity QED: scans and self-tests"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a JSON-configured parameter scan and write its CSV.
    Scan {
        /// Scan configuration (JSON).
        config: PathBuf,
        /// Also write an SVG preview next to the CSV.
        #[arg(long)]
        plot: bool,
        /// Directory for the output files.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Run the oracle battery.
    SelfTest {
        /// Include the expensive oracle equivalences and report documented
        /// deviations.
        #[arg(long)]
        full: bool,
    },
    /// Dump a cavity mode on an N×N grid of the φ = 0 half-plane as CSV.
    Modes {
        /// Cavity radius and length, `R,L`.
        #[arg(long)]
        geometry: String,
        /// Mode numbers `m1,m2,l,pol` with pol `mu1` or `mu2`.
        #[arg(long, allow_hyphen_values = true)]
        index: String,
        /// Points per axis.
        #[arg(long, default_value_t = 16)]
        grid: usize,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Scan { config, plot, out } => {
            let written = run_scan_to_files(&config, plot, out.as_deref())?;
            for line in &written.summary {
                println!("{line}");
            }
            println!("wrote {}", written.csv.display());
            if let Some(svg) = written.svg {
                println!("wrote {}", svg.display());
            }
            Ok(())
        }
        Command::SelfTest { full } => {
            let level = if full { Level::Full } else { Level::Quick };
            let results = selftest::run(level, |r| println!("{r}"));
            let failed: Vec<_> = results
                .iter()
                .filter(|r| r.status == Status::Fail)
                .map(|r| r.name)
                .collect();
            let warned = results.iter().filter(|r| r.status == Status::Warn).count();
            println!(
                "{} checks: {} passed, {} failed, {} documented deviations",
                results.len(),
                results.iter().filter(|r| r.status == Status::Pass).count(),
                failed.len(),
                warned
            );
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Numeric(format!(
                    "failed invariants: {}",
                    failed.join(", ")
                )))
            }
        }
        Command::Modes {
            geometry,
            index,
            grid,
        } => {
            let geom = modes::parse_geometry(&geometry)?;
            let idx = modes::parse_index(&index)?;
            modes::mode_table(&geom, &idx, grid)?.write_to(std::io::stdout().lock())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
