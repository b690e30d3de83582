//! Command-line front end for dimensional reduction of cavity QED.
//!
//! * [`config`]: JSON scan configurations (snake_case keys, unknown keys
//!   rejected);
//! * [`scan`]: the `SubfieldRatios`, `TruncationError`, `GammaContour` and
//!   `LaserZeta` scans, evaluated in parallel and emitted in parameter order;
//! * [`table`]: deterministic CSV with 17 significant digits;
//! * [`svg`]: optional preview plots;
//! * [`selftest`]: the oracle battery;
//! * [`modes`]: mode-field dumps.
//!
//! Exit codes: `0` success, `1` numeric failure, `2` configuration error.

pub mod config;
pub mod modes;
pub mod scan;
pub mod selftest;
pub mod svg;
pub mod table;

use std::path::{Path, PathBuf};
use thiserror::Error;

/// Errors of the command-line tool.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    /// Invalid configuration or arguments.
    #[error("configuration error: {0}")]
    Config(String),
    /// A computation failed.
    #[error("numeric failure: {0}")]
    Numeric(String),
    /// Writing output failed.
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    /// Process exit code.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 1,
        }
    }
}

/// Files written by [`run_scan_to_files`].
#[derive(Debug, Clone, PartialEq)]
pub struct WrittenScan {
    /// The CSV file.
    pub csv: PathBuf,
    /// The SVG file, if requested.
    pub svg: Option<PathBuf>,
    /// Summary lines.
    pub summary: Vec<String>,
}

/// Reads `config`, runs the scan and writes the CSV (and optionally the
/// SVG).  The CSV goes to the configured `output` (default
/// `<scan kind>.csv`); `out_dir` replaces its directory.
///
/// # Errors
/// As [`scan::run_scan`]; [`CliError::Io`] when writing fails.
pub fn run_scan_to_files(
    config: &Path,
    plot: bool,
    out_dir: Option<&Path>,
) -> Result<WrittenScan, CliError> {
    let cfg = config::ScanConfig::from_path(config)?;
    let result = scan::run_scan(&cfg)?;
    let configured = PathBuf::from(
        cfg.output
            .clone()
            .unwrap_or_else(|| format!("{}.csv", cfg.scan_kind.file_stem())),
    );
    let csv_path = match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            dir.join(
                configured
                    .file_name()
                    .ok_or_else(|| CliError::Config("`output` has no file name".into()))?,
            )
        }
        None => configured,
    };
    if let Some(parent) = csv_path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)
            .map_err(|e| CliError::Io(format!("{}: {e}", parent.display())))?;
    }
    std::fs::write(&csv_path, result.table.to_csv()?)
        .map_err(|e| CliError::Io(format!("{}: {e}", csv_path.display())))?;
    let svg = if plot {
        let p = csv_path.with_extension("svg");
        std::fs::write(&p, result.plot.render())
            .map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
        Some(p)
    } else {
        None
    };
    Ok(WrittenScan {
        csv: csv_path,
        svg,
        summary: result.summary,
    })
}
