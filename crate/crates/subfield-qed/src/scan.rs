//! The four scans.
//!
//! Scan points are independent library calls evaluated in parallel; results
//! are collected in parameter order, so identical configurations give
//! byte-identical CSV.

use rayon::prelude::*;
use sqed_cavity::{CylinderGeometry, SI};
use sqed_interaction::{subfield_spectrum, transition_set, GaussianAtom, SubfieldSet, Switching};
use sqed_laser::{
    gamma_closed, gamma_sum, zeta, BeamPolarization, HermiteBeam, LaserError, VacuumCutoff,
};

use crate::config::{ScanConfig, ScanKind, SweepParameter, TimeSpec};
use crate::svg::{Plot, Series};
use crate::table::{format_float, Cell, Table};
use crate::CliError;

/// Result of a scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanOutput {
    /// The CSV table.
    pub table: Table,
    /// Human-readable summary lines.
    pub summary: Vec<String>,
    /// Preview plot.
    pub plot: Plot,
}

fn numeric(point: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Numeric(format!("{point}: {e}"))
}

/// Runs the configured scan.
///
/// # Errors
/// [`CliError::Config`] for an invalid configuration;
/// [`CliError::Numeric`] naming the failing parameter point.
pub fn run_scan(cfg: &ScanConfig) -> Result<ScanOutput, CliError> {
    cfg.validate()?;
    match cfg.scan_kind {
        ScanKind::SubfieldRatios => subfield_ratios(cfg),
        ScanKind::TruncationError => truncation_error(cfg),
        ScanKind::GammaContour => gamma_contour(cfg),
        ScanKind::LaserZeta => laser_zeta(cfg),
    }
}

/// `(min, max, position of max)` of a column, skipping non-finite values.
fn extremes(table: &Table, column: &str) -> Option<(f64, f64, usize)> {
    let c = table.column(column)?;
    let mut out: Option<(f64, f64, usize)> = None;
    for (i, row) in table.rows.iter().enumerate() {
        let Some(v) = row[c].as_f64().filter(|v| v.is_finite()) else {
            continue;
        };
        out = Some(match out {
            None => (v, v, i),
            Some((lo, hi, at)) => (
                lo.min(v),
                if v > hi { v } else { hi },
                if v > hi { i } else { at },
            ),
        });
    }
    out
}

fn describe_row(table: &Table, row: usize, columns: &[&str]) -> String {
    columns
        .iter()
        .filter_map(|name| {
            table
                .column(name)
                .map(|c| format!("{name}={}", table.rows[row][c].render()))
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn summary_line(table: &Table, quantity: &str, keys: &[&str]) -> String {
    match extremes(table, quantity) {
        Some((lo, hi, at)) => format!(
            "{quantity}: min {} max {} at {}",
            format_float(lo),
            format_float(hi),
            describe_row(table, at, keys)
        ),
        None => format!("{quantity}: no finite values"),
    }
}

fn geometry(sigma: f64, r_over_sigma: f64, l_over_r: f64) -> Result<CylinderGeometry, CliError> {
    let r = r_over_sigma * sigma;
    CylinderGeometry::new(r, l_over_r * r).map_err(|e| CliError::Config(format!("`geometry`: {e}")))
}

// ---------------------------------------------------------------- SubfieldRatios

struct RatioPoint {
    ratio: f64,
    argmax: u32,
    /// `(m1, ln |c|², ln |c|² − ln P)`.
    terms: Vec<(u32, f64, f64)>,
}

fn subfield_ratios(cfg: &ScanConfig) -> Result<ScanOutput, CliError> {
    let sigma = cfg.sigma();
    let g = cfg.geometry.expect("validated");
    let sweep = cfg.sweep.expect("validated");
    let resonance = cfg.resonance.expect("validated");
    let Some(TimeSpec::Fixed(tau)) = cfg.omega_a_t else {
        unreachable!("validated")
    };
    let kind = cfg.kinds()[0];
    let values = sweep.grid.values();
    let points: Vec<RatioPoint> = values
        .par_iter()
        .map(|&v| {
            let (rs, lr) = match sweep.parameter {
                SweepParameter::LOverR => (g.r_over_sigma, v),
                SweepParameter::ROverSigma => (v, g.l_over_r),
            };
            let label = format!("{}={}", sweep.parameter.column(), format_float(v));
            let geom = geometry(sigma, rs, lr)?;
            let atom = GaussianAtom::resonant(&geom, sigma, resonance.resonance())
                .map_err(|e| numeric(&label, e))?;
            let sw = Switching::gaussian(tau / atom.omega_a()).map_err(|e| numeric(&label, e))?;
            let first = subfield_spectrum(&geom, &atom, &sw, kind.kind(), cfg.m1_max.unwrap_or(1))
                .map_err(|e| numeric(&label, e))?;
            let argmax = first.argmax();
            let m1_max = cfg.m1_max.unwrap_or_else(|| (2 * argmax).max(10));
            let spectrum = if (first.terms.len() as u32) < m1_max {
                subfield_spectrum(&geom, &atom, &sw, kind.kind(), m1_max)
                    .map_err(|e| numeric(&label, e))?
            } else {
                first
            };
            let log_total = spectrum.log_total();
            let terms = spectrum
                .terms
                .iter()
                .take(m1_max as usize)
                .map(|t| (t.m1, t.log_c_abs2, t.log_c_abs2 - log_total))
                .collect();
            Ok(RatioPoint {
                ratio: v,
                argmax,
                terms,
            })
        })
        .collect::<Result<_, CliError>>()?;

    let col = sweep.parameter.column();
    let mut table = Table::new(vec![
        "m1",
        col,
        "c_abs2",
        "c_abs2_normalized",
        "is_resonant",
        "is_argmax",
        "log_c_abs2",
    ]);
    let mut summary = Vec::new();
    let mut series = Vec::new();
    for p in &points {
        for &(m1, log_c, log_norm) in &p.terms {
            table.rows.push(vec![
                Cell::Int(i64::from(m1)),
                Cell::Float(p.ratio),
                Cell::Float(log_c.exp()),
                Cell::Float(log_norm.exp()),
                Cell::Bool(resonance.resonant_m1() == Some(m1)),
                Cell::Bool(m1 == p.argmax),
                Cell::Float(log_c),
            ]);
        }
        summary.push(format!(
            "{col}={}: argmax_m1={}",
            format_float(p.ratio),
            p.argmax
        ));
        series.push(Series {
            label: format!("{col} = {:.4}", p.ratio),
            points: p
                .terms
                .iter()
                .map(|&(m, _, n)| (f64::from(m), n.exp()))
                .collect(),
        });
    }
    summary.push(summary_line(&table, "c_abs2_normalized", &["m1", col]));
    Ok(ScanOutput {
        table,
        summary,
        plot: Plot {
            title: "Subfield probability ratios".into(),
            x_label: "m1".into(),
            y_label: "|c_m1|^2 / P".into(),
            series,
        },
    })
}

// ---------------------------------------------------------------- TruncationError

fn truncation_error(cfg: &ScanConfig) -> Result<ScanOutput, CliError> {
    let sigma = cfg.sigma();
    let g = cfg.geometry.expect("validated");
    let geom = geometry(sigma, g.r_over_sigma, g.l_over_r)?;
    let resonance = cfg.resonance.expect("validated");
    let atom = GaussianAtom::resonant(&geom, sigma, resonance.resonance())
        .map_err(|e| numeric("resonance", e))?;
    let Some(TimeSpec::Grid(grid)) = cfg.omega_a_t else {
        unreachable!("validated")
    };
    let taus = grid.values();
    let sets: Vec<SubfieldSet> = cfg
        .sets
        .as_ref()
        .expect("validated")
        .iter()
        .map(|s| SubfieldSet::new(s.clone()).expect("validated"))
        .collect();
    let mut jobs = Vec::new();
    for (si, _) in sets.iter().enumerate() {
        for sw in cfg.switchings() {
            for kind in cfg.kinds() {
                for &tau in &taus {
                    jobs.push((si, sw, kind, tau));
                }
            }
        }
    }
    let results: Vec<(f64, f64)> = jobs
        .par_iter()
        .map(|&(si, sw, kind, tau)| {
            let label = format!(
                "set {:?}, {}, {}, omega_a_T={}",
                sets[si].values(),
                sw.label(),
                kind.label(),
                format_float(tau)
            );
            let s =
                Switching::new(sw.kind(), tau / atom.omega_a()).map_err(|e| numeric(&label, e))?;
            let t = transition_set(&geom, &atom, &s, kind.kind(), &sets[si])
                .map_err(|e| numeric(&label, e))?;
            Ok((t.delta_n, t.log_delta_n))
        })
        .collect::<Result<_, CliError>>()?;

    let mut table = Table::new(vec![
        "omega_a_T",
        "N_count",
        "delta_N",
        "kind",
        "switching",
        "log_delta_N",
    ]);
    let mut series: Vec<Series> = Vec::new();
    for (&(si, sw, kind, tau), &(d, log_d)) in jobs.iter().zip(&results) {
        table.rows.push(vec![
            Cell::Float(tau),
            Cell::Int(sets[si].len() as i64),
            Cell::Float(d),
            Cell::Text(kind.label()),
            Cell::Text(sw.label()),
            Cell::Float(log_d),
        ]);
        let label = format!("N={:?} {} {}", sets[si].values(), sw.label(), kind.label());
        match series.last_mut() {
            Some(s) if s.label == label => s.points.push((tau, log_d / std::f64::consts::LN_10)),
            _ => series.push(Series {
                label,
                points: vec![(tau, log_d / std::f64::consts::LN_10)],
            }),
        }
    }
    let summary = vec![
        summary_line(
            &table,
            "delta_N",
            &["omega_a_T", "N_count", "kind", "switching"],
        ),
        summary_line(
            &table,
            "log_delta_N",
            &["omega_a_T", "N_count", "kind", "switching"],
        ),
    ];
    Ok(ScanOutput {
        table,
        summary,
        plot: Plot {
            title: "Subfield truncation error".into(),
            x_label: "Omega_A T".into(),
            y_label: "log10 delta_N".into(),
            series,
        },
    })
}

// ---------------------------------------------------------------- GammaContour

fn gamma_contour(cfg: &ScanConfig) -> Result<ScanOutput, CliError> {
    let (n1_max, n2_max) = (
        cfg.n1_max.expect("validated"),
        cfg.n2_max.expect("validated"),
    );
    let mut table = Table::new(vec![
        "N1",
        "N2",
        "gamma_sum",
        "gamma_closed",
        "closed_minus_sum",
    ]);
    let mut series = Vec::new();
    for n2 in 0..=n2_max {
        let mut pts = Vec::new();
        for n1 in 0..=n1_max {
            let n = VacuumCutoff::new(n1, n2).expect("validated");
            let sum = gamma_sum(n);
            let closed = gamma_closed(n).map_err(|e| numeric(&format!("N=({n1},{n2})"), e))?;
            table.rows.push(vec![
                Cell::Int(i64::from(n1)),
                Cell::Int(i64::from(n2)),
                Cell::Float(sum),
                Cell::Float(closed),
                Cell::Float(closed - sum),
            ]);
            pts.push((f64::from(n1), sum));
        }
        series.push(Series {
            label: format!("N2 = {n2}"),
            points: pts,
        });
    }
    let summary = vec![
        summary_line(&table, "gamma_sum", &["N1", "N2"]),
        summary_line(&table, "closed_minus_sum", &["N1", "N2"]),
    ];
    Ok(ScanOutput {
        table,
        summary,
        plot: Plot {
            title: "Vacuum coupling gamma_N".into(),
            x_label: "N1".into(),
            y_label: "gamma_N".into(),
            series,
        },
    })
}

// ---------------------------------------------------------------- LaserZeta

fn laser_zeta(cfg: &ScanConfig) -> Result<ScanOutput, CliError> {
    let sigma = cfg.sigma();
    let b = cfg.beam.expect("validated");
    let beam = HermiteBeam::new(b.w0, b.k, b.alpha_sq, BeamPolarization::EpsX)
        .map_err(|e| CliError::Config(format!("`beam`: {e}")))?;
    let [n1, n2] = cfg.cutoff.expect("validated");
    let cutoff = VacuumCutoff::new(n1, n2).expect("validated");
    let Some(TimeSpec::Grid(tgrid)) = cfg.omega_a_t else {
        unreachable!("validated")
    };
    let ratios = cfg.omega_over_omega_a.expect("validated").values();
    let taus = tgrid.values();
    let omega = SI.c * beam.k();
    let mut jobs = Vec::new();
    for sw in cfg.switchings() {
        for kind in cfg.kinds() {
            for &tau in &taus {
                for &ratio in &ratios {
                    jobs.push((sw, kind, tau, ratio));
                }
            }
        }
    }
    let results: Vec<(f64, f64, f64)> = jobs
        .par_iter()
        .map(|&(sw, kind, tau, ratio)| {
            let label = format!(
                "{}, {}, omega_a_T={}, omega_over_omega_a={}",
                sw.label(),
                kind.label(),
                format_float(tau),
                format_float(ratio)
            );
            let omega_a = omega / ratio;
            let atom = GaussianAtom::new(sigma, omega_a, 0.0).map_err(|e| numeric(&label, e))?;
            let s = Switching::new(sw.kind(), tau / omega_a).map_err(|e| numeric(&label, e))?;
            match zeta(&atom, &beam, &s, kind.kind(), cutoff) {
                Ok(z) => Ok((z.value, z.log_value, z.bound)),
                Err(LaserError::VanishingLaserTerm { .. }) => Ok((
                    f64::INFINITY,
                    f64::INFINITY,
                    sqed_laser::gamma_sum(cutoff) / (4.0 * beam.alpha_sq()),
                )),
                Err(e) => Err(numeric(&label, e)),
            }
        })
        .collect::<Result<_, CliError>>()?;

    let mut table = Table::new(vec![
        "omega_a_T",
        "omega_over_omega_a",
        "kind",
        "switching",
        "zeta",
        "log_zeta",
        "bound",
        "exceeds_bound",
    ]);
    let mut series: Vec<Series> = Vec::new();
    for (&(sw, kind, tau, ratio), &(z, log_z, bound)) in jobs.iter().zip(&results) {
        table.rows.push(vec![
            Cell::Float(tau),
            Cell::Float(ratio),
            Cell::Text(kind.label()),
            Cell::Text(sw.label()),
            Cell::Float(z),
            Cell::Float(log_z),
            Cell::Float(bound),
            Cell::Bool(log_z > bound.ln()),
        ]);
        let label = format!("{} {} omega/Omega_A={:.3}", sw.label(), kind.label(), ratio);
        let y = (log_z - bound.ln()) / std::f64::consts::LN_10;
        match series.iter_mut().find(|s| s.label == label) {
            Some(s) => s.points.push((tau, y)),
            None => series.push(Series {
                label,
                points: vec![(tau, y)],
            }),
        }
    }
    // Keep the preview readable: at most eight curves, evenly spread.
    if series.len() > 8 {
        let step = series.len().div_ceil(8);
        series = series.into_iter().step_by(step).collect();
    }
    let exceed = table
        .rows
        .iter()
        .filter(|r| r[7] == Cell::Bool(true))
        .count();
    let summary = vec![
        summary_line(
            &table,
            "log_zeta",
            &["omega_a_T", "omega_over_omega_a", "kind", "switching"],
        ),
        format!(
            "points above gamma_N/(4|alpha|^2): {exceed} of {}",
            table.rows.len()
        ),
    ];
    Ok(ScanOutput {
        table,
        summary,
        plot: Plot {
            title: "Vacuum-to-laser ratio".into(),
            x_label: "Omega_A T".into(),
            y_label: "log10(zeta / bound)".into(),
            series,
        },
    })
}
