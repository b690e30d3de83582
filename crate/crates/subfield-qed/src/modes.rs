//! Mode-field dumps.

use sqed_cavity::{em_mode_3d, CylPoint, CylinderGeometry, ModeIndex, Polarization};

use crate::table::{Cell, Table};
use crate::CliError;

/// Parses `R,L`.
///
/// # Errors
/// [`CliError::Config`] for malformed input or an invalid cavity.
pub fn parse_geometry(s: &str) -> Result<CylinderGeometry, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [r, l] = parts.as_slice() else {
        return Err(CliError::Config(format!(
            "--geometry expects R,L, got `{s}`"
        )));
    };
    let parse = |v: &str| {
        v.parse::<f64>()
            .map_err(|e| CliError::Config(format!("--geometry: `{v}`: {e}")))
    };
    CylinderGeometry::new(parse(r)?, parse(l)?)
        .map_err(|e| CliError::Config(format!("--geometry: {e}")))
}

/// Parses `m1,m2,l,pol` with `pol` one of `mu1`, `mu2`, `1`, `2`.
///
/// # Errors
/// [`CliError::Config`] for malformed input or invalid mode numbers.
pub fn parse_index(s: &str) -> Result<ModeIndex, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [m1, m2, l, pol] = parts.as_slice() else {
        return Err(CliError::Config(format!(
            "--index expects m1,m2,l,pol, got `{s}`"
        )));
    };
    let bad = |what: &str, v: &str| CliError::Config(format!("--index: invalid {what} `{v}`"));
    let pol = match pol.to_ascii_lowercase().as_str() {
        "mu1" | "1" => Polarization::Mu1,
        "mu2" | "2" => Polarization::Mu2,
        _ => return Err(bad("polarization", pol)),
    };
    ModeIndex::new(
        m1.parse().map_err(|_| bad("m1", m1))?,
        m2.parse().map_err(|_| bad("m2", m2))?,
        l.parse().map_err(|_| bad("l", l))?,
        pol,
    )
    .map_err(|e| CliError::Config(format!("--index: {e}")))
}

/// The electric and magnetic mode functions on an `n × n` grid of the
/// half-plane `φ = 0`, `r ∈ [0, R]`, `z ∈ [0, L]`, in cylindrical components.
///
/// # Errors
/// [`CliError::Config`] for `n < 2`; [`CliError::Numeric`] on evaluation
/// failure.
pub fn mode_table(geom: &CylinderGeometry, idx: &ModeIndex, n: usize) -> Result<Table, CliError> {
    if n < 2 {
        return Err(CliError::Config("--grid must be at least 2".into()));
    }
    let mut table = Table::new(vec![
        "r", "phi", "z", "u_r_re", "u_r_im", "u_phi_re", "u_phi_im", "u_z_re", "u_z_im", "v_r_re",
        "v_r_im", "v_phi_re", "v_phi_im", "v_z_re", "v_z_im",
    ]);
    let step = |i: usize, len: f64| {
        if i == n - 1 {
            len
        } else {
            len * i as f64 / (n - 1) as f64
        }
    };
    for i in 0..n {
        let r = step(i, geom.radius());
        for j in 0..n {
            let z = step(j, geom.length());
            let f = em_mode_3d(geom, idx, &CylPoint::new(r, 0.0, z))
                .map_err(|e| CliError::Numeric(format!("r={r}, z={z}: {e}")))?;
            let mut row = vec![Cell::Float(r), Cell::Float(0.0), Cell::Float(z)];
            for c in f.u.iter().chain(f.v.iter()) {
                row.push(Cell::Float(c.re));
                row.push(Cell::Float(c.im));
            }
            table.rows.push(row);
        }
    }
    Ok(table)
}
