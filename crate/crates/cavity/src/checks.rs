//! Pointwise diagnostics: boundary conditions from the analytic jets and
//! finite-difference oracles for the Helmholtz equation and the curl relation.
//!
//! All residuals are reported relative to the mode's amplitude scale
//! `c_{m,μ}·n_l` (times `|k|` or `k²` where derivatives are involved), which is
//! the natural size of the normalized fields.

use num_complex::Complex64;

use crate::{to_cartesian, CVec3, CavityMode, CylPoint};

/// Part of the cavity boundary a sample point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wall {
    /// Mantle `r = R` (outward normal `r̂`).
    Side,
    /// Cap `z = 0` (outward normal `−ẑ`).
    Bottom,
    /// Cap `z = L` (outward normal `+ẑ`).
    Top,
}

/// Boundary-condition residuals at one boundary point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryResiduals {
    /// `|n × u|` — tangential electric field.
    pub tangential_u: f64,
    /// `|∇·u|` (scaled by `1/|k|`).
    pub divergence_u: f64,
    /// `|n · v|` — normal magnetic field.
    pub normal_v: f64,
    /// `|n × (∇×v)|` (scaled by `1/|k|`).
    pub tangential_curl_v: f64,
}

impl BoundaryResiduals {
    /// Largest of the four residuals.
    pub fn max(&self) -> f64 {
        self.tangential_u
            .max(self.divergence_u)
            .max(self.normal_v)
            .max(self.tangential_curl_v)
    }
}

fn amplitude(mode: &CavityMode) -> f64 {
    mode.transverse_norm() * mode.longitudinal_norm()
}

/// Evaluates the four boundary-condition families at `p` on `wall`, using the
/// exact jets.  `p.r` must be positive (the cylindrical divergence and curl
/// divide by `r`).
pub fn boundary_residuals(mode: &CavityMode, wall: Wall, p: &CylPoint) -> BoundaryResiduals {
    let (ju, jv) = mode.jets(p);
    let k = mode.waves().k_abs();
    let scale = amplitude(mode);
    let div = ju.divergence(p.r).norm() / k;
    let curl_v = jv.curl(p.r);
    // Tangential components for each wall: the cross product with the normal
    // just picks them out (signs are irrelevant for magnitudes).
    let (tangential, normal): (&[usize], usize) = match wall {
        Wall::Side => (&[1, 2], 0),
        Wall::Bottom | Wall::Top => (&[0, 1], 2),
    };
    let tmax = |v: &CVec3| tangential.iter().map(|&i| v[i].norm()).fold(0.0, f64::max);
    BoundaryResiduals {
        tangential_u: tmax(&ju.value) / scale,
        divergence_u: div / scale,
        normal_v: jv.value[normal].norm() / scale,
        tangential_curl_v: tmax(&curl_v) / (k * scale),
    }
}

fn electric_cartesian(mode: &CavityMode, x: f64, y: f64, z: f64) -> CVec3 {
    let p = CylPoint::from_cartesian(x, y, z);
    to_cartesian(&mode.electric(&p), p.phi)
}

/// Finite-difference Helmholtz residual `max_c |(Δ + k²) u_c| / (k² · scale)`
/// at `p`, with a fourth-order five-point stencil of step `h` along each
/// Cartesian axis.
pub fn helmholtz_fd_residual(mode: &CavityMode, p: &CylPoint, h: f64) -> f64 {
    let (x, y, z) = (p.r * p.phi.cos(), p.r * p.phi.sin(), p.z);
    let f = |dx: f64, dy: f64, dz: f64| electric_cartesian(mode, x + dx, y + dy, z + dz);
    let center = f(0.0, 0.0, 0.0);
    let mut lap = [Complex64::new(0.0, 0.0); 3];
    for axis in 0..3 {
        let shift = |s: f64| match axis {
            0 => f(s, 0.0, 0.0),
            1 => f(0.0, s, 0.0),
            _ => f(0.0, 0.0, s),
        };
        let (p1, m1, p2, m2) = (shift(h), shift(-h), shift(2.0 * h), shift(-2.0 * h));
        for c in 0..3 {
            lap[c] +=
                (-p2[c] + 16.0 * p1[c] - 30.0 * center[c] + 16.0 * m1[c] - m2[c]) / (12.0 * h * h);
        }
    }
    let k2 = mode.waves().k_abs().powi(2);
    (0..3)
        .map(|c| (lap[c] + center[c] * k2).norm())
        .fold(0.0, f64::max)
        / (k2 * amplitude(mode))
}

/// Finite-difference check of `v = ∇×u / |k|`: fourth-order central
/// differences of the Cartesian components of `u`, compared with `v`;
/// returns `max_c |v_fd − v| / scale`.
pub fn curl_fd_residual(mode: &CavityMode, p: &CylPoint, h: f64) -> f64 {
    let (x, y, z) = (p.r * p.phi.cos(), p.r * p.phi.sin(), p.z);
    let f = |dx: f64, dy: f64, dz: f64| electric_cartesian(mode, x + dx, y + dy, z + dz);
    // d[axis][component]
    let mut d = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (axis, row) in d.iter_mut().enumerate() {
        let shift = |s: f64| match axis {
            0 => f(s, 0.0, 0.0),
            1 => f(0.0, s, 0.0),
            _ => f(0.0, 0.0, s),
        };
        let (p1, m1, p2, m2) = (shift(h), shift(-h), shift(2.0 * h), shift(-2.0 * h));
        for c in 0..3 {
            row[c] = (-p2[c] + 8.0 * p1[c] - 8.0 * m1[c] + m2[c]) / (12.0 * h);
        }
    }
    let curl = [d[1][2] - d[2][1], d[2][0] - d[0][2], d[0][1] - d[1][0]];
    let k = mode.waves().k_abs();
    let v = to_cartesian(&mode.fields(p).v, p.phi);
    (0..3)
        .map(|c| (curl[c] / k - v[c]).norm())
        .fold(0.0, f64::max)
        / amplitude(mode)
}
