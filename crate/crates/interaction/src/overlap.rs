//! Overlap `O = ∫_V u_{j}·F d³r` of a cavity mode with the smearing vector.
//!
//! For the centred atom only the axially symmetric (`m2 = 0`) modes of the
//! second polarization couple, and only for even `l`.  Extending the radial
//! and axial integrals to infinity (errors `O(e^{−R²/σ²})`) gives
//!
//! ```text
//! O = c σ k⊥ / (|k| √L) · (−1)^{l/2} · exp(−(k⊥σ/2)² − (k_lσ/2)²),
//! c = 1/(√π R |J₁(χ)|),
//! ```
//!
//! the sum of a radial-component part `(k_l²σ²/2)·O` and an axial-component
//! part `(1 − k_l²σ²/2)·O`.  For `l = 0` the longitudinal function is the
//! constant `√(1/L)` instead of `√(2/L)·cos`, which divides `O` by `√2`.

use num_complex::Complex64;
use sqed_cavity::{CavityMode, CylPoint, CylinderGeometry, ModeIndex, Polarization};
use sqed_quadrature::{integrate_1d_with_breaks, trapezoid_periodic, Tolerance};
use sqed_specfun::bessel_j;
use std::cell::RefCell;
use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use crate::{atom_profile, GaussianAtom, InteractionError, Result};

/// Width, in units of `σ`, beyond which the atom's Gaussian is negligible
/// (`e^{−144}`); used to place quadrature breakpoints.
pub(crate) const ATOM_EXTENT: f64 = 12.0;

/// Geometry-dependent constants of the `(m1, 0)` second-polarization modes.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TransverseData {
    pub chi: f64,
    pub j1: f64,
}

impl TransverseData {
    pub(crate) fn new(m1: u32) -> Result<Self> {
        let idx = ModeIndex::new(m1, 0, 0, Polarization::Mu2)?;
        let chi = sqed_cavity::transverse_zero(&idx)?;
        let j1 = bessel_j(1, chi, false)?;
        Ok(Self { chi, j1 })
    }
}

fn require_centered(geom: &CylinderGeometry, atom: &GaussianAtom) -> Result<()> {
    if atom.is_centered(geom) {
        Ok(())
    } else {
        Err(InteractionError::InvalidParameter(
            "the closed-form overlaps assume the atom at the cavity centre".into(),
        ))
    }
}

/// Closed-form pieces of the overlap for `(m1, l)`.
struct Pieces {
    /// `c σ k⊥/(|k|√L) (−1)^{l/2} E`, the total overlap for `l ≥ 1`.
    total: f64,
    /// `k_l²σ²/2`, the share of the radial component.
    radial_share: f64,
    /// Correction for the `l = 0` normalization.
    l0_factor: f64,
}

fn pieces(geom: &CylinderGeometry, atom: &GaussianAtom, m1: u32, l: u32) -> Result<Pieces> {
    let td = TransverseData::new(m1)?;
    let (r, len, s) = (geom.radius(), geom.length(), atom.sigma());
    let k_perp = td.chi / r;
    let k_l = PI * f64::from(l) / len;
    let k = k_perp.hypot(k_l);
    let c = 1.0 / (PI.sqrt() * r * td.j1.abs());
    let phase = if (l / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    let gauss = (-(k_perp * s / 2.0).powi(2) - (k_l * s / 2.0).powi(2)).exp();
    Ok(Pieces {
        total: c * s * k_perp / (k * len.sqrt()) * phase * gauss,
        radial_share: 0.5 * (k_l * s).powi(2),
        l0_factor: if l == 0 { FRAC_1_SQRT_2 } else { 1.0 },
    })
}

/// Closed-form overlap of the mode `(m1, 0, l, μ2)` with the smearing vector
/// of a centred atom (units m^{-1/2}); exactly zero for odd `l`.
///
/// Valid for a well-localized atom (`σ/R, σ/L ≲ 0.2`); the neglected terms
/// are exponentially small in `R/σ` and `L/σ`.
///
/// # Errors
/// [`InteractionError::InvalidParameter`] for an off-centre atom; invalid
/// mode numbers.
pub fn overlap_analytic(
    geom: &CylinderGeometry,
    atom: &GaussianAtom,
    m1: u32,
    l: u32,
) -> Result<Complex64> {
    require_centered(geom, atom)?;
    if l % 2 == 1 {
        // Validate m1 even though the value is zero.
        TransverseData::new(m1)?;
        return Ok(Complex64::new(0.0, 0.0));
    }
    let p = pieces(geom, atom, m1, l)?;
    Ok(Complex64::new(p.total * p.l0_factor, 0.0))
}

/// The closed-form overlap next to its recombination from separately quoted
/// radial- and axial-component results.
///
/// The axial-component result is often quoted with a spurious overall factor
/// `1/2`, `(c σ k⊥/(2|k|√L))(1 − k_l²σ²/2)…`; recombining that with the
/// radial part gives `(1 + k_l²σ²/2)/2` times the total instead of `1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapSplitDiagnostic {
    /// The closed-form total overlap.
    pub total: f64,
    /// Radial-component part `(k_l²σ²/2)·total`.
    pub radial_part: f64,
    /// Axial-component part `(1 − k_l²σ²/2)·total`.
    pub axial_part: f64,
    /// Axial-component part with the spurious factor `1/2`.
    pub axial_part_halved: f64,
    /// `(radial_part + axial_part_halved) / total`; `1` for a consistent
    /// recombination.
    pub recombination_ratio: f64,
}

/// Decomposes the closed-form overlap of `(m1, 0, l, μ2)`, `l` even.
///
/// # Errors
/// As [`overlap_analytic`]; odd `l` is rejected since the overlap vanishes.
pub fn overlap_split_diagnostic(
    geom: &CylinderGeometry,
    atom: &GaussianAtom,
    m1: u32,
    l: u32,
) -> Result<OverlapSplitDiagnostic> {
    require_centered(geom, atom)?;
    if l % 2 == 1 {
        return Err(InteractionError::InvalidParameter(
            "the overlap decomposition needs an even longitudinal number".into(),
        ));
    }
    let p = pieces(geom, atom, m1, l)?;
    let total = p.total * p.l0_factor;
    let radial_part = p.radial_share * total;
    let axial_part = (1.0 - p.radial_share) * total;
    let axial_part_halved = 0.5 * axial_part;
    Ok(OverlapSplitDiagnostic {
        total,
        radial_part,
        axial_part,
        axial_part_halved,
        recombination_ratio: (radial_part + axial_part_halved) / total,
    })
}

/// Sorted, deduplicated breakpoints clipped to `[lo, hi]`.
pub(crate) fn breakpoints(lo: f64, hi: f64, inner: &[f64]) -> Vec<f64> {
    let mut pts: Vec<f64> = std::iter::once(lo)
        .chain(inner.iter().copied().filter(|x| *x > lo && *x < hi))
        .chain(std::iter::once(hi))
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Brute-force overlap `∫_V u_j · F d³r` of any cavity mode with the
/// smearing vector, by nested quadrature over the actual cavity: adaptive in
/// `z` (split at the atom's centre and at `±12σ`), adaptive in `r` (split at
/// `12σ`) and the periodic trapezoid rule in `φ`.
///
/// The selection rules — no coupling to the first polarization, to `m2 ≠ 0`
/// or to odd `l` — are not imposed; they emerge from the integral.
///
/// # Errors
/// [`InteractionError::NonConvergence`] if any integral misses its target.
pub fn overlap_numeric(
    geom: &CylinderGeometry,
    atom: &GaussianAtom,
    idx: &ModeIndex,
) -> Result<Complex64> {
    let mode = CavityMode::new(geom, *idx)?;
    let (radius, len, s) = (geom.radius(), geom.length(), atom.sigma());
    let zc = atom.center_z();
    let z_breaks = breakpoints(0.0, len, &[zc - ATOM_EXTENT * s, zc, zc + ATOM_EXTENT * s]);
    let r_breaks = breakpoints(0.0, radius, &[ATOM_EXTENT * s]);
    let n_phi = 4 * idx.m2().unsigned_abs() as usize + 16;
    let scale = mode.transverse_norm() * mode.longitudinal_norm() * s;
    let inner_tol = Tolerance::new(1e-11, 1e-16 * scale / s);
    let outer_tol = Tolerance::new(1e-10, 1e-15 * scale);
    let failure: RefCell<Option<InteractionError>> = RefCell::new(None);

    let slice = |z: f64| -> Complex64 {
        let integrand = |r: f64| -> Complex64 {
            let prof = atom_profile(atom, r, z);
            let ring = trapezoid_periodic(
                |phi: f64| {
                    let u = mode.electric(&CylPoint::new(r, phi, z));
                    u[0] * prof.f[0] + u[2] * prof.f[2]
                },
                0.0,
                TAU,
                n_phi,
            );
            ring * r
        };
        match integrate_1d_with_breaks(integrand, &r_breaks, inner_tol) {
            Ok(res) => res.value,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e.into());
                Complex64::new(0.0, 0.0)
            }
        }
    };
    let outer = integrate_1d_with_breaks(slice, &z_breaks, outer_tol)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(outer.value)
}
