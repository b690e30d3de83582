//! Laser transition probabilities and the vacuum-to-laser ratio `ζ_N`.
//!
//! The laser time factor is `|f₋ + f̄₊|²` with `f_± = f((ω ± Ω)/2)` and
//! `f(Δ) = ∫ χ(t) e^{2iΔt} dt`, i.e. `|∫ χ(t) 2cos(ωt) e^{iΩt} dt|²`:
//!
//! ```text
//! Gaussian:  8π T² e^{−(ω²+Ω²)T²} cosh²(ωΩT²),
//! top hat:   T² [sinc²(Δ₋T) + sinc²(Δ₊T) + 2 sinc(Δ₋T) sinc(Δ₊T) cos(ωT)].
//! ```
//!
//! The Gaussian form is often displayed with halved exponents,
//! `8π T² e^{−(ω²+Ω²)T²/2} cosh²(ωΩT²/2)` ([`displayed_laser_factor`]); that
//! is twice the exact factor at `T/√2`, the same convention mismatch as in
//! the vacuum window.  The exact factor is used and checked against time
//! quadrature ([`laser_factor_numeric`]).
//!
//! For Gaussian switching the ratio `ζ = γ_N |f_(±)|² / (|α|² |f₋ + f̄₊|²)`
//! is `(γ_N/|α|²)·(1/4) e^{∓2x} sech² x` with `x = ωΩT²`.  Excitation obeys
//! `ζ ≤ γ_N/(4|α|²)`; emission approaches `γ_N/|α|²` for large `x`.  Under
//! top-hat switching the laser factor has zeros and `ζ` is unbounded.

use num_complex::Complex64;
use sqed_interaction::{
    log_time_window, time_window, GaussianAtom, Switching, SwitchingKind, TransitionKind,
};
use sqed_quadrature::{integrate_1d, integrate_1d_with_breaks, Tolerance};
use sqed_specfun::sinc;
use std::f64::consts::PI;

use crate::{gamma_sum, HermiteBeam, LaserError, Result, VacuumCutoff};

/// Half-width, in units of `T`, of the Gaussian time quadrature.
const GAUSSIAN_CUTOFF: f64 = 12.0;

/// Laser frequency `ω = c k` of the central wavenumber.
fn laser_omega(beam: &HermiteBeam) -> f64 {
    sqed_cavity::SI.c * beam.k()
}

/// The laser time factor `|f₋ + f̄₊|²` (s²) for laser frequency `omega` and
/// atomic frequency `omega_a`.
pub fn laser_factor(sw: &Switching, omega: f64, omega_a: f64) -> f64 {
    let t = sw.t();
    match sw.kind() {
        SwitchingKind::Gaussian => log_laser_factor(sw, omega, omega_a).exp(),
        SwitchingKind::TopHat => {
            let sm = sinc(0.5 * (omega - omega_a) * t);
            let sp = sinc(0.5 * (omega + omega_a) * t);
            (t * t * (sm * sm + sp * sp + 2.0 * sm * sp * (omega * t).cos())).max(0.0)
        }
    }
}

/// `ln |f₋ + f̄₊|²`, finite far beyond the underflow of [`laser_factor`] for
/// Gaussian switching (`−∞` at exact zeros of the top-hat factor).
pub fn log_laser_factor(sw: &Switching, omega: f64, omega_a: f64) -> f64 {
    let t = sw.t();
    match sw.kind() {
        SwitchingKind::Gaussian => {
            let x = (omega * omega_a * t * t).abs();
            let ln_cosh = x + (0.5 * (1.0 + (-2.0 * x).exp())).ln();
            (8.0 * PI * t * t).ln() - (omega * omega + omega_a * omega_a) * t * t + 2.0 * ln_cosh
        }
        SwitchingKind::TopHat => laser_factor(sw, omega, omega_a).ln(),
    }
}

/// The Gaussian laser factor as commonly displayed,
/// `8π T² e^{−(ω²+Ω²)T²/2} cosh²(ωΩT²/2)`; a diagnostic only.
pub fn displayed_laser_factor(t: f64, omega: f64, omega_a: f64) -> f64 {
    8.0 * PI
        * t
        * t
        * (-(omega * omega + omega_a * omega_a) * t * t / 2.0).exp()
        * (omega * omega_a * t * t / 2.0).cosh().powi(2)
}

/// `|∫ χ(t) 2cos(ωt) e^{iΩt} dt|²` by adaptive quadrature — the oracle for
/// [`laser_factor`].
///
/// # Errors
/// [`LaserError::NonConvergence`] if the quadrature misses its target.
pub fn laser_factor_numeric(sw: &Switching, omega: f64, omega_a: f64) -> Result<f64> {
    let t = sw.t();
    let integrand = |time: f64| {
        Complex64::from_polar(2.0 * sw.chi(time) * (omega * time).cos(), omega_a * time)
    };
    let tol = Tolerance::new(1e-12, 1e-22 * t);
    let res = match sw.kind() {
        SwitchingKind::TopHat => integrate_1d(integrand, 0.0, t, tol)?,
        SwitchingKind::Gaussian => {
            let cycles = ((omega + omega_a) * t).abs().ceil().max(1.0) as i32;
            let n = 2 * GAUSSIAN_CUTOFF as i32 * cycles;
            let breaks: Vec<f64> = (0..=n)
                .map(|k| (f64::from(k) / f64::from(cycles) - GAUSSIAN_CUTOFF) * t)
                .collect();
            integrate_1d_with_breaks(integrand, &breaks, tol)?
        }
    };
    Ok(res.value.norm_sqr())
}

/// Laser transition probability and its two contributions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaserProbability {
    /// `P_(±) = laser_term + vacuum_term`.
    pub p: f64,
    /// `g |α|² |f₋ + f̄₊|²`.
    pub laser_term: f64,
    /// `g γ_N |f_(±)|²`.
    pub vacuum_term: f64,
    /// The coupling `g` used.
    pub g: f64,
    /// The `γ_N` used (direct sum excluding the pumped mode).
    pub gamma: f64,
}

fn window_detuning(omega: f64, omega_a: f64, kind: TransitionKind) -> f64 {
    sqed_interaction::detuning(omega, omega_a, kind)
}

/// `P_(±) = g(|α|²|f₋ + f̄₊|² + γ_N|f_(±)|²)` for an atom in the beam with
/// vacuum cutoff `n`.
pub fn laser_probability(
    atom: &GaussianAtom,
    beam: &HermiteBeam,
    sw: &Switching,
    kind: TransitionKind,
    n: VacuumCutoff,
) -> LaserProbability {
    let g = crate::coupling_g(atom.sigma(), beam);
    let gamma = gamma_sum(n);
    let omega = laser_omega(beam);
    let laser_term = g * beam.alpha_sq() * laser_factor(sw, omega, atom.omega_a());
    let vacuum_term = g * gamma * time_window(sw, window_detuning(omega, atom.omega_a(), kind));
    LaserProbability {
        p: laser_term + vacuum_term,
        laser_term,
        vacuum_term,
        g,
        gamma,
    }
}

/// The ratio `ζ_N` with its bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Zeta {
    /// `γ_N |f_(±)|² / (|α|² |f₋ + f̄₊|²)` (may underflow to 0).
    pub value: f64,
    /// `ln ζ_N`; finite unless `γ_N = 0` or the vacuum window vanishes.
    pub log_value: f64,
    /// The claimed bound `γ_N / (4|α|²)`.
    pub bound: f64,
    /// The supremum over all times for Gaussian switching, `γ_N/|α|²`;
    /// `None` for top-hat switching, where `ζ` is unbounded.
    pub sup_bound: Option<f64>,
}

/// `ζ_N` for an atom in the beam.
///
/// # Errors
/// [`LaserError::InvalidParameter`] for `|α|² = 0`;
/// [`LaserError::VanishingLaserTerm`] where the laser factor vanishes.
pub fn zeta(
    atom: &GaussianAtom,
    beam: &HermiteBeam,
    sw: &Switching,
    kind: TransitionKind,
    n: VacuumCutoff,
) -> Result<Zeta> {
    let alpha_sq = beam.alpha_sq();
    if !(alpha_sq > 0.0) {
        return Err(LaserError::InvalidParameter(
            "ζ needs a positive photon number".into(),
        ));
    }
    let gamma = gamma_sum(n);
    let omega = laser_omega(beam);
    let log_laser = log_laser_factor(sw, omega, atom.omega_a());
    if !log_laser.is_finite() {
        return Err(LaserError::VanishingLaserTerm { log_laser });
    }
    let log_window = log_time_window(sw, window_detuning(omega, atom.omega_a(), kind));
    let log_value = gamma.ln() + log_window - alpha_sq.ln() - log_laser;
    Ok(Zeta {
        value: log_value.exp(),
        log_value,
        bound: gamma / (4.0 * alpha_sq),
        sup_bound: match sw.kind() {
            SwitchingKind::Gaussian => Some(gamma / alpha_sq),
            SwitchingKind::TopHat => None,
        },
    })
}
