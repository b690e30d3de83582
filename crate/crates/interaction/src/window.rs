//! Switching functions and their time windows `f(Δ) = ∫ χ(t) e^{2iΔt} dt`.
//!
//! * Top hat: `χ = 1` on `[0, T]`, so `|f|² = T² sinc²(ΔT)`.
//! * Gaussian: `χ = exp(−t²/2T²)`, so `f = √(2π) T e^{−2Δ²T²}` and
//!   `|f|² = 2π T² e^{−4Δ²T²}`.
//!
//! The frequently quoted form `2π T² e^{−2Δ²T²}` ([`displayed_gaussian_window`])
//! is *not* the window of `exp(−t²/2T²)`: it equals twice the exact window of
//! the narrower switching `exp(−t²/T²)`, i.e. `2·|f|²` evaluated at `T/√2`.
//! The exact form is used throughout and checked against time quadrature.

use num_complex::Complex64;
use sqed_quadrature::{integrate_1d, integrate_1d_with_breaks, Tolerance};
use sqed_specfun::sinc;
use std::f64::consts::PI;

use crate::{InteractionError, Result};

/// Shape of the switching function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SwitchingKind {
    /// Sudden switching: `χ = 1` on `[0, T]`, zero elsewhere.
    TopHat,
    /// Adiabatic switching `χ = exp(−t²/2T²)`.
    Gaussian,
}

/// A switching function with its interaction time `T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Switching {
    kind: SwitchingKind,
    t: f64,
}

impl Switching {
    /// A switching function of the given kind and time `t` (s).
    ///
    /// # Errors
    /// [`InteractionError::InvalidParameter`] unless `t > 0` is finite.
    pub fn new(kind: SwitchingKind, t: f64) -> Result<Self> {
        if t > 0.0 && t.is_finite() {
            Ok(Self { kind, t })
        } else {
            Err(InteractionError::InvalidParameter(format!(
                "interaction time must be positive, got {t}"
            )))
        }
    }
    /// Top-hat switching of duration `t`.
    ///
    /// # Errors
    /// As [`Switching::new`].
    pub fn top_hat(t: f64) -> Result<Self> {
        Self::new(SwitchingKind::TopHat, t)
    }
    /// Gaussian switching of width `t`.
    ///
    /// # Errors
    /// As [`Switching::new`].
    pub fn gaussian(t: f64) -> Result<Self> {
        Self::new(SwitchingKind::Gaussian, t)
    }
    /// Shape.
    pub fn kind(&self) -> SwitchingKind {
        self.kind
    }
    /// Interaction time `T` (s).
    pub fn t(&self) -> f64 {
        self.t
    }
    /// `χ(t)`.
    pub fn chi(&self, time: f64) -> f64 {
        match self.kind {
            SwitchingKind::TopHat => {
                if (0.0..=self.t).contains(&time) {
                    1.0
                } else {
                    0.0
                }
            }
            SwitchingKind::Gaussian => (-time * time / (2.0 * self.t * self.t)).exp(),
        }
    }
    /// `∫ χ dt`, the largest possible `|f|`.
    pub fn area(&self) -> f64 {
        match self.kind {
            SwitchingKind::TopHat => self.t,
            SwitchingKind::Gaussian => (2.0 * PI).sqrt() * self.t,
        }
    }
}

/// The transition process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransitionKind {
    /// Spontaneous emission `e → g` (detuning `(ω − Ω_A)/2`).
    Emission,
    /// Vacuum excitation `g → e` (detuning `(ω + Ω_A)/2`).
    Excitation,
}

impl TransitionKind {
    /// `−1` for emission, `+1` for excitation.
    pub fn sign(&self) -> f64 {
        match self {
            TransitionKind::Emission => -1.0,
            TransitionKind::Excitation => 1.0,
        }
    }
}

/// Detuning `Δ = (ω ± Ω_A)/2` of a mode of frequency `omega`.
pub fn detuning(omega: f64, omega_a: f64, kind: TransitionKind) -> f64 {
    0.5 * (omega + kind.sign() * omega_a)
}

/// `|f(Δ)|²` in s², in closed form.
pub fn time_window(sw: &Switching, delta: f64) -> f64 {
    let t = sw.t;
    match sw.kind {
        SwitchingKind::TopHat => {
            let s = sinc(delta * t);
            t * t * s * s
        }
        SwitchingKind::Gaussian => 2.0 * PI * t * t * (-4.0 * delta * delta * t * t).exp(),
    }
}

/// `ln |f(Δ)|²`, finite far beyond the underflow of [`time_window`]
/// (`−∞` at the exact zeros of the top-hat window).
pub fn log_time_window(sw: &Switching, delta: f64) -> f64 {
    let t = sw.t;
    match sw.kind {
        SwitchingKind::TopHat => 2.0 * t.ln() + 2.0 * sinc(delta * t).abs().ln(),
        SwitchingKind::Gaussian => (2.0 * PI * t * t).ln() - 4.0 * delta * delta * t * t,
    }
}

/// The Gaussian window as commonly displayed, `2π T² e^{−2Δ²T²}`.
///
/// Kept only as a diagnostic: it is `2·|f|²` of the exact window at `T/√2`
/// and disagrees with direct evaluation for the switching `exp(−t²/2T²)`.
pub fn displayed_gaussian_window(t: f64, delta: f64) -> f64 {
    2.0 * PI * t * t * (-2.0 * delta * delta * t * t).exp()
}

/// Half-width (in units of `T`) of the interval on which the Gaussian window
/// is integrated numerically; `e^{−72}` makes the truncation invisible even
/// when `|f|` itself is `10⁻⁸` of `∫χ`.
const GAUSSIAN_CUTOFF: f64 = 12.0;

/// `|f(Δ)|²` by direct adaptive quadrature of `∫ χ(t) e^{2iΔt} dt` — the
/// oracle for [`time_window`].
///
/// The Gaussian is integrated over `[−12T, 12T]`, split at the origin and at
/// every `T`; the top hat over `[0, T]`.
///
/// # Errors
/// [`InteractionError::NonConvergence`] if the quadrature misses its target.
pub fn time_integral_numeric(sw: &Switching, delta: f64) -> Result<f64> {
    let t = sw.t;
    let phase = |time: f64| Complex64::from_polar(sw.chi(time), 2.0 * delta * time);
    let tol = Tolerance::new(1e-12, 1e-22 * t);
    let f = match sw.kind {
        SwitchingKind::TopHat => {
            integrate_1d(|x| Complex64::from_polar(1.0, 2.0 * delta * x), 0.0, t, tol)?
        }
        SwitchingKind::Gaussian => {
            let n = 2 * GAUSSIAN_CUTOFF as i32;
            let breaks: Vec<f64> = (0..=n)
                .map(|k| (f64::from(k) - GAUSSIAN_CUTOFF) * t)
                .collect();
            integrate_1d_with_breaks(phase, &breaks, tol)?
        }
    };
    Ok(f.value.norm_sqr())
}
