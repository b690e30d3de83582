//! The Gaussian two-level atom and resonance specifications.

use sqed_cavity::{wavenumbers, CylinderGeometry, ModeIndex, Polarization};
use std::f64::consts::PI;

use crate::{InteractionError, Result};

/// Proton mass in kg (CODATA 2018); the default oscillator mass.
pub const PROTON_MASS: f64 = 1.672_621_923_69e-27;

/// A two-level atom: ground state and first longitudinal excitation of an
/// isotropic 3D harmonic oscillator.
///
/// ```text
/// ψ_g = π^{-3/4} σ^{-3/2} exp(−(r² + z'²)/2σ²),   ψ_e = √2 (z'/σ) ψ_g,
/// ```
///
/// with `z' = z − center_z` in the field's quantization frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianAtom {
    sigma: f64,
    omega_a: f64,
    center_z: f64,
}

impl GaussianAtom {
    /// An atom with oscillator length `sigma` (m), gap `omega_a` (rad/s) and
    /// axial position `center_z` (m).
    ///
    /// # Errors
    /// [`InteractionError::InvalidParameter`] for non-positive or non-finite
    /// `sigma`, `omega_a`, or a non-finite centre.
    pub fn new(sigma: f64, omega_a: f64, center_z: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(InteractionError::InvalidParameter(format!(
                "oscillator length must be positive, got {sigma}"
            )));
        }
        if !(omega_a > 0.0 && omega_a.is_finite()) {
            return Err(InteractionError::InvalidParameter(format!(
                "atomic gap must be positive, got {omega_a}"
            )));
        }
        if !center_z.is_finite() {
            return Err(InteractionError::InvalidParameter(format!(
                "atom centre must be finite, got {center_z}"
            )));
        }
        Ok(Self {
            sigma,
            omega_a,
            center_z,
        })
    }

    /// An atom at the cavity centre `z = L/2`.
    ///
    /// # Errors
    /// As [`GaussianAtom::new`].
    pub fn centered(geom: &CylinderGeometry, sigma: f64, omega_a: f64) -> Result<Self> {
        Self::new(sigma, omega_a, 0.5 * geom.length())
    }

    /// A centred atom whose gap is fixed by a [`Resonance`].
    ///
    /// # Errors
    /// As [`GaussianAtom::new`] and [`Resonance::omega`].
    pub fn resonant(geom: &CylinderGeometry, sigma: f64, resonance: Resonance) -> Result<Self> {
        Self::centered(geom, sigma, resonance.omega(geom)?)
    }

    /// Oscillator length `√(ħ/(M Ω_A))` of a particle of mass `mass` (kg).
    ///
    /// With the proton mass and `Ω_A = 6·10¹² s⁻¹` this is `≈ 1.0·10⁻¹⁰ m`,
    /// the default length scale of the scans.
    pub fn oscillator_length(hbar: f64, mass: f64, omega_a: f64) -> f64 {
        (hbar / (mass * omega_a)).sqrt()
    }

    /// Oscillator length `σ` (m).
    pub fn sigma(&self) -> f64 {
        self.sigma
    }
    /// Atomic gap `Ω_A` (rad/s).
    pub fn omega_a(&self) -> f64 {
        self.omega_a
    }
    /// Axial position of the atom (m).
    pub fn center_z(&self) -> f64 {
        self.center_z
    }

    /// Same atom with a different gap.
    pub fn with_omega_a(mut self, omega_a: f64) -> Result<Self> {
        self = Self::new(self.sigma, omega_a, self.center_z)?;
        Ok(self)
    }

    /// Whether the atom sits at the cavity centre (required by the closed
    /// forms, which rely on the parity about `L/2`).
    pub fn is_centered(&self, geom: &CylinderGeometry) -> bool {
        (self.center_z - 0.5 * geom.length()).abs() <= 1e-12 * geom.length()
    }

    /// Advisory warnings: the atom should be well localized, `R/σ` and
    /// `L/σ` of at least 10, and inside the cavity.
    pub fn advisories(&self, geom: &CylinderGeometry) -> Vec<String> {
        let mut out = Vec::new();
        let r = geom.radius() / self.sigma;
        let l = geom.length() / self.sigma;
        if r < 10.0 {
            out.push(format!(
                "R/σ = {r:.3} below 10: atom not localized transversally"
            ));
        }
        if l < 10.0 {
            out.push(format!(
                "L/σ = {l:.3} below 10: atom not localized longitudinally"
            ));
        }
        if self.center_z < 0.0 || self.center_z > geom.length() {
            out.push(format!(
                "atom centre z = {} outside the cavity",
                self.center_z
            ));
        }
        out
    }
}

/// How the atomic gap is specified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Resonance {
    /// `Ω_A` given directly in rad/s.
    Frequency(f64),
    /// `Ω_A = ω_{(m1,0),l}` of the axially symmetric mode with radial number
    /// `m1` and longitudinal number `l` (so that `k_l = πl/L`).
    Mode {
        /// Radial number of the resonant subfield.
        m1: u32,
        /// Longitudinal number.
        l: u32,
    },
}

impl Resonance {
    /// The gap `Ω_A` in rad/s.
    ///
    /// # Errors
    /// Invalid mode numbers or a non-positive frequency.
    pub fn omega(&self, geom: &CylinderGeometry) -> Result<f64> {
        match *self {
            Resonance::Frequency(w) => {
                if w > 0.0 && w.is_finite() {
                    Ok(w)
                } else {
                    Err(InteractionError::InvalidParameter(format!(
                        "resonance frequency must be positive, got {w}"
                    )))
                }
            }
            Resonance::Mode { m1, l } => {
                let idx = ModeIndex::new(m1, 0, l, Polarization::Mu2)?;
                Ok(wavenumbers(geom, &idx)?.omega)
            }
        }
    }
}

/// Wave functions and smearing vector at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomProfile {
    /// Ground state `ψ_g` (m^{-3/2}).
    pub psi_g: f64,
    /// Excited state `ψ_e` (m^{-3/2}).
    pub psi_e: f64,
    /// Smearing vector `F = r_e ψ_g ψ_e` in cylindrical components
    /// `(r, φ, z)` (m^{-2}); the azimuthal component vanishes.
    pub f: [f64; 3],
}

/// Evaluates the atomic states and the smearing vector at cylindrical
/// radius `r` and axial position `z` of the field frame.
pub fn atom_profile(atom: &GaussianAtom, r: f64, z: f64) -> AtomProfile {
    let s = atom.sigma;
    let zp = z - atom.center_z;
    let g = PI.powf(-0.75) * s.powf(-1.5) * (-(r * r + zp * zp) / (2.0 * s * s)).exp();
    let e = std::f64::consts::SQRT_2 * (zp / s) * g;
    let ge = g * e;
    AtomProfile {
        psi_g: g,
        psi_e: e,
        f: [r * ge, 0.0, zp * ge],
    }
}
