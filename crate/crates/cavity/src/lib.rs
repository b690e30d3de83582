//! The ideal cylindrical cavity: geometry, mode labels, scalar Helmholtz
//! solutions and the exact 3D electric/magnetic eigenmodes.
//!
//! A mode is labelled by `(m1, m2, l, μ)`: `m1 ≥ 1` counts radial zeros,
//! `m2` is the azimuthal number (negative values give the `e^{−i|m2|φ}`
//! partners), `l ≥ 0` the longitudinal number and `μ` the polarization.
//! [`Polarization::Mu1`] is the TE-like family (transverse wavenumber from a
//! zero of `J'_{m2}`, no longitudinal electric component);
//! [`Polarization::Mu2`] is built on zeros of `J_{m2}` and carries the
//! longitudinal correction.
//!
//! Fields are expressed in cylindrical components `(r, φ, z)` with the
//! cavity occupying `0 ≤ r ≤ R`, `0 ≤ z ≤ L`.  All quantities are SI.

mod checks;
mod mode;

pub use checks::{
    boundary_residuals, curl_fd_residual, helmholtz_fd_residual, BoundaryResiduals, Wall,
};
pub use mode::{CavityMode, FieldJet, ModeFields};

use num_complex::Complex64;
use sqed_specfun::{bessel_zero, SpecFunError, ZeroKind};
use thiserror::Error;

/// Complex 3-vector in cylindrical components `(r, φ, z)`.
pub type CVec3 = [Complex64; 3];

/// Physical constants (SI).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Speed of light, m/s.
    pub c: f64,
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Vacuum permittivity, F/m.
    pub eps0: f64,
    /// Elementary charge, C.
    pub e: f64,
}

/// CODATA 2018 values.
pub const SI: PhysicalConstants = PhysicalConstants {
    c: 299_792_458.0,
    hbar: 1.054_571_817e-34,
    eps0: 8.854_187_812_8e-12,
    e: 1.602_176_634e-19,
};

/// Errors raised by the cavity module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CavityError {
    /// Non-positive or non-finite radius/length.
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    /// The label does not describe a nonzero mode.
    #[error("invalid mode index: {0}")]
    InvalidMode(String),
    /// Evaluation point outside the closed cavity.
    #[error("point (r = {r}, z = {z}) outside the cavity 0 ≤ r ≤ {radius}, 0 ≤ z ≤ {length}")]
    OutOfDomain {
        /// Radial coordinate.
        r: f64,
        /// Axial coordinate.
        z: f64,
        /// Cavity radius.
        radius: f64,
        /// Cavity length.
        length: f64,
    },
    /// Propagated special-function failure (e.g. unsupported Bessel order).
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, CavityError>;

/// Radius and length of the cavity plus the physical constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylinderGeometry {
    radius: f64,
    length: f64,
    constants: PhysicalConstants,
}

impl CylinderGeometry {
    /// A cavity of radius `radius` and length `length` (meters) with SI
    /// constants.
    ///
    /// # Errors
    /// [`CavityError::InvalidGeometry`] unless both are positive and finite.
    pub fn new(radius: f64, length: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite() && length > 0.0 && length.is_finite()) {
            return Err(CavityError::InvalidGeometry(format!(
                "R = {radius}, L = {length}; both must be positive and finite"
            )));
        }
        Ok(Self {
            radius,
            length,
            constants: SI,
        })
    }

    /// Cavity radius `R`.
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Cavity length `L`.
    pub fn length(&self) -> f64 {
        self.length
    }

    /// Bundled physical constants.
    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    /// Whether `(r, z)` lies in the closed cavity (with a relative slack of
    /// `1e-12` for points placed exactly on the walls by floating-point
    /// arithmetic).
    pub fn contains(&self, p: &CylPoint) -> bool {
        let sr = 1e-12 * self.radius;
        let sz = 1e-12 * self.length;
        p.r >= -sr && p.r <= self.radius + sr && p.z >= -sz && p.z <= self.length + sz
    }

    fn check(&self, p: &CylPoint) -> Result<()> {
        if self.contains(p) && p.phi.is_finite() {
            Ok(())
        } else {
            Err(CavityError::OutOfDomain {
                r: p.r,
                z: p.z,
                radius: self.radius,
                length: self.length,
            })
        }
    }
}

/// The two polarization families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarization {
    /// TE-like: transverse wavenumber from zeros of `J'_{m2}`, `u_z ≡ 0`.
    Mu1,
    /// Transverse wavenumber from zeros of `J_{m2}`; carries `u_z`.
    Mu2,
}

impl Polarization {
    /// Both variants, `Mu1` first.
    pub const ALL: [Polarization; 2] = [Polarization::Mu1, Polarization::Mu2];
}

/// Mode label `(m1, m2, l, μ)`.
///
/// The combination `l = 0` with [`Polarization::Mu1`] is the zero function
/// (`sin(0·z)`) and is rejected at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeIndex {
    m1: u32,
    m2: i32,
    l: u32,
    pol: Polarization,
}

impl ModeIndex {
    /// Validated constructor.
    ///
    /// # Errors
    /// [`CavityError::InvalidMode`] for `m1 = 0`, `|m2| > 64`, or
    /// `l = 0` with `Mu1`.
    pub fn new(m1: u32, m2: i32, l: u32, pol: Polarization) -> Result<Self> {
        if m1 == 0 {
            return Err(CavityError::InvalidMode("m1 must be at least 1".into()));
        }
        if m2.unsigned_abs() > sqed_specfun::MAX_BESSEL_ORDER {
            return Err(CavityError::InvalidMode(format!(
                "|m2| = {} exceeds the supported Bessel order {}",
                m2.unsigned_abs(),
                sqed_specfun::MAX_BESSEL_ORDER
            )));
        }
        if l == 0 && pol == Polarization::Mu1 {
            return Err(CavityError::InvalidMode(
                "l = 0 with the first polarization is identically zero".into(),
            ));
        }
        Ok(Self { m1, m2, l, pol })
    }

    /// Radial mode number.
    pub fn m1(&self) -> u32 {
        self.m1
    }
    /// Azimuthal mode number.
    pub fn m2(&self) -> i32 {
        self.m2
    }
    /// Longitudinal mode number.
    pub fn l(&self) -> u32 {
        self.l
    }
    /// Polarization.
    pub fn pol(&self) -> Polarization {
        self.pol
    }

    /// All valid labels with `m1 ≤ m1_max`, `0 ≤ m2 ≤ m2_max`, `l ≤ l_max`,
    /// both polarizations, in lexicographic order.
    pub fn enumerate(m1_max: u32, m2_max: u32, l_max: u32) -> Vec<ModeIndex> {
        let mut out = Vec::new();
        for m1 in 1..=m1_max {
            for m2 in 0..=m2_max as i32 {
                for l in 0..=l_max {
                    for pol in Polarization::ALL {
                        if let Ok(idx) = ModeIndex::new(m1, m2, l, pol) {
                            out.push(idx);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Point in cylindrical coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylPoint {
    /// Radial coordinate (m).
    pub r: f64,
    /// Azimuth (rad).
    pub phi: f64,
    /// Axial coordinate (m), measured from the `z = 0` cap.
    pub z: f64,
}

impl CylPoint {
    /// Constructor.
    pub fn new(r: f64, phi: f64, z: f64) -> Self {
        Self { r, phi, z }
    }

    /// From Cartesian coordinates.
    pub fn from_cartesian(x: f64, y: f64, z: f64) -> Self {
        Self {
            r: x.hypot(y),
            phi: y.atan2(x),
            z,
        }
    }
}

/// Converts cylindrical vector components at azimuth `phi` to Cartesian.
pub fn to_cartesian(v: &CVec3, phi: f64) -> CVec3 {
    let (s, c) = phi.sin_cos();
    [v[0] * c - v[1] * s, v[0] * s + v[1] * c, v[2]]
}

/// Transverse, longitudinal and total wavenumbers plus the angular frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveNumbers {
    /// `k⊥ = χ/R` (1/m).
    pub k_perp: f64,
    /// `k_l = πl/L` (1/m).
    pub k_long: f64,
    /// `ω = c·√(k⊥² + k_l²)` (rad/s).
    pub omega: f64,
}

impl WaveNumbers {
    /// `|k| = √(k⊥² + k_l²)`.
    pub fn k_abs(&self) -> f64 {
        self.k_perp.hypot(self.k_long)
    }
}

/// The Bessel zero `χ` fixing the transverse wavenumber of `idx`.
///
/// # Errors
/// Propagates special-function errors.
pub fn transverse_zero(idx: &ModeIndex) -> Result<f64> {
    let kind = match idx.pol {
        Polarization::Mu1 => ZeroKind::OfBesselDerivative,
        Polarization::Mu2 => ZeroKind::OfBessel,
    };
    Ok(bessel_zero(kind, idx.m2.unsigned_abs(), idx.m1 as usize)?)
}

/// Wavenumbers and frequency of a mode.
///
/// # Errors
/// Propagates special-function errors.
pub fn wavenumbers(geom: &CylinderGeometry, idx: &ModeIndex) -> Result<WaveNumbers> {
    let chi = transverse_zero(idx)?;
    let k_perp = chi / geom.radius;
    let k_long = std::f64::consts::PI * f64::from(idx.l) / geom.length;
    let omega = geom.constants.c * k_perp.hypot(k_long);
    Ok(WaveNumbers {
        k_perp,
        k_long,
        omega,
    })
}

/// Normalization of the longitudinal functions: `√(2/L)` for `l ≥ 1` and
/// `√(1/L)` for the constant `l = 0` function, so that every longitudinal
/// function has unit norm on `[0, L]`.
pub fn longitudinal_norm(length: f64, l: u32) -> f64 {
    if l == 0 {
        (1.0 / length).sqrt()
    } else {
        (2.0 / length).sqrt()
    }
}

/// Values of the scalar Helmholtz solutions at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarModes {
    /// `ψ_{m,μ}(r, φ) = c_{m,μ} J_{m2}(k⊥ r) e^{i m2 φ}`.
    pub psi_transverse: Complex64,
    /// `n_l sin(k_l z)`.
    pub psi_long_mu1: f64,
    /// `n_l cos(k_l z)`.
    pub psi_long_mu2: f64,
}

/// Evaluates the scalar transverse and longitudinal solutions.
///
/// # Errors
/// [`CavityError::OutOfDomain`] outside the cavity; special-function errors.
pub fn scalar_modes(geom: &CylinderGeometry, idx: &ModeIndex, p: &CylPoint) -> Result<ScalarModes> {
    geom.check(p)?;
    let mode = CavityMode::new(geom, *idx)?;
    Ok(mode.scalar(p))
}

/// Electric (`ε`) and magnetic (`κ`) polarization vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationVectors {
    /// Electric polarization vector.
    pub epsilon: [f64; 3],
    /// Magnetic polarization vector.
    pub kappa: [f64; 3],
}

/// Polarization vectors of a mode; all are unit vectors.
///
/// # Errors
/// Propagates special-function errors.
pub fn polarization_vectors(
    geom: &CylinderGeometry,
    idx: &ModeIndex,
) -> Result<PolarizationVectors> {
    let w = wavenumbers(geom, idx)?;
    let k = w.k_abs();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ok(match idx.pol {
        Polarization::Mu1 => PolarizationVectors {
            epsilon: [s, -s, 0.0],
            kappa: [w.k_long * s / k, w.k_long * s / k, w.k_perp / k],
        },
        Polarization::Mu2 => PolarizationVectors {
            epsilon: [-w.k_long * s / k, -w.k_long * s / k, w.k_perp / k],
            kappa: [s, -s, 0.0],
        },
    })
}

/// Evaluates the electric mode `u` and magnetic mode `v` of `idx`.
///
/// # Errors
/// [`CavityError::OutOfDomain`] outside the cavity; special-function errors.
pub fn em_mode_3d(geom: &CylinderGeometry, idx: &ModeIndex, p: &CylPoint) -> Result<ModeFields> {
    geom.check(p)?;
    Ok(CavityMode::new(geom, *idx)?.fields(p))
}
