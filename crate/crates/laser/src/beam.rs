//! Hermite-Gaussian beam modes, their long-wavelength (separable) limit and
//! finite-difference checks of the paraxial approximation.

use num_complex::Complex64;
use sqed_quadrature::{integrate_2d, Domain2d, Tolerance};
use sqed_specfun::hermite_h;
use std::f64::consts::{PI, SQRT_2};

use crate::{LaserError, Result};

/// Transverse polarization of the beam.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BeamPolarization {
    /// Linear polarization along `x`.
    EpsX,
    /// Linear polarization along `y`.
    EpsY,
}

impl BeamPolarization {
    /// Cartesian unit vector.
    pub fn vector(&self) -> [f64; 3] {
        match self {
            BeamPolarization::EpsX => [1.0, 0.0, 0.0],
            BeamPolarization::EpsY => [0.0, 1.0, 0.0],
        }
    }
}

/// A Hermite-Gaussian beam with waist `w0` at `z = 0`, central wavenumber
/// `k` and mean photon number `|α|²` in the pumped mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteBeam {
    w0: f64,
    k: f64,
    alpha_sq: f64,
    pol: BeamPolarization,
}

impl HermiteBeam {
    /// A beam of waist `w0` (m), wavenumber `k` (1/m) and photon number
    /// `alpha_sq`.
    ///
    /// # Errors
    /// [`LaserError::InvalidParameter`] unless `w0, k > 0` and
    /// `alpha_sq ≥ 0` are finite.
    pub fn new(w0: f64, k: f64, alpha_sq: f64, pol: BeamPolarization) -> Result<Self> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(w0) || !ok(k) {
            return Err(LaserError::InvalidParameter(format!(
                "waist and wavenumber must be positive, got w0 = {w0}, k = {k}"
            )));
        }
        if !(alpha_sq.is_finite() && alpha_sq >= 0.0) {
            return Err(LaserError::InvalidParameter(format!(
                "photon number must be non-negative, got {alpha_sq}"
            )));
        }
        Ok(Self {
            w0,
            k,
            alpha_sq,
            pol,
        })
    }
    /// Waist `w₀` (m).
    pub fn w0(&self) -> f64 {
        self.w0
    }
    /// Central wavenumber `k` (1/m).
    pub fn k(&self) -> f64 {
        self.k
    }
    /// Mean photon number `|α|²`.
    pub fn alpha_sq(&self) -> f64 {
        self.alpha_sq
    }
    /// Polarization.
    pub fn pol(&self) -> BeamPolarization {
        self.pol
    }
    /// Same beam with another photon number.
    ///
    /// # Errors
    /// As [`HermiteBeam::new`].
    pub fn with_alpha_sq(&self, alpha_sq: f64) -> Result<Self> {
        Self::new(self.w0, self.k, alpha_sq, self.pol)
    }
    /// Rayleigh length `z_R = k w₀²/2`.
    pub fn rayleigh_length(&self) -> f64 {
        0.5 * self.k * self.w0 * self.w0
    }
    /// Beam radius `w(z) = w₀ √(1 + (z/z_R)²)`.
    pub fn width(&self, z: f64) -> f64 {
        self.w0 * (1.0 + (z / self.rayleigh_length()).powi(2)).sqrt()
    }
    /// Inverse radius of curvature `1/R(z) = z/(z² + z_R²)` (zero at the
    /// waist, where `R` diverges).
    pub fn inverse_curvature(&self, z: f64) -> f64 {
        let zr = self.rayleigh_length();
        z / (z * z + zr * zr)
    }
    /// Gouy phase `ψ_G(z) = arctan(z/z_R)`.
    pub fn gouy_phase(&self, z: f64) -> f64 {
        (z / self.rayleigh_length()).atan()
    }
}

/// Original Hermite orders `(m1, m2)` of a beam mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BeamModeIndex {
    /// Order along `x`.
    pub m1: u32,
    /// Order along `y`.
    pub m2: u32,
}

impl BeamModeIndex {
    /// Index `(m1, m2)`.
    pub fn new(m1: u32, m2: u32) -> Self {
        Self { m1, m2 }
    }
    /// Whether the mode couples to the centred atom's `x` dipole
    /// (odd `m1`, even `m2`).
    pub fn couples(&self) -> bool {
        !self.m1.is_multiple_of(2) && self.m2.is_multiple_of(2)
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `1/√(2^{m1+m2−1} m1! m2! π w²)`.
pub(crate) fn hermite_norm(m: BeamModeIndex, w: f64) -> f64 {
    let n =
        2f64.powi(m.m1 as i32 + m.m2 as i32 - 1) * factorial(m.m1) * factorial(m.m2) * PI * w * w;
    1.0 / n.sqrt()
}

/// Complex paraxial amplitude `A_m(x, y, z)` (without `e^{ikz}`).
fn amplitude(beam: &HermiteBeam, m: BeamModeIndex, x: f64, y: f64, z: f64) -> Result<Complex64> {
    let w = beam.width(z);
    let (u, v) = (SQRT_2 * x / w, SQRT_2 * y / w);
    let rho2 = x * x + y * y;
    let real =
        hermite_h(m.m1, u)? * hermite_h(m.m2, v)? * (-rho2 / (w * w)).exp() * hermite_norm(m, w);
    let theta = 0.5 * beam.k * rho2 * beam.inverse_curvature(z)
        - f64::from(m.m1 + m.m2 + 1) * beam.gouy_phase(z);
    Ok(Complex64::from_polar(real, theta))
}

/// Full Hermite-Gaussian mode `A_m(r) e^{ikz} ε` at the Cartesian point
/// `(x, y, z)`, `L²`-normalized in every transverse plane.
///
/// # Errors
/// Hermite orders above the supported maximum.
pub fn hermite_mode_full(
    beam: &HermiteBeam,
    m: BeamModeIndex,
    point: [f64; 3],
) -> Result<[Complex64; 3]> {
    let [x, y, z] = point;
    let a = amplitude(beam, m, x, y, z)? * Complex64::from_polar(1.0, beam.k * z);
    let e = beam.pol.vector();
    Ok([a * e[0], a * e[1], a * e[2]])
}

/// Transverse function `φ_m(x, y)` of the long-wavelength limit, the full
/// amplitude frozen at the waist.
///
/// # Errors
/// Hermite orders above the supported maximum.
pub fn separable_mode(beam: &HermiteBeam, m: BeamModeIndex, x: f64, y: f64) -> Result<f64> {
    let w = beam.w0;
    Ok(hermite_h(m.m1, SQRT_2 * x / w)?
        * hermite_h(m.m2, SQRT_2 * y / w)?
        * (-(x * x + y * y) / (w * w)).exp()
        * hermite_norm(m, w))
}

/// Relative finite-difference step in units of `w₀` and `z_R`.
const FD_STEP: f64 = 1e-2;

/// Fourth-order central second derivative.
fn d2<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h))
        / (12.0 * h * h)
}

/// Fourth-order central first derivative.
fn d1<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

/// Derivatives `(Δ_Γ A, ∂_z A, ∂_z² A)` of an amplitude by finite differences.
fn derivatives<F>(beam: &HermiteBeam, a: F, p: [f64; 3]) -> (Complex64, Complex64, Complex64)
where
    F: Fn(f64, f64, f64) -> Complex64,
{
    let [x, y, z] = p;
    let hx = FD_STEP * beam.w0;
    let hz = FD_STEP * beam.rayleigh_length();
    let lap = d2(|s| a(s, y, z), x, hx) + d2(|s| a(x, s, z), y, hx);
    (lap, d1(|s| a(x, y, s), z, hz), d2(|s| a(x, y, s), z, hz))
}

fn checked_amplitude(
    beam: &HermiteBeam,
    m: BeamModeIndex,
) -> Result<impl Fn(f64, f64, f64) -> Complex64 + '_> {
    // Validate the orders once; afterwards evaluation cannot fail.
    amplitude(beam, m, 0.0, 0.0, 0.0)?;
    Ok(move |x, y, z| amplitude(beam, m, x, y, z).expect("orders validated"))
}

/// `|[Δ_Γ + 2ik∂_z] A_m| / (k² |A_m|)` at `point`, by fourth-order finite
/// differences with steps `10⁻² w₀` and `10⁻² z_R`.  The Hermite-Gaussian
/// amplitude solves the paraxial equation exactly, so this measures the
/// discretization error only.
///
/// # Errors
/// Hermite orders above the supported maximum.
pub fn paraxial_residual(beam: &HermiteBeam, m: BeamModeIndex, point: [f64; 3]) -> Result<f64> {
    let a = checked_amplitude(beam, m)?;
    let (lap, dz, _) = derivatives(beam, &a, point);
    let i = Complex64::new(0.0, 1.0);
    Ok((lap + 2.0 * i * beam.k * dz).norm()
        / (beam.k * beam.k * a(point[0], point[1], point[2]).norm()))
}

/// `|(Δ + k²)(A_m e^{ikz})| / (k² |A_m|)`: how far the zeroth-order
/// paraxial mode is from solving the Helmholtz equation.  The neglected
/// term `∂_z² A` makes this of order `(k z_R)⁻²`, growing as `k w₀` shrinks.
///
/// # Errors
/// Hermite orders above the supported maximum.
pub fn helmholtz_residual(beam: &HermiteBeam, m: BeamModeIndex, point: [f64; 3]) -> Result<f64> {
    let a = checked_amplitude(beam, m)?;
    let (lap, dz, dzz) = derivatives(beam, &a, point);
    let i = Complex64::new(0.0, 1.0);
    Ok((lap + 2.0 * i * beam.k * dz + dzz).norm()
        / (beam.k * beam.k * a(point[0], point[1], point[2]).norm()))
}

/// The paraxial residual of the separable mode `φ_m` used as a
/// `z`-independent amplitude: `|Δ_Γ φ_m| / (k² |φ_m|)`.  Unlike the full
/// mode it does not vanish; it documents the price of freezing `z`.
///
/// # Errors
/// Hermite orders above the supported maximum.
pub fn separable_paraxial_residual(
    beam: &HermiteBeam,
    m: BeamModeIndex,
    point: [f64; 3],
) -> Result<f64> {
    separable_mode(beam, m, 0.0, 0.0)?;
    let a = |x: f64, y: f64, _z: f64| {
        Complex64::new(
            separable_mode(beam, m, x, y).expect("orders validated"),
            0.0,
        )
    };
    let (lap, _, _) = derivatives(beam, a, point);
    Ok(lap.norm() / (beam.k * beam.k * a(point[0], point[1], point[2]).norm()))
}

/// Relative `L²` distance `‖A_m(·, z) − φ_m‖ / ‖φ_m‖` between the full mode
/// in the plane `z` and the separable mode: zero at the waist, growing with
/// `|z|/z_R`.
///
/// # Errors
/// Hermite orders above the supported maximum; quadrature failure.
pub fn separable_deviation(beam: &HermiteBeam, m: BeamModeIndex, z: f64) -> Result<f64> {
    let a = checked_amplitude(beam, m)?;
    let extent = (4.0 + f64::from(m.m1.max(m.m2)).sqrt()) * beam.width(z).max(beam.w0);
    let dist2 = integrate_2d(
        |x, y| (a(x, y, z) - separable_mode(beam, m, x, y).expect("orders validated")).norm_sqr(),
        Domain2d::Rectangle {
            x0: -extent,
            x1: extent,
            y0: -extent,
            y1: extent,
        },
        Tolerance::new(1e-9, 1e-18),
    )?;
    Ok(dist2.value.max(0.0).sqrt())
}
