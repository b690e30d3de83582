//! Reduced smearing function of the centred Gaussian atom in a beam mode.
//!
//! Projecting the `x` component of the smearing vector,
//! `F^{(x)} = x ψ_g ψ_e = √2 π^{-3/2} σ^{-4} x z e^{−(x²+y²+z²)/σ²}`, onto the
//! transverse function `φ_m` gives `F_m(z) = G_m z e^{−z²/σ²}` with
//!
//! ```text
//! G_m = N_m √2 π^{-3/2} σ^{-4} I_x I_y,           a = w₀⁻² + σ⁻²,  ρ = 2/(w₀² a) − 1,
//! I_x = √(π/a) (√2/(w₀ a)) (2k₁+1)! ρ^{k₁} / k₁!,   m1 = 2k₁ + 1,
//! I_y = √(π/a) (2k₂)! ρ^{k₂} / k₂!,                m2 = 2k₂,
//! ```
//!
//! and `G_m = 0` for even `m1` or odd `m2`.  To leading order in `σ/w₀`,
//!
//! ```text
//! G_m ≈ (−1)^{k₁+k₂} (2/(π w₀²)) √((2k₁+1)! (2k₂)!) / (2^{k₁+k₂} k₁! k₂!),
//! ```
//!
//! with relative error `2(1 + k₁ + k₂)(σ/w₀)² + O((σ/w₀)⁴)`.  The leading
//! coefficient is often displayed with `π^{-5/2}` in place of `π^{-1}`; that
//! form is exposed as [`SmearingCoefficient::displayed_leading_order`] for
//! comparison.

use sqed_quadrature::{integrate_2d, Domain2d, Tolerance};
use std::f64::consts::{PI, SQRT_2};

use crate::beam::hermite_norm;
use crate::{separable_mode, BeamModeIndex, HermiteBeam, Result};

/// The coefficient `G_m` of `F_m(z) = G_m z e^{−z²/σ²}` (units m⁻²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmearingCoefficient {
    /// Exact value for the Gaussian atom.
    pub exact: f64,
    /// Leading order in `σ/w₀`.
    pub leading_order: f64,
    /// The leading order as commonly displayed, `π^{-3/2}` times
    /// [`SmearingCoefficient::leading_order`].
    pub displayed_leading_order: f64,
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Closed-form `G_m` for an atom of oscillator length `sigma` in `beam`.
pub fn smearing_coefficient(
    sigma: f64,
    beam: &HermiteBeam,
    m: BeamModeIndex,
) -> SmearingCoefficient {
    if !m.couples() {
        return SmearingCoefficient {
            exact: 0.0,
            leading_order: 0.0,
            displayed_leading_order: 0.0,
        };
    }
    let (k1, k2) = ((m.m1 - 1) / 2, m.m2 / 2);
    let w0 = beam.w0();
    let a = 1.0 / (w0 * w0) + 1.0 / (sigma * sigma);
    let beta = SQRT_2 / w0;
    let rho = beta * beta / a - 1.0;
    let ix =
        (PI / a).sqrt() * (beta / a) * factorial(2 * k1 + 1) * rho.powi(k1 as i32) / factorial(k1);
    let iy = (PI / a).sqrt() * factorial(2 * k2) * rho.powi(k2 as i32) / factorial(k2);
    let exact = hermite_norm(m, w0) * SQRT_2 * PI.powf(-1.5) * sigma.powi(-4) * ix * iy;
    let sign = if (k1 + k2) % 2 == 0 { 1.0 } else { -1.0 };
    let root = (factorial(2 * k1 + 1) * factorial(2 * k2)).sqrt()
        / (2f64.powi((k1 + k2) as i32) * factorial(k1) * factorial(k2));
    let leading_order = sign * 2.0 / (PI * w0 * w0) * root;
    SmearingCoefficient {
        exact,
        leading_order,
        displayed_leading_order: leading_order * PI.powf(-1.5),
    }
}

/// `G_m` by brute-force 2D quadrature of `∬ φ_m(x, y) x ψ_gψ_e / z dx dy`
/// over `[−12σ, 12σ]²`; the selection rules are not imposed.
///
/// # Errors
/// Quadrature failure; Hermite orders above the supported maximum.
pub fn smearing_coefficient_numeric(
    sigma: f64,
    beam: &HermiteBeam,
    m: BeamModeIndex,
) -> Result<f64> {
    separable_mode(beam, m, 0.0, 0.0)?;
    let amp = SQRT_2 * PI.powf(-1.5) * sigma.powi(-4);
    let scale = 2.0 / (PI * beam.w0().powi(2));
    let half = 12.0 * sigma;
    let res = integrate_2d(
        |x, y| {
            separable_mode(beam, m, x, y).expect("orders validated")
                * x
                * amp
                * (-(x * x + y * y) / (sigma * sigma)).exp()
        },
        Domain2d::Rectangle {
            x0: -half,
            x1: half,
            y0: -half,
            y1: half,
        },
        Tolerance::new(1e-11, 1e-14 * scale),
    )?;
    Ok(res.value)
}

/// The reduced smearing function `F_m(z) = G_m z e^{−z²/σ²}` (units m⁻¹),
/// exact for the Gaussian atom.
pub fn reduced_smearing(sigma: f64, beam: &HermiteBeam, m: BeamModeIndex, z: f64) -> f64 {
    smearing_coefficient(sigma, beam, m).exact * z * (-(z * z) / (sigma * sigma)).exp()
}
