//! The couplings `g` and `γ_N`.
//!
//! With the reindexing `m1 = 2k₁ + 1`, `m2 = 2k₂` of the coupled modes, the
//! vacuum modes contribute `g γ_N |f_(±)|²` with
//!
//! ```text
//! γ_N = (1/3) Σ_{k₁ ≤ N1, k₂ ≤ N2, pumped mode excluded} (2k₁+1)! (2k₂)! / (4^{k₁+k₂+1/2} (k₁! k₂!)²).
//! ```
//!
//! The pumped mode `(m1, m2) = (1, 0)` is `(k₁, k₂) = (0, 0)`, whose term is
//! `1/2`.  The full double sum factorizes into
//! `4Γ(5/2+N1)Γ(3/2+N2)/(3πΓ(1+N1)Γ(1+N2))`; the often quoted closed form
//! subtracts `(3/4)θ₁(N1−1)` (with `θ₁(0) = 1`) instead of `1/2`, which is
//! the term `(k₁, k₂) = (1, 0)`, i.e. the mode `(3, 0)`.  Both are provided:
//! [`gamma_sum`] excludes the pumped mode, [`gamma_closed`] is the closed
//! form as quoted, and [`gamma_sum_excluding_reindexed`] is the direct sum
//! the closed form actually equals.

use sqed_cavity::SI;
use sqed_interaction::GaussianAtom;
use sqed_specfun::gamma;
use std::f64::consts::PI;

use crate::{BeamModeIndex, HermiteBeam, LaserError, Result};

/// The pumped mode `ν = (1, 0)` (original indices, polarization `ε_x`).
pub const PUMPED_MODE: BeamModeIndex = BeamModeIndex { m1: 1, m2: 0 };

/// Largest supported cutoff (the closed form overflows `Γ` beyond it).
const MAX_CUTOFF: u32 = 160;

/// Cutoff `N = (N1, N2)` of the vacuum sum in reindexed labels: it keeps the
/// coupled modes `(2k₁+1, 2k₂)` with `k₁ ≤ N1`, `k₂ ≤ N2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VacuumCutoff {
    /// Largest `k₁`.
    pub n1: u32,
    /// Largest `k₂`.
    pub n2: u32,
}

impl VacuumCutoff {
    /// The cutoff `(n1, n2)`.
    ///
    /// # Errors
    /// [`LaserError::InvalidParameter`] above 160.
    pub fn new(n1: u32, n2: u32) -> Result<Self> {
        if n1 > MAX_CUTOFF || n2 > MAX_CUTOFF {
            return Err(LaserError::InvalidParameter(format!(
                "cutoff ({n1}, {n2}) exceeds the supported {MAX_CUTOFF}"
            )));
        }
        Ok(Self { n1, n2 })
    }
}

/// `(2k)!/(4^k (k!)²)` for `k = 0..=n`, by the stable recurrence.
fn central_ratios(n: u32) -> Vec<f64> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut c = 1.0;
    for k in 0..=n {
        out.push(c);
        c *= (2.0 * f64::from(k) + 1.0) / (2.0 * f64::from(k) + 2.0);
    }
    out
}

/// The summand `(2k₁+1)! (2k₂)! / (4^{k₁+k₂+1/2} (k₁! k₂!)²)` (without `1/3`).
pub fn gamma_term(k1: u32, k2: u32) -> f64 {
    let c1 = central_ratios(k1)[k1 as usize];
    let c2 = central_ratios(k2)[k2 as usize];
    0.5 * (2.0 * f64::from(k1) + 1.0) * c1 * c2
}

fn sum_excluding(n: VacuumCutoff, excluded: (u32, u32)) -> f64 {
    let c1 = central_ratios(n.n1);
    let c2 = central_ratios(n.n2);
    let mut total = 0.0;
    for (k1, a) in c1.iter().enumerate() {
        for (k2, b) in c2.iter().enumerate() {
            if (k1 as u32, k2 as u32) != excluded {
                total += 0.5 * (2.0 * k1 as f64 + 1.0) * a * b;
            }
        }
    }
    total / 3.0
}

/// `γ_N` by the direct double sum, excluding the pumped mode `(1, 0)`.
pub fn gamma_sum(n: VacuumCutoff) -> f64 {
    sum_excluding(n, (0, 0))
}

/// The direct double sum excluding `(k₁, k₂) = (1, 0)` — the mode `(3, 0)`
/// — which is what [`gamma_closed`] evaluates.
pub fn gamma_sum_excluding_reindexed(n: VacuumCutoff) -> f64 {
    sum_excluding(n, (1, 0))
}

/// The closed form
/// `(1/3)(4Γ(5/2+N1)Γ(3/2+N2)/(3πΓ(1+N1)Γ(1+N2)) − (3/4)θ₁(N1−1))`,
/// `θ₁(0) = 1`.
///
/// # Errors
/// Propagated Γ-function errors (not expected within the cutoff range).
pub fn gamma_closed(n: VacuumCutoff) -> Result<f64> {
    let (n1, n2) = (f64::from(n.n1), f64::from(n.n2));
    let full = 4.0 * gamma(2.5 + n1)? * gamma(1.5 + n2)?
        / (3.0 * PI * gamma(1.0 + n1)? * gamma(1.0 + n2)?);
    let theta = if n.n1 >= 1 { 1.0 } else { 0.0 };
    Ok((full - 0.75 * theta) / 3.0)
}

/// Coupling `g = 3 c e² k³ σ⁶ e^{−(kσ)²/2} / (ħ ε₀ π⁴ w₀⁴)` (units m·s⁻²).
pub fn coupling_g(sigma: f64, beam: &HermiteBeam) -> f64 {
    let k = beam.k();
    3.0 * SI.c * SI.e * SI.e * k.powi(3) * sigma.powi(6) * (-(k * sigma).powi(2) / 2.0).exp()
        / (SI.hbar * SI.eps0 * PI.powi(4) * beam.w0().powi(4))
}

/// Both couplings for one atom, beam and cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaserCouplings {
    /// `g` (m·s⁻²).
    pub g: f64,
    /// [`gamma_closed`].
    pub gamma_closed: f64,
    /// [`gamma_sum`], the value used for probabilities.
    pub gamma_sum: f64,
}

/// `g`, the closed-form and the direct `γ_N`.
///
/// # Errors
/// As [`gamma_closed`].
pub fn laser_couplings(
    atom: &GaussianAtom,
    beam: &HermiteBeam,
    n: VacuumCutoff,
) -> Result<LaserCouplings> {
    Ok(LaserCouplings {
        g: coupling_g(atom.sigma(), beam),
        gamma_closed: gamma_closed(n)?,
        gamma_sum: gamma_sum(n),
    })
}
