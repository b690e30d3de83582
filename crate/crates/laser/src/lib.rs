//! An atom in a Hermite-Gaussian laser beam.
//!
//! The beam modes are the zeroth-order paraxial solutions
//! `u_m = A_m(r) e^{ikz} ε` ([`hermite_mode_full`]); for an atom localized
//! well inside the waist (`σ ≪ w₀`, `|z| ≪ z_R`) they separate into the
//! transverse functions `φ_m(x, y)` ([`separable_mode`]) times a plane wave,
//! which makes the dimensional reduction exact.
//!
//! Pumping the mode `ν = (1, 0, ε_x)` with coherent amplitude `α`, the
//! first-order transition probability reads
//!
//! ```text
//! P_(±) = g ( |α|² |f₋ + f̄₊|² + γ_N |f_(±)|² ),
//! ```
//!
//! with the laser time factor `|f₋ + f̄₊|²` ([`laser_factor`]), the vacuum
//! window `|f_(±)|²` of the cavity module, the coupling `g`
//! ([`coupling_g`]) and the mode-number dependent coupling `γ_N` of the
//! vacuum modes up to `N` ([`gamma_sum`], [`gamma_closed`]).  The ratio
//! `ζ_N` of vacuum to laser contributions ([`zeta`]) quantifies the
//! single-subfield approximation.
//!
//! Mode indices are the *original* Hermite orders `(m1, m2)`.  Only odd
//! `m1` and even `m2` couple; the cutoff `N = (N1, N2)` of the vacuum sum
//! counts those coupled modes, i.e. it includes `m1 = 2k1 + 1 ≤ 2N1 + 1`
//! and `m2 = 2k2 ≤ 2N2`.

mod beam;
mod couplings;
mod probability;
mod smearing;

pub use beam::{
    helmholtz_residual, hermite_mode_full, paraxial_residual, separable_deviation, separable_mode,
    separable_paraxial_residual, BeamModeIndex, BeamPolarization, HermiteBeam,
};
pub use couplings::{
    coupling_g, gamma_closed, gamma_sum, gamma_sum_excluding_reindexed, gamma_term,
    laser_couplings, LaserCouplings, VacuumCutoff, PUMPED_MODE,
};
pub use probability::{
    displayed_laser_factor, laser_factor, laser_factor_numeric, laser_probability,
    log_laser_factor, zeta, LaserProbability, Zeta,
};
pub use smearing::{
    reduced_smearing, smearing_coefficient, smearing_coefficient_numeric, SmearingCoefficient,
};

use sqed_interaction::InteractionError;
use sqed_quadrature::QuadError;
use sqed_specfun::SpecFunError;
use thiserror::Error;

/// Errors of the laser module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LaserError {
    /// A parameter is out of range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// Propagated special-function error.
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    /// Propagated interaction error.
    #[error(transparent)]
    Interaction(#[from] InteractionError),
    /// A brute-force integral missed its accuracy target.
    #[error("quadrature did not converge (error estimate {error_estimate:.3e})")]
    NonConvergence {
        /// Final error estimate.
        error_estimate: f64,
    },
    /// The laser contribution vanishes, so the ratio `ζ` is undefined.
    #[error("laser contribution vanishes (ln = {log_laser}); ratio undefined")]
    VanishingLaserTerm {
        /// `ln` of the laser time factor.
        log_laser: f64,
    },
}

impl<T: std::fmt::Debug> From<QuadError<T>> for LaserError {
    fn from(e: QuadError<T>) -> Self {
        LaserError::NonConvergence {
            error_estimate: e.best().map_or(f64::INFINITY, |b| b.error_estimate),
        }
    }
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, LaserError>;
