//! Atom–field interaction in the ideal cylindrical cavity.
//!
//! A two-level atom, modelled as the ground and first longitudinal excitation
//! of a 3D harmonic oscillator of length `σ`, sits on the cavity axis.  To
//! first order in the dipole coupling the transition probability splits into
//! subfield contributions
//!
//! ```text
//! P_(±) = Σ_{m1} |c_(m1,0),(±)|²,
//! |c_m|² = Σ_l  ω_{m,l} e² / (2ε₀ħ) · |∫ u_{m,l}·F d³r|² · |f(Δ_{m,l,(±)})|²,
//! ```
//!
//! with the smearing vector `F = r_e ψ_g ψ_e`, the time window
//! `f(Δ) = ∫ χ(t) e^{2iΔt} dt` of the switching function `χ` and the detuning
//! `Δ = (ω ± Ω_A)/2` (`−` emission, `+` excitation).
//!
//! The crate provides
//!
//! * the atom ([`GaussianAtom`], [`atom_profile`]) and the switching windows
//!   ([`Switching`], [`time_window`], [`time_integral_numeric`]);
//! * overlaps in closed form ([`overlap_analytic`]) and by brute-force
//!   quadrature ([`overlap_numeric`], [`OraclePipeline`]);
//! * subfield probabilities evaluated in the log domain with certified
//!   truncation of the longitudinal sum ([`subfield_probability`]), the
//!   truncation error `δ_N` of a subfield set ([`transition_set`]) and the
//!   subfield of maximal probability ([`max_subfield`]).
//!
//! Probabilities of strongly detuned subfields underflow double precision by
//! thousands of orders of magnitude, so every sum is accumulated as a
//! streaming log-sum-exp and the log values are part of the public results.

mod atom;
mod oracle;
mod overlap;
mod probability;
mod window;

pub use atom::{atom_profile, AtomProfile, GaussianAtom, Resonance, PROTON_MASS};
pub use oracle::{subfield_probability_oracle, OraclePipeline, OracleProbability};
pub use overlap::{
    overlap_analytic, overlap_numeric, overlap_split_diagnostic, OverlapSplitDiagnostic,
};
pub use probability::{
    max_subfield, probability_prefactor, subfield_probability, subfield_spectrum, transition_set,
    MaxSubfield, Spectrum, SubfieldSet, SubfieldTerm, TransitionSet, L_TAIL_TOLERANCE,
    M_TAIL_TOLERANCE,
};
pub use window::{
    detuning, displayed_gaussian_window, log_time_window, time_integral_numeric, time_window,
    Switching, SwitchingKind, TransitionKind,
};

use sqed_cavity::CavityError;
use sqed_quadrature::QuadError;
use sqed_specfun::SpecFunError;
use thiserror::Error;

/// Errors of the interaction module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum InteractionError {
    /// Propagated cavity error.
    #[error(transparent)]
    Cavity(#[from] CavityError),
    /// Propagated special-function error.
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    /// A parameter is out of range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A brute-force integral missed its accuracy target.
    #[error("quadrature did not converge (error estimate {error_estimate:.3e})")]
    NonConvergence {
        /// Final error estimate.
        error_estimate: f64,
    },
    /// A series could not be truncated with the requested certified tail.
    #[error("{series} sum not certified: achieved relative tail bound {achieved:.3e}, target {target:.1e}")]
    TailBound {
        /// Which sum failed (`"longitudinal"` or `"subfield"`).
        series: &'static str,
        /// Best relative tail bound reached before the term budget ran out.
        achieved: f64,
        /// Requested relative tail.
        target: f64,
    },
    /// An empty or unordered subfield set was supplied.
    #[error("invalid subfield set: {0}")]
    InvalidSet(String),
}

impl<T: std::fmt::Debug> From<QuadError<T>> for InteractionError {
    fn from(e: QuadError<T>) -> Self {
        InteractionError::NonConvergence {
            error_estimate: e.best().map_or(f64::INFINITY, |b| b.error_estimate),
        }
    }
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, InteractionError>;

/// Streaming `ln Σ exp(xᵢ)` that never overflows or underflows.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogSum {
    max: f64,
    scaled: f64,
}

impl LogSum {
    pub(crate) fn new() -> Self {
        Self {
            max: f64::NEG_INFINITY,
            scaled: 0.0,
        }
    }

    pub(crate) fn add(&mut self, x: f64) {
        if x == f64::NEG_INFINITY {
            return;
        }
        if x <= self.max {
            self.scaled += (x - self.max).exp();
        } else {
            self.scaled = self.scaled * (self.max - x).exp() + 1.0;
            self.max = x;
        }
    }

    /// `ln Σ exp(xᵢ)`, or `−∞` for an empty sum.
    pub(crate) fn value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + self.scaled.ln()
        }
    }
}
