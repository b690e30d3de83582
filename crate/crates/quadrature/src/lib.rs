//! Numerical integration for the oracle pipelines of the subfield-QED
//! workspace.
//!
//! * [`integrate_1d`] / [`integrate_1d_with_breaks`] — globally adaptive
//!   7/15-point Gauss–Kronrod quadrature on finite or semi-infinite intervals;
//! * [`integrate_2d`] — tensor products of the 1D integrator over rectangles
//!   and disks (polar coordinates, Jacobian applied internally);
//! * [`gauss_legendre`] and [`trapezoid_periodic`] — fixed rules for
//!   structured grids.
//!
//! Integrands may return any [`QuadValue`]: real or complex scalars, small
//! complex vectors or whole vectors of values integrated simultaneously.

mod fixed;
mod gk;
mod twod;
mod value;

pub use fixed::{gauss_legendre, gauss_legendre_on, trapezoid_periodic};
pub use gk::{integrate_1d, integrate_1d_with_breaks, Adaptive};
pub use twod::{integrate_2d, Domain2d};
pub use value::QuadValue;

use thiserror::Error;

/// Requested accuracy: the integrator stops once
/// `error_estimate ≤ max(abs, rel·|value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Relative tolerance.
    pub rel: f64,
    /// Absolute tolerance.
    pub abs: f64,
}

impl Tolerance {
    /// Both tolerances given explicitly.
    pub fn new(rel: f64, abs: f64) -> Self {
        Self { rel, abs }
    }

    /// Purely relative tolerance (the absolute floor is set to the smallest
    /// positive normal double so that it is valid but inert).
    pub fn rel(rel: f64) -> Self {
        Self {
            rel,
            abs: f64::MIN_POSITIVE,
        }
    }

    /// The error target for a given value magnitude.
    pub fn target(&self, magnitude: f64) -> f64 {
        self.abs.max(self.rel * magnitude)
    }

    fn validate<T: std::fmt::Debug>(&self) -> Result<(), QuadError<T>> {
        if self.rel > 0.0 && self.abs > 0.0 && self.rel.is_finite() && self.abs.is_finite() {
            Ok(())
        } else {
            Err(QuadError::InvalidTolerance {
                rel: self.rel,
                abs: self.abs,
            })
        }
    }
}

/// An integral estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadResult<T> {
    /// Estimated value of the integral.
    pub value: T,
    /// Estimated absolute error (norm of the error for vector values).
    pub error_estimate: f64,
    /// Number of integrand evaluations spent.
    pub evaluations: usize,
}

/// Integration failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError<T: std::fmt::Debug> {
    /// The error target was not reached within the subdivision budget; the
    /// best available estimate is attached so the caller can decide whether
    /// to widen tolerances or split the interval.
    #[error(
        "quadrature did not converge: error estimate {:.3e} after {} evaluations",
        best.error_estimate,
        best.evaluations
    )]
    NonConvergence {
        /// Best estimate obtained.
        best: QuadResult<T>,
    },
    /// Tolerances must be positive and finite.
    #[error("invalid tolerance (rel = {rel}, abs = {abs})")]
    InvalidTolerance {
        /// Relative tolerance supplied.
        rel: f64,
        /// Absolute tolerance supplied.
        abs: f64,
    },
    /// Interval endpoints are unusable (NaN, reversed infinite bounds, ...).
    #[error("invalid integration interval: {0}")]
    InvalidInterval(String),
}

impl<T: std::fmt::Debug> QuadError<T> {
    /// Best estimate carried by a [`QuadError::NonConvergence`].
    pub fn best(&self) -> Option<&QuadResult<T>> {
        match self {
            QuadError::NonConvergence { best } => Some(best),
            _ => None,
        }
    }
}
