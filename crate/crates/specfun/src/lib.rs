//! Special-function kernel for the subfield-QED workspace.
//!
//! Everything here is real-argument, double precision and dependency free:
//!
//! * [`bessel_j`] / [`bessel_j_seq`] — Bessel functions of the first kind
//!   `J_n(x)` and their derivatives, for integer orders `0 ≤ n ≤ 64`;
//! * [`bessel_zero`] — positive zeros of `J_n` and `J_n'`, cached per order;
//! * [`hermite_h`] — physicists' Hermite polynomials;
//! * [`gamma`], [`bessel_k0`], [`hyp1f1`], [`sinc`] and the dispatching
//!   [`aux_special`].
//!
//! All functions are pure and may be called concurrently.  The zero cache is
//! the only shared state; it only ever grows, and every entry is immutable
//! once inserted.

mod bessel;
mod misc;
mod zeros;

pub use bessel::{bessel_j, bessel_j_seq, MAX_BESSEL_ORDER};
pub use misc::{
    aux_special, bessel_k0, gamma, hermite_h, hyp1f1, sinc, AuxFunction, MAX_HERMITE_ORDER,
};
pub use zeros::{bessel_zero, ZeroKind};

use thiserror::Error;

/// Errors raised by the special-function kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    /// The requested order lies outside the supported range.
    #[error("order {order} outside the supported range 0..={max}")]
    UnsupportedOrder {
        /// Requested order.
        order: i64,
        /// Largest supported order.
        max: i64,
    },
    /// The argument lies outside the function's domain (pole, non-finite, ...).
    #[error("domain error in {function}: {reason}")]
    Domain {
        /// Function name.
        function: &'static str,
        /// Human-readable explanation.
        reason: String,
    },
    /// Wrong number of arguments passed to [`aux_special`].
    #[error("{function} expects {expected} argument(s), got {got}")]
    Arity {
        /// Function name.
        function: &'static str,
        /// Expected count.
        expected: usize,
        /// Supplied count.
        got: usize,
    },
}

/// Convenience alias.
pub type Result<T> = std::result::Result<T, SpecFunError>;
