//! Tensor-product 2D integration.

use std::cell::Cell;
use std::f64::consts::TAU;

use crate::gk::Adaptive;
use crate::{QuadError, QuadResult, QuadValue, Tolerance};

/// Integration domains in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain2d {
    /// `[x0, x1] × [y0, y1]`; the integrand is called as `f(x, y)`.
    Rectangle {
        /// Lower x bound.
        x0: f64,
        /// Upper x bound.
        x1: f64,
        /// Lower y bound.
        y0: f64,
        /// Upper y bound.
        y1: f64,
    },
    /// Disk of the given radius centered at the origin; the integrand is
    /// called in polar coordinates as `f(r, φ)` and the Jacobian `r` is
    /// applied internally.
    Disk {
        /// Disk radius.
        radius: f64,
    },
}

/// Integrates `f` over a 2D domain by nesting the adaptive 1D integrator.
///
/// The inner integrals are computed to `tol.rel / 10` (with an absolute floor
/// derived from the outer target) so that their errors do not spoil the outer
/// estimate; the reported error is the outer estimate plus the integrated
/// inner estimates.
///
/// # Errors
/// [`QuadError::NonConvergence`] if the outer or any inner integral misses its
/// target, carrying the best estimate; tolerance/interval validation errors as
/// in the 1D case.
pub fn integrate_2d<T, F>(
    f: F,
    domain: Domain2d,
    tol: Tolerance,
) -> Result<QuadResult<T>, QuadError<T>>
where
    T: QuadValue + std::fmt::Debug,
    F: Fn(f64, f64) -> T,
{
    let (x0, x1, y0, y1, polar) = match domain {
        Domain2d::Rectangle { x0, x1, y0, y1 } => (x0, x1, y0, y1, false),
        Domain2d::Disk { radius } => (0.0, radius, 0.0, TAU, true),
    };
    if !(x0.is_finite() && x1.is_finite() && y0.is_finite() && y1.is_finite()) {
        return Err(QuadError::InvalidInterval(
            "2D domains must be bounded".into(),
        ));
    }
    let inner_tol = Tolerance::new(
        tol.rel / 10.0,
        tol.abs / (10.0 * (x1 - x0).abs().max(1e-300)),
    );
    let inner = Adaptive::new(inner_tol);
    let outer = Adaptive::new(tol);
    let evaluations = Cell::new(0usize);
    let inner_err = Cell::new(0.0f64);
    let failed = Cell::new(false);
    let result = outer.integrate(
        |x| {
            let g = |y: f64| {
                let v = f(x, y);
                if polar {
                    let mut out = v.zero_like();
                    out.add_scaled(&v, x);
                    out
                } else {
                    v
                }
            };
            let r = match inner.integrate(g, y0, y1) {
                Ok(r) => r,
                Err(QuadError::NonConvergence { best }) => {
                    failed.set(true);
                    best
                }
                Err(e) => panic!("inner integration setup failed: {e}"),
            };
            evaluations.set(evaluations.get() + r.evaluations);
            // The largest inner error times the outer width bounds the
            // integrated inner error.
            inner_err.set(inner_err.get().max(r.error_estimate));
            r.value
        },
        x0,
        x1,
    );
    let extra = inner_err.get() * (x1 - x0).abs();
    match result {
        Ok(mut r) => {
            r.evaluations = evaluations.get();
            r.error_estimate += extra;
            if failed.get() && r.error_estimate > tol.target(r.value.norm()) {
                return Err(QuadError::NonConvergence { best: r });
            }
            Ok(r)
        }
        Err(QuadError::NonConvergence { mut best }) => {
            best.evaluations = evaluations.get();
            best.error_estimate += extra;
            Err(QuadError::NonConvergence { best })
        }
        Err(e) => Err(e),
    }
}
