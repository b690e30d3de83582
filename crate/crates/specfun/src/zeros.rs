//! Positive zeros of `J_n` and `J_n'`.
//!
//! Zeros are bracketed by sampling on a `π/4` grid (consecutive zeros of both
//! families are more than `π/4` apart, so no sign change can be skipped) and
//! then bisected until the bracket cannot shrink any further in double
//! precision.  Results are cached per `(kind, order)`; the cache only grows.

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_4;
use std::sync::{OnceLock, RwLock};

use crate::bessel::{bessel_j_seq, MAX_BESSEL_ORDER};
use crate::{Result, SpecFunError};

/// Which family of zeros is requested.
///
/// `OfBessel` gives the Dirichlet zeros `j_{n,k}` that fix the transverse
/// wavenumbers of the second polarization; `OfBesselDerivative` gives the
/// Neumann zeros `j'_{n,k}` of the first (TE-like) polarization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZeroKind {
    /// Zeros of `J_n`.
    OfBessel,
    /// Zeros of `J_n'`, excluding the trivial zero at the origin for `n = 0`.
    OfBesselDerivative,
}

type Cache = RwLock<HashMap<(ZeroKind, u32), Vec<f64>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Returns the `index`-th positive zero (1-based) of `J_order` or `J_order'`.
///
/// # Errors
/// [`SpecFunError::UnsupportedOrder`] for `order > 64` and
/// [`SpecFunError::Domain`] for `index == 0`.
pub fn bessel_zero(kind: ZeroKind, order: u32, index: usize) -> Result<f64> {
    if order > MAX_BESSEL_ORDER {
        return Err(SpecFunError::UnsupportedOrder {
            order: i64::from(order),
            max: i64::from(MAX_BESSEL_ORDER),
        });
    }
    if index == 0 {
        return Err(SpecFunError::Domain {
            function: "bessel_zero",
            reason: "zero index is 1-based".into(),
        });
    }
    if let Some(z) = cache()
        .read()
        .expect("zero cache poisoned")
        .get(&(kind, order))
        .and_then(|v| v.get(index - 1))
    {
        return Ok(*z);
    }
    let mut guard = cache().write().expect("zero cache poisoned");
    let zeros = guard.entry((kind, order)).or_default();
    while zeros.len() < index {
        let from = zeros.last().copied();
        zeros.push(next_zero(kind, order, from));
    }
    Ok(zeros[index - 1])
}

/// The function whose roots are sought.
fn target(kind: ZeroKind, order: u32, x: f64) -> f64 {
    let seq = bessel_j_seq(order + 1, x).expect("order checked by caller");
    let n = order as usize;
    match kind {
        ZeroKind::OfBessel => seq[n],
        ZeroKind::OfBesselDerivative if n == 0 => -seq[1],
        ZeroKind::OfBesselDerivative => 0.5 * (seq[n - 1] - seq[n + 1]),
    }
}

/// Finds the first zero strictly beyond `previous` (or the first positive one).
fn next_zero(kind: ZeroKind, order: u32, previous: Option<f64>) -> f64 {
    // All positive zeros of J_n and of J_n' (n ≥ 1) exceed n; for n = 0 the
    // first nontrivial zero of either family exceeds 2.
    let mut a = match previous {
        Some(p) => p + 1e-3,
        None => f64::from(order).max(0.5),
    };
    let mut fa = target(kind, order, a);
    loop {
        let b = a + FRAC_PI_4;
        let fb = target(kind, order, b);
        if fb == 0.0 {
            return b;
        }
        if fa.signum() != fb.signum() {
            return bisect(kind, order, a, b, fa);
        }
        a = b;
        fa = fb;
    }
}

fn bisect(kind: ZeroKind, order: u32, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = target(kind, order, mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}
