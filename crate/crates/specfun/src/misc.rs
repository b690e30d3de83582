//! Hermite polynomials, Γ, K₀, ₁F₁ and sinc.

use std::f64::consts::PI;

use crate::{Result, SpecFunError};

/// Largest supported Hermite order.
pub const MAX_HERMITE_ORDER: u32 = 40;

/// Physicists' Hermite polynomial `H_n(x)` by `H_{n+1} = 2x H_n − 2n H_{n−1}`.
///
/// # Errors
/// [`SpecFunError::UnsupportedOrder`] for `n > 40`.
pub fn hermite_h(n: u32, x: f64) -> Result<f64> {
    if n > MAX_HERMITE_ORDER {
        return Err(SpecFunError::UnsupportedOrder {
            order: i64::from(n),
            max: i64::from(MAX_HERMITE_ORDER),
        });
    }
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * f64::from(k) * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Lanczos coefficients for `g = 7`, `n = 9`.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Euler's Γ function (Lanczos approximation with reflection for `x < 1/2`).
///
/// # Errors
/// [`SpecFunError::Domain`] at the poles `x ∈ {0, −1, −2, …}` and for
/// non-finite input.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || (x <= 0.0 && x == x.floor()) {
        return Err(SpecFunError::Domain {
            function: "gamma",
            reason: format!("pole or non-finite argument {x}"),
        });
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma_unchecked(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// Modified Bessel function `K₀(x)` for `x > 0`.
///
/// Evaluates `∫₀^∞ exp(−x cosh t) dt` with the trapezoidal rule, which
/// converges geometrically for this analytic, doubly-exponentially decaying
/// integrand (step `h = 0.05` leaves a discretization error far below `ε`).
///
/// # Errors
/// [`SpecFunError::Domain`] for `x ≤ 0` or non-finite `x`.
pub fn bessel_k0(x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(SpecFunError::Domain {
            function: "bessel_k0",
            reason: format!("argument must be positive and finite, got {x}"),
        });
    }
    const H: f64 = 0.05;
    // Work with e^{x} K0(x) to keep the terms O(1), then rescale.
    let mut sum = 0.5; // t = 0 term, halved
    let mut k = 1;
    loop {
        let t = H * f64::from(k);
        let term = (-x * (t.cosh() - 1.0)).exp();
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
        k += 1;
    }
    Ok(H * sum * (-x).exp())
}

/// Confluent hypergeometric function `₁F₁(a; b; x)` (Kummer's `M`).
///
/// Positive arguments use the Kummer series directly, stopped once the term
/// ratio has fallen below `10⁻¹⁵` of the partial sum.  Negative arguments use
/// Kummer's transformation `₁F₁(a; b; x) = eˣ ₁F₁(b − a; b; −x)`, which keeps
/// the series free of cancellation.
///
/// # Errors
/// [`SpecFunError::Domain`] if `b` is a non-positive integer or any argument
/// is non-finite.
pub fn hyp1f1(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && x.is_finite()) {
        return Err(SpecFunError::Domain {
            function: "hyp1f1",
            reason: "arguments must be finite".into(),
        });
    }
    if b <= 0.0 && b == b.floor() {
        return Err(SpecFunError::Domain {
            function: "hyp1f1",
            reason: format!("b = {b} is a non-positive integer"),
        });
    }
    if x < 0.0 {
        return Ok(x.exp() * kummer_series(b - a, b, -x));
    }
    Ok(kummer_series(a, b, x))
}

fn kummer_series(a: f64, b: f64, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..10_000u32 {
        let kf = f64::from(k);
        term *= (a + kf) * x / ((b + kf) * (kf + 1.0));
        sum += term;
        if term == 0.0 {
            break;
        }
        // Only stop once the terms are decreasing (past the hump at k ≈ x).
        if kf > x - b && term.abs() <= 1e-15 * sum.abs() {
            break;
        }
    }
    sum
}

/// Unnormalized `sinc(x) = sin(x)/x`, with `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Selector for [`aux_special`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxFunction {
    /// `Γ(x)`; one argument.
    Gamma,
    /// `K₀(x)`; one argument.
    BesselK0,
    /// `₁F₁(a; b; x)`; three arguments.
    Hyp1F1,
    /// `sin(x)/x`; one argument.
    Sinc,
}

/// Dispatching front end for the auxiliary functions.
///
/// # Errors
/// [`SpecFunError::Arity`] on a wrong argument count, otherwise the error of
/// the dispatched function.
pub fn aux_special(which: AuxFunction, args: &[f64]) -> Result<f64> {
    let arity = |function, expected| {
        if args.len() == expected {
            Ok(())
        } else {
            Err(SpecFunError::Arity {
                function,
                expected,
                got: args.len(),
            })
        }
    };
    match which {
        AuxFunction::Gamma => {
            arity("gamma", 1)?;
            gamma(args[0])
        }
        AuxFunction::BesselK0 => {
            arity("bessel_k0", 1)?;
            bessel_k0(args[0])
        }
        AuxFunction::Hyp1F1 => {
            arity("hyp1f1", 3)?;
            hyp1f1(args[0], args[1], args[2])
        }
        AuxFunction::Sinc => {
            arity("sinc", 1)?;
            if args[0].is_finite() {
                Ok(sinc(args[0]))
            } else {
                Err(SpecFunError::Domain {
                    function: "sinc",
                    reason: "argument must be finite".into(),
                })
            }
        }
    }
}
