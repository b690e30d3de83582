//! Bessel functions of the first kind for integer order.
//!
//! Small arguments (`|x| ≤ 6`) use the ascending power series, whose terms
//! stay below `I_n(6)·ε` there.  Everything else uses Miller's backward
//! recurrence normalized by `J_0 + 2 Σ_k J_{2k} = 1`, which is stable for all
//! orders and remains accurate up to `|x| ≈ 10³`.  (The power series is *not*
//! used for `x < n + 10` at large `n`: at `n = 64, x = 70` its individual terms
//! reach `10^16` and every digit cancels.)

use crate::{Result, SpecFunError};

/// Largest supported Bessel order.
pub const MAX_BESSEL_ORDER: u32 = 64;

/// Below this argument the ascending series is used.
const SERIES_LIMIT: f64 = 6.0;

/// Returns `J_order(x)` or, if `derivative` is set, `J_order'(x)`.
///
/// The derivative uses `J_n' = (J_{n−1} − J_{n+1})/2` (and `J_0' = −J_1`), so
/// it is as accurate as the function values themselves.
///
/// # Errors
/// [`SpecFunError::UnsupportedOrder`] for `order > 64`, and
/// [`SpecFunError::Domain`] for non-finite `x`.
pub fn bessel_j(order: u32, x: f64, derivative: bool) -> Result<f64> {
    check(order, x)?;
    let seq = sequence(order + 1, x);
    let n = order as usize;
    if !derivative {
        return Ok(seq[n]);
    }
    Ok(if n == 0 {
        -seq[1]
    } else {
        0.5 * (seq[n - 1] - seq[n + 1])
    })
}

/// Returns `[J_0(x), J_1(x), …, J_nmax(x)]` from a single recurrence pass.
///
/// `nmax` may exceed [`MAX_BESSEL_ORDER`] by a few units so that callers can
/// form derivative combinations of the top supported order.
///
/// # Errors
/// As [`bessel_j`], with the limit relaxed to `MAX_BESSEL_ORDER + 4`.
pub fn bessel_j_seq(nmax: u32, x: f64) -> Result<Vec<f64>> {
    if nmax > MAX_BESSEL_ORDER + 4 {
        return Err(SpecFunError::UnsupportedOrder {
            order: i64::from(nmax),
            max: i64::from(MAX_BESSEL_ORDER + 4),
        });
    }
    if !x.is_finite() {
        return Err(non_finite());
    }
    Ok(sequence(nmax, x))
}

fn check(order: u32, x: f64) -> Result<()> {
    if order > MAX_BESSEL_ORDER {
        return Err(SpecFunError::UnsupportedOrder {
            order: i64::from(order),
            max: i64::from(MAX_BESSEL_ORDER),
        });
    }
    if !x.is_finite() {
        return Err(non_finite());
    }
    Ok(())
}

fn non_finite() -> SpecFunError {
    SpecFunError::Domain {
        function: "bessel_j",
        reason: "argument must be finite".into(),
    }
}

/// Unchecked sequence evaluation; handles negative `x` by parity.
fn sequence(nmax: u32, x: f64) -> Vec<f64> {
    let ax = x.abs();
    let mut out = if ax == 0.0 {
        let mut v = vec![0.0; nmax as usize + 1];
        v[0] = 1.0;
        v
    } else if ax <= SERIES_LIMIT {
        (0..=nmax).map(|n| series(n, ax)).collect()
    } else {
        miller(nmax, ax)
    };
    if x < 0.0 {
        for (n, v) in out.iter_mut().enumerate() {
            if n % 2 == 1 {
                *v = -*v;
            }
        }
    }
    out
}

/// Ascending series `Σ_k (−1)^k (x/2)^{2k+n} / (k! (n+k)!)`.
fn series(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    // Leading term (x/2)^n / n!, built multiplicatively to avoid overflow.
    let mut lead = 1.0;
    for k in 1..=n {
        lead *= half / f64::from(k);
    }
    if lead == 0.0 {
        return 0.0;
    }
    let q = -half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200u32 {
        term *= q / (f64::from(k) * f64::from(n + k));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

/// Miller backward recurrence with normalization `J_0 + 2 Σ J_{2k} = 1`.
fn miller(nmax: u32, x: f64) -> Vec<f64> {
    const BIG: f64 = 1e250;
    let top = f64::from(nmax).max(x);
    let mut start = (top + 20.0 + 4.0 * top.sqrt()).ceil() as usize + 10;
    if start % 2 == 1 {
        start += 1;
    }
    let nmax = nmax as usize;
    let mut out = vec![0.0; nmax + 1];
    let mut j_next = 0.0; // J_{k+1}
    let mut j_cur = 1e-300; // J_k
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        let j_prev = 2.0 * k as f64 / x * j_cur - j_next; // J_{k-1}
        j_next = j_cur;
        j_cur = j_prev;
        let idx = k - 1;
        if idx <= nmax {
            out[idx] = j_cur;
        }
        if idx == 0 {
            norm += j_cur;
        } else if idx % 2 == 0 {
            norm += 2.0 * j_cur;
        }
        if j_cur.abs() > BIG {
            let s = 1.0 / BIG;
            j_cur *= s;
            j_next *= s;
            norm *= s;
            for v in out.iter_mut().skip(idx) {
                *v *= s;
            }
        }
    }
    for v in &mut out {
        *v /= norm;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_and_recurrence_agree_at_the_switch() {
        for n in 0..12 {
            let a = series(n, SERIES_LIMIT);
            let b = miller(n, SERIES_LIMIT)[n as usize];
            assert!((a - b).abs() < 1e-14, "n={n}: {a} vs {b}");
        }
    }

    #[test]
    fn negative_argument_parity() {
        let p = bessel_j(3, 2.5, false).unwrap();
        let m = bessel_j(3, -2.5, false).unwrap();
        assert!((p + m).abs() < 1e-16);
    }

    #[test]
    fn unsupported_order_is_rejected() {
        assert!(matches!(
            bessel_j(65, 1.0, false),
            Err(SpecFunError::UnsupportedOrder { .. })
        ));
    }
}
