//! Values that can be integrated.

use num_complex::Complex64;

/// A vector-space value an integrand may return.
///
/// The integrator only needs to form linear combinations and measure sizes;
/// `norm` is used for error control, so for vector values the tolerance
/// applies to the largest component.
pub trait QuadValue: Clone + Send + Sync + std::fmt::Debug {
    /// A zero of the same shape as `self`.
    fn zero_like(&self) -> Self;
    /// `self += s · other`.
    fn add_scaled(&mut self, other: &Self, s: f64);
    /// Size used for error control (max-norm over components).
    fn norm(&self) -> f64;

    /// `self − other`, derived from [`QuadValue::add_scaled`].
    fn minus(&self, other: &Self) -> Self {
        let mut d = self.clone();
        d.add_scaled(other, -1.0);
        d
    }
}

impl QuadValue for f64 {
    fn zero_like(&self) -> Self {
        0.0
    }
    fn add_scaled(&mut self, other: &Self, s: f64) {
        *self += s * other;
    }
    fn norm(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add_scaled(&mut self, other: &Self, s: f64) {
        *self += other * s;
    }
    fn norm(&self) -> f64 {
        Complex64::norm(*self)
    }
}

impl<const N: usize> QuadValue for [Complex64; N] {
    fn zero_like(&self) -> Self {
        [Complex64::new(0.0, 0.0); N]
    }
    fn add_scaled(&mut self, other: &Self, s: f64) {
        for (a, b) in self.iter_mut().zip(other) {
            *a += b * s;
        }
    }
    fn norm(&self) -> f64 {
        self.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl<const N: usize> QuadValue for [f64; N] {
    fn zero_like(&self) -> Self {
        [0.0; N]
    }
    fn add_scaled(&mut self, other: &Self, s: f64) {
        for (a, b) in self.iter_mut().zip(other) {
            *a += b * s;
        }
    }
    fn norm(&self) -> f64 {
        self.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }
}

impl<T: QuadValue> QuadValue for Vec<T> {
    fn zero_like(&self) -> Self {
        self.iter().map(QuadValue::zero_like).collect()
    }
    fn add_scaled(&mut self, other: &Self, s: f64) {
        debug_assert_eq!(self.len(), other.len());
        for (a, b) in self.iter_mut().zip(other) {
            a.add_scaled(b, s);
        }
    }
    fn norm(&self) -> f64 {
        self.iter().map(QuadValue::norm).fold(0.0, f64::max)
    }
}
