//! Scalar abstraction shared by every numerical module.
//!
//! All kernels are written against [`Real`], which is implemented for `f32`
//! and `f64`. Tolerances quoted throughout the crate refer to `f64`; the
//! `f32` instantiation is useful for smoke tests and quick scans.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

pub use num_complex::Complex;

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal, rounding to the nearest representable value.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite conversion to f64")
    }

    /// Euler–Mascheroni constant.
    #[inline]
    fn euler_gamma() -> Self {
        Self::lit(0.577_215_664_901_532_9)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for the complex type over a [`Real`] scalar.
pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn cplx<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn creal<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

/// `exp(z) - 1` without cancellation for small `|z|`.
pub(crate) fn cexpm1<T: Real>(z: C<T>) -> C<T> {
    if z.norm() < T::lit(0.5) {
        // Taylor series; 30 terms reach f64 precision for |z| < 1/2.
        let mut term = z;
        let mut sum = z;
        for k in 2..30 {
            term = term * z / T::from_usize_lossy(k);
            sum += term;
            if term.norm() <= T::epsilon() * sum.norm() {
                break;
            }
        }
        sum
    } else {
        z.exp() - creal(T::one())
    }
}

/// Pairwise summation; keeps rounding error O(log n) and is order-stable.
pub fn pairwise_sum<T: Real>(xs: &[T]) -> T {
    match xs.len() {
        0 => T::zero(),
        n if n <= 32 => xs.iter().copied().fold(T::zero(), |a, b| a + b),
        n => {
            let (a, b) = xs.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// Complex variant of [`pairwise_sum`].
pub fn pairwise_sum_c<T: Real>(xs: &[C<T>]) -> C<T> {
    match xs.len() {
        0 => creal(T::zero()),
        n if n <= 32 => xs.iter().copied().fold(creal(T::zero()), |a, b| a + b),
        n => {
            let (a, b) = xs.split_at(n / 2);
            pairwise_sum_c(a) + pairwise_sum_c(b)
        }
    }
}

/// A value together with an absolute error bound.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct Bounded<V, T> {
    pub value: V,
    pub bound: T,
}

impl<V, T> Bounded<V, T> {
    pub fn new(value: V, bound: T) -> Self {
        Self { value, bound }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm1_small_argument() {
        let z = cplx(1e-9_f64, -2e-9);
        let e = cexpm1(z);
        assert!((e - z).norm() < 1e-17);
    }

    #[test]
    fn pairwise_matches_naive_on_integers() {
        let xs: Vec<f64> = (1..=1000).map(|k| k as f64).collect();
        assert_eq!(pairwise_sum(&xs), 500_500.0);
    }
}
