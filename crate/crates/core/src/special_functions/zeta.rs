//! Riemann and Hurwitz zeta functions by Euler–Maclaurin summation.

use crate::error::{Error, Result};
use crate::scalar::{cexpm1, creal, Bounded, Real, C};

use super::gamma::gamma;

/// `B_{2k} / (2k)!` for k = 1..=13.
const BERNOULLI_OVER_FACTORIAL: [f64; 13] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43_867.0 / 798.0 / 6_402_373_705_728_000.0,
    -174_611.0 / 330.0 / 2_432_902_008_176_640_000.0,
    854_513.0 / 138.0 / 1.124_000_727_777_607_7e21,
    -236_364_091.0 / 2730.0 / 6.204_484_017_332_394e23,
    8_553_103.0 / 6.0 / 4.032_914_611_266_056_3e26,
];

/// Number of Bernoulli correction terms.
pub const EM_TERMS: usize = 12;

/// Pieces of the Euler–Maclaurin tail `Σ_{n ≥ 0} (x + n)^{-s}`.
struct EmTail<T: Real> {
    /// `x^{1-s}/(s-1)` (absent when the caller handles the pole term itself).
    pole: C<T>,
    /// `x^{-s}/2 + Σ_k B_{2k}/(2k)! (s)_{2k-1} x^{-s-2k+1}`
    corrections: C<T>,
    error: T,
}

fn em_tail<T: Real>(s: C<T>, x: T) -> EmTail<T> {
    let ln_x = x.ln();
    let x_pow = (-s * ln_x).exp(); // x^{-s}
    let pole = x_pow * x / (s - T::one());
    let mut corrections = x_pow * T::lit(0.5);
    // rising factor (s)(s+1)...(s+2k-2) times x^{-s-2k+1}
    let mut factor = s * x_pow / x;
    let x2 = x * x;
    for (k, &b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate().take(EM_TERMS) {
        let term = factor * T::lit(b);
        corrections += term;
        let kk = T::from_usize_lossy(2 * k + 1);
        factor = factor * (s + kk) * (s + kk + T::one()) / x2;
    }
    // next term bounds the remainder, times |s + 2M + 1| / (σ + 2M + 1)
    let m = T::from_usize_lossy(2 * EM_TERMS + 1);
    let next = (factor * T::lit(BERNOULLI_OVER_FACTORIAL[EM_TERMS])).norm();
    let ratio = if s.re + m > T::zero() {
        (s + m).norm() / (s.re + m)
    } else {
        T::lit(1e3)
    };
    EmTail {
        pole,
        corrections,
        error: next * ratio,
    }
}

fn cutoff<T: Real>(s: C<T>) -> usize {
    let h = s.im.abs().ceil().to_usize().unwrap_or(usize::MAX / 2);
    h.max(20)
}

fn partial_sum<T: Real>(s: C<T>, offset: T, terms: usize) -> C<T> {
    // summed from the smallest terms upward
    let mut acc = creal(T::zero());
    for n in (0..terms).rev() {
        let base = offset + T::from_usize_lossy(n);
        acc += (-s * base.ln()).exp();
    }
    acc
}

/// `ζ(s)` with an Euler–Maclaurin remainder bound.
pub fn zeta_with_error<T: Real>(s: C<T>) -> Result<Bounded<C<T>, T>> {
    if (s - T::one()).norm() < T::lit(1e-12) {
        return Err(Error::PoleAtOne);
    }
    if s.re < T::lit(-0.5) {
        // ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)
        let one_minus = creal(T::one()) - s;
        let inner = zeta_with_error(one_minus)?;
        let pi = T::PI();
        let factor = (s * T::LN_2()).exp()
            * ((s - T::one()) * pi.ln()).exp()
            * (s * (pi * T::lit(0.5))).sin()
            * gamma(one_minus)?;
        return Ok(Bounded::new(factor * inner.value, factor.norm() * inner.bound));
    }
    let n = cutoff(s);
    let head = partial_sum(s, T::one(), n - 1);
    let tail = em_tail(s, T::from_usize_lossy(n));
    let value = head + tail.pole + tail.corrections;
    let rounding = T::epsilon() * T::lit(4.0) * (head.norm() + tail.pole.norm());
    Ok(Bounded::new(value, tail.error + rounding))
}

/// Riemann zeta function.
pub fn zeta<T: Real>(s: C<T>) -> Result<C<T>> {
    Ok(zeta_with_error(s)?.value)
}

/// Hurwitz zeta `ζ(s, a) = Σ_{n ≥ 0} (n + a)^{-s}` for `0 < a ≤ 1`.
pub fn hurwitz_zeta<T: Real>(s: C<T>, a: T) -> Result<C<T>> {
    if !(a > T::zero() && a <= T::one()) {
        return Err(Error::Domain(format!("Hurwitz parameter a = {a} outside (0, 1]")));
    }
    if (s - T::one()).norm() < T::lit(1e-12) {
        return Err(Error::PoleAtOne);
    }
    let n = cutoff(s);
    let head = partial_sum(s, a, n);
    let tail = em_tail(s, a + T::from_usize_lossy(n));
    Ok(head + tail.pole + tail.corrections)
}

/// Hurwitz zeta without its pole: `ζ(s, a) - 1/(s-1)`, finite at `s = 1`.
///
/// Linear combinations `Σ c_a ζ(s, a)` with `Σ c_a = 0` (Dirichlet
/// L-functions of non-principal characters) use this to stay finite at 1.
pub(crate) fn hurwitz_zeta_regular<T: Real>(s: C<T>, a: T) -> Bounded<C<T>, T> {
    let n = cutoff(s);
    let head = partial_sum(s, a, n);
    let x = a + T::from_usize_lossy(n);
    let tail = em_tail(s, x);
    // (x^{1-s} - 1)/(s - 1) = -ln x · expm1((1-s) ln x) / ((1-s) ln x)
    let z = (creal(T::one()) - s) * x.ln();
    let regular_pole = if z.norm() == T::zero() {
        creal(-x.ln())
    } else {
        cexpm1(z) / z * (-x.ln())
    };
    let rounding = T::epsilon() * T::lit(4.0) * (head.norm() + regular_pole.norm());
    Bounded::new(head + regular_pole + tail.corrections, tail.error + rounding)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;
    use std::f64::consts::PI;

    /// Independent oracle through the alternating series, valid for Re s > 0:
    /// ζ(s) = η(s) / (1 - 2^{1-s}).
    fn eta_oracle(s: C<f64>) -> C<f64> {
        // Borwein's algorithm (Algorithm 2), n = 60
        let n = 60usize;
        let mut d = vec![0.0f64; n + 1];
        let mut sum = 0.0f64;
        let fact = |k: usize| -> f64 { (1..=k).map(|x| x as f64).product() };
        for k in 0..=n {
            let num = fact(n + k - 1) * 4f64.powi(k as i32);
            let den = fact(n - k) * fact(2 * k);
            sum += (n as f64) * num / den;
            d[k] = sum;
        }
        let mut acc = creal(0.0);
        for k in 0..n {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            acc += (-s * ((k + 1) as f64).ln()).exp() * (sign * (d[k] - d[n]));
        }
        let eta = -acc / d[n];
        eta / (creal(1.0) - ((creal(1.0) - s) * 2f64.ln()).exp())
    }

    #[test]
    fn zeta_two() {
        let z = zeta(creal(2.0f64)).unwrap();
        let exact = PI * PI / 6.0;
        assert!(((z.re - exact) / exact).abs() < 1e-12);
        assert!(z.im.abs() < 1e-15);
    }

    #[test]
    fn zeta_zero_and_negative_integers() {
        let z = zeta(creal(0.0f64)).unwrap();
        assert!((z.re + 0.5).abs() < 1e-13);
        let z = zeta(creal(-1.0f64)).unwrap();
        assert!((z.re + 1.0 / 12.0).abs() < 1e-13);
        let z = zeta(creal(-3.0f64)).unwrap();
        assert!((z.re - 1.0 / 120.0).abs() < 1e-13);
        assert!(zeta(creal(-2.0f64)).unwrap().norm() < 1e-14);
    }

    #[test]
    fn zeta_zero_agrees_with_reflection() {
        let left = zeta(creal(-0.499f64)).unwrap();
        let right = zeta(creal(-0.501f64)).unwrap();
        assert!((left - right).norm() < 2e-3);
    }

    #[test]
    fn pole_is_reported() {
        assert!(matches!(zeta(creal(1.0f64)), Err(Error::PoleAtOne)));
    }

    #[test]
    fn matches_borwein_eta_oracle() {
        for &(re, im) in &[
            (0.5, 14.0),
            (0.3, 3.0),
            (2.0, 30.0),
            (0.9, 45.0),
            (1.5, 0.2),
            (4.0, -7.0),
        ] {
            let s = cplx(re, im);
            let a = zeta(s).unwrap();
            let b = eta_oracle(s);
            assert!((a - b).norm() / b.norm() < 1e-12, "s = {s}: {a} vs {b}");
        }
    }

    #[test]
    fn hurwitz_at_one_is_riemann() {
        let s = cplx(1.7f64, 12.0);
        let h = hurwitz_zeta(s, 1.0).unwrap();
        let z = zeta(s).unwrap();
        assert!((h - z).norm() < 1e-13);
        // ζ(s, 1/2) = (2^s - 1) ζ(s)
        let h = hurwitz_zeta(s, 0.5).unwrap();
        let expect = ((s * 2f64.ln()).exp() - 1.0) * z;
        assert!((h - expect).norm() / expect.norm() < 1e-12);
    }

    #[test]
    fn error_bound_is_small_in_strip() {
        for &(re, im) in &[(-0.4f64, 0.0f64), (0.5, 120.0), (5.0, 119.0), (-0.5, 60.0)] {
            let b = zeta_with_error(cplx(re, im)).unwrap();
            assert!(b.bound / b.value.norm().max(1e-3) < 1e-12, "{re} {im}: {}", b.bound);
        }
    }
}
