//! Mellin and Fourier transforms and the pairing `⟨𝓕(ln|x|), ψ⟩`.

mod log_pairing;

pub(crate) use log_pairing::cosine_transform_modulus;
pub use log_pairing::{pair_log_fourier, LogPairing, LogPairingInput, LogPairingOptions};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::function_spaces::{ParityFunction, TestFunction};
use crate::quadrature::{trapezoid_c, QuadratureSpec};
use crate::scalar::{creal, Real, C};
use crate::special_functions::gamma;

/// `f̂(s)` with an error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MellinValue<T: Real = f64> {
    pub s: C<T>,
    pub value: C<T>,
    pub est_error: T,
}

/// Exact Fourier transform `𝓕f(y) = ∫ f(x) e^{2πixy} dx` on the Gaussian family.
pub fn fourier<T: Real>(f: &ParityFunction<T>) -> ParityFunction<T> {
    f.fourier()
}

/// `𝓕f(y)` by the trapezoid rule on `[-L, L]`; an oracle for [`fourier`].
pub fn fourier_quadrature<T: Real>(f: &ParityFunction<T>, y: T, half_width: T, n_points: usize) -> C<T> {
    let h = half_width * T::lit(2.0) / T::from_usize_lossy(n_points - 1);
    let mut acc = creal(T::zero());
    for i in 0..n_points {
        let x = -half_width + h * T::from_usize_lossy(i);
        let w = if i == 0 || i == n_points - 1 {
            T::lit(0.5)
        } else {
            T::one()
        };
        let phase = C::new(T::zero(), T::TAU() * x * y).exp();
        acc += f.eval(x) * phase * w;
    }
    acc * h
}

fn mellin_window_check<T: Real>(tail: T, q: &QuadratureSpec<T>) -> Result<()> {
    if tail > q.tolerance {
        return Err(Error::WindowTooSmall {
            what: "mellin",
            tail: tail.as_f64(),
            tolerance: q.tolerance.as_f64(),
        });
    }
    Ok(())
}

/// `f̂(s) = ∫ f(x) x^s d×x` by the trapezoid rule in `u = ln x`.
///
/// The error estimate adds the difference to the half-density grid, the
/// certified mass outside the window and a rounding floor.
pub fn mellin<T: Real>(f: &TestFunction<T>, s: C<T>, q: &QuadratureSpec<T>) -> Result<MellinValue<T>> {
    q.validate()?;
    let tail = f.mellin_window_tail(q.u_min, q.u_max, s.re);
    mellin_window_check(tail, q)?;
    let out = trapezoid_c(q, |u| (s * u).exp() * f.eval_log(u));
    let est = (out.value - out.coarse).norm() + tail + T::epsilon() * T::lit(32.0) * out.abs_mass;
    if est > q.tolerance {
        return Err(Error::ToleranceNotMet {
            estimate: est.as_f64(),
            tolerance: q.tolerance.as_f64(),
        });
    }
    Ok(MellinValue {
        s,
        value: out.value,
        est_error: est,
    })
}

/// A window and density adequate for `mellin(f, s)` at the given tolerance.
pub fn mellin_spec_for<T: Real>(f: &TestFunction<T>, s: C<T>, tolerance: T) -> Result<QuadratureSpec<T>> {
    let (mut a, mut b) = f.log_support(T::lit(1e-300));
    if f.support_start().is_none() || f.support_end().is_none() {
        let step = T::lit(0.5);
        let limit = T::lit(1e-3) * tolerance;
        for _ in 0..400 {
            if f.lower_tail_integral(a.exp(), s.re) <= limit {
                break;
            }
            a -= step;
        }
        for _ in 0..400 {
            if f.upper_tail_integral(b.exp(), s.re) <= limit {
                break;
            }
            b += step;
        }
    }
    // oscillation e^{i t u} needs a few points per period on top of the shape
    let width = b - a;
    let per_unit = T::lit(24.0) + s.im.abs() * T::lit(2.0);
    let n = (width * per_unit).ceil().to_usize().unwrap_or(1 << 20).max(257) | 1;
    QuadratureSpec::new(a, b, n, tolerance)
}

/// Lowest degree present in a parity function.
fn min_degree<T: Real>(f: &ParityFunction<T>) -> u32 {
    f.terms().iter().map(|t| t.degree).min().unwrap_or(0)
}

/// `∫₀^∞ f(x) x^s d×x` for a parity function, by quadrature in `ln x`.
pub fn mellin_parity<T: Real>(f: &ParityFunction<T>, s: C<T>, q: &QuadratureSpec<T>) -> Result<MellinValue<T>> {
    q.validate()?;
    let k0 = T::from_usize_lossy(min_degree(f) as usize);
    if s.re + k0 <= T::zero() {
        return Err(Error::DivergentIntegral(format!(
            "Mellin transform of a degree-{} member needs Re s > {}",
            min_degree(f),
            -k0
        )));
    }
    let pi = T::PI();
    // tails: below the window e^{-απx²} ≤ 1; above it the Gaussian bound
    let mut tail = T::zero();
    let x_hi = q.u_max.exp();
    for t in f.terms() {
        let p = s.re + T::from_usize_lossy(t.degree as usize);
        tail += t.coeff.norm() * (p * q.u_min).exp() / p;
        let beta = t.alpha * pi;
        let slack = T::lit(2.0) * beta - (p - T::lit(2.0)) / (x_hi * x_hi);
        tail += if slack > T::zero() {
            t.coeff.norm() * x_hi.powf(p - T::lit(2.0)) * (-beta * x_hi * x_hi).exp() / slack
        } else {
            T::infinity()
        };
    }
    mellin_window_check(tail, q)?;
    let out = trapezoid_c(q, |u| f.eval(u.exp()) * (s * u).exp());
    let est = (out.value - out.coarse).norm() + tail + T::epsilon() * T::lit(32.0) * out.abs_mass;
    if est > q.tolerance {
        return Err(Error::ToleranceNotMet {
            estimate: est.as_f64(),
            tolerance: q.tolerance.as_f64(),
        });
    }
    Ok(MellinValue {
        s,
        value: out.value,
        est_error: est,
    })
}

/// `f̂(s)` on an automatically chosen window, refining the grid until the
/// estimate meets `tolerance`.
pub fn mellin_auto<T: Real>(f: &TestFunction<T>, s: C<T>, tolerance: T) -> Result<MellinValue<T>> {
    let mut q = mellin_spec_for(f, s, tolerance)?;
    let mut last = None;
    for _ in 0..8 {
        match mellin(f, s, &q) {
            Err(e @ Error::ToleranceNotMet { .. }) => {
                last = Some(e);
                q = q.refined();
            }
            other => return other,
        }
    }
    Err(last.expect("at least one attempt"))
}

/// Closed form `Σ c · ½ (απ)^{-(s+k)/2} Γ((s+k)/2)`.
pub fn mellin_parity_closed_form<T: Real>(f: &ParityFunction<T>, s: C<T>) -> Result<C<T>> {
    let mut acc = creal(T::zero());
    for t in f.terms() {
        let z = (s + T::from_usize_lossy(t.degree as usize)) * T::lit(0.5);
        let ap = t.alpha * T::PI();
        acc += t.coeff * (-z * ap.ln()).exp() * gamma(z)? * T::lit(0.5);
    }
    Ok(acc)
}
