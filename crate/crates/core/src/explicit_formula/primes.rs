//! Prime side: `W_p(f) = ln p Σ_{e ≥ 1} [f(p^{-e}) p^{-e} + f(p^e)]`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function_spaces::{HalfLineFn, TestFunction};
use crate::scalar::{cplx, creal, pairwise_sum, Bounded, Real, C};
use crate::zeta_operators::{DirichletCharacter, Sieve, TruncationSpec};

/// Bound on the prime-power terms of `W_p` with exponent `e > e_max`.
fn exponent_tail<T: Real>(f: &TestFunction<T>, p: T, e_max: u32) -> T {
    let ln_p = p.ln();
    let e = T::from_u32(e_max).expect("exponent");
    let hi = (e * ln_p).exp();
    let lo = (-e * ln_p).exp();
    // Σ_{e>E} |f(p^e)| ≤ ∫_E^∞ |f(p^e)| de once decreasing, and likewise below
    let upper = if hi >= f.monotone_threshold(T::zero()) {
        f.upper_tail_integral(hi, T::zero()) / ln_p
    } else {
        T::infinity()
    };
    let lower = if lo <= f.rising_threshold(T::one()) {
        f.lower_tail_integral(lo, T::one()) / ln_p
    } else {
        T::infinity()
    };
    ln_p * (upper + lower)
}

fn check_prime(p: u64) -> Result<()> {
    let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if !is_prime {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    Ok(())
}

fn w_p_unchecked<T: Real>(f: &TestFunction<T>, p: u64, e_max: u32, tail_tol: T) -> Result<Bounded<T, T>> {
    let pt = T::from_u64(p).expect("prime");
    let ln_p = pt.ln();
    let tail = exponent_tail(f, pt, e_max);
    if !(tail <= tail_tol) {
        return Err(Error::TailBoundViolation {
            what: "prime-power exponent tail",
            bound: tail.as_f64(),
            tolerance: tail_tol.as_f64(),
        });
    }
    let mut terms = Vec::with_capacity(2 * e_max as usize);
    for e in 1..=e_max {
        let u = T::from_u32(e).expect("exponent") * ln_p;
        terms.push(f.eval_log(u));
        terms.push(f.eval_log(-u) * (-u).exp());
    }
    let mass: T = terms.iter().map(|t| t.abs()).sum();
    Ok(Bounded::new(
        ln_p * pairwise_sum(&terms),
        tail + ln_p * mass * T::epsilon() * T::lit(4.0),
    ))
}

/// `W_p(f)` summed to `e_max`, with the tail past `e_max` certified below
/// `tail_tol`.
pub fn w_p<T: Real>(f: &TestFunction<T>, p: u64, tr: &TruncationSpec) -> Result<Bounded<T, T>> {
    tr.validate()?;
    check_prime(p)?;
    w_p_unchecked(f, p, tr.e_max, T::lit(tr.tail_tol))
}

/// `Σ_{p ≤ p_max} W_p(f)` and its error budget.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PrimeSide<T: Real = f64> {
    pub total: T,
    pub primes: usize,
    /// Sum of the per-prime exponent tails and rounding.
    pub exponent_tail: T,
    /// Bound on `Σ_{p > p_max} W_p(f)`.
    pub prime_tail: T,
}

impl<T: Real> PrimeSide<T> {
    pub fn error(&self) -> T {
        self.exponent_tail + self.prime_tail
    }
}

/// `Σ_{p > P} |W_p(f)| ≤ Σ_{n > P} ln n (|f(n)| + |Jf(n)|)` and
/// `ln n ≤ n^j / (e j)`, minimised over a few `j`.
fn prime_tail<T: Real>(f: &TestFunction<T>, p_max: u64) -> T {
    let n = p_max as usize;
    let jf = f.apply_j();
    [0.5, 0.25, 0.125, 0.0625]
        .iter()
        .map(|&j| {
            let j = T::lit(j);
            let c = (T::one().exp() * j).recip();
            c * (HalfLineFn::weighted_tail(f, T::one(), n, j) + HalfLineFn::weighted_tail(&jf, T::one(), n, j))
        })
        .fold(T::infinity(), T::min)
}

pub fn w_prime_total<T: Real>(f: &TestFunction<T>, tr: &TruncationSpec) -> Result<PrimeSide<T>> {
    tr.validate()?;
    let tol = T::lit(tr.tail_tol);
    let p_tail = prime_tail(f, tr.p_max);
    if !(p_tail <= tol) {
        return Err(Error::TailBoundViolation {
            what: "primes above p_max",
            bound: p_tail.as_f64(),
            tolerance: tr.tail_tol,
        });
    }
    let sieve = Sieve::new(tr.p_max as usize);
    // each prime gets an equal share of the exponent-tail tolerance
    let share = tol / T::from_usize_lossy(sieve.primes().len().max(1));
    let parts = sieve
        .primes()
        .par_iter()
        .map(|&p| w_p_unchecked(f, p, tr.e_max, share))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<T> = parts.iter().map(|b| b.value).collect();
    let mass: T = values.iter().map(|v| v.abs()).sum();
    Ok(PrimeSide {
        total: pairwise_sum(&values),
        primes: parts.len(),
        exponent_tail: parts.iter().map(|b| b.bound).sum::<T>() + mass * T::epsilon() * T::lit(4.0),
        prime_tail: p_tail,
    })
}

fn to_c<T: Real>(v: num_complex::Complex64) -> C<T> {
    cplx(T::lit(v.re), T::lit(v.im))
}

/// Twisted prime term `ln p Σ_e [χ(p)^e f(p^e) + χ̄(p)^e p^{-e} f(p^{-e})]`.
///
/// This form is derived by analogy with the untwisted case and is only
/// validated through linearity and support locality.
pub fn w_p_chi<T: Real>(
    chi: &DirichletCharacter,
    f: &TestFunction<T>,
    p: u64,
    tr: &TruncationSpec,
) -> Result<Bounded<C<T>, T>> {
    tr.validate()?;
    check_prime(p)?;
    w_p_chi_unchecked(chi, f, p, tr.e_max, T::lit(tr.tail_tol))
}

fn w_p_chi_unchecked<T: Real>(
    chi: &DirichletCharacter,
    f: &TestFunction<T>,
    p: u64,
    e_max: u32,
    tail_tol: T,
) -> Result<Bounded<C<T>, T>> {
    let pt = T::from_u64(p).expect("prime");
    let ln_p = pt.ln();
    let tail = exponent_tail(f, pt, e_max);
    if !(tail <= tail_tol) {
        return Err(Error::TailBoundViolation {
            what: "prime-power exponent tail",
            bound: tail.as_f64(),
            tolerance: tail_tol.as_f64(),
        });
    }
    let c = to_c::<T>(chi.value(p));
    let mut acc = creal(T::zero());
    let mut mass = T::zero();
    let mut ce = creal(T::one());
    for e in 1..=e_max {
        ce *= c;
        if ce.norm() == T::zero() {
            break;
        }
        let u = T::from_u32(e).expect("exponent") * ln_p;
        let up = ce * f.eval_log(u);
        let down = ce.conj() * (f.eval_log(-u) * (-u).exp());
        mass += up.norm() + down.norm();
        acc += up + down;
    }
    Ok(Bounded::new(
        acc * ln_p,
        tail + ln_p * mass * T::epsilon() * T::lit(4.0),
    ))
}

/// `Σ_{p ≤ p_max} W_p^χ(f)` with the same tail budget as [`w_prime_total`].
pub fn w_prime_total_chi<T: Real>(
    chi: &DirichletCharacter,
    f: &TestFunction<T>,
    tr: &TruncationSpec,
) -> Result<Bounded<C<T>, T>> {
    tr.validate()?;
    let tol = T::lit(tr.tail_tol);
    let p_tail = prime_tail(f, tr.p_max);
    if !(p_tail <= tol) {
        return Err(Error::TailBoundViolation {
            what: "primes above p_max",
            bound: p_tail.as_f64(),
            tolerance: tr.tail_tol,
        });
    }
    let sieve = Sieve::new(tr.p_max as usize);
    let share = tol / T::from_usize_lossy(sieve.primes().len().max(1));
    let parts = sieve
        .primes()
        .par_iter()
        .map(|&p| w_p_chi_unchecked(chi, f, p, tr.e_max, share))
        .collect::<Result<Vec<_>>>()?;
    let mut acc = creal(T::zero());
    let mut err = p_tail;
    for b in parts {
        acc += b.value;
        err += b.bound;
    }
    Ok(Bounded::new(acc, err))
}
