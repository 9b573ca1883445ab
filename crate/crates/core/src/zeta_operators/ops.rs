//! Actions of `Z`, `Z⁻¹`, `ℒ_χ` and their Euler products on test functions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function_spaces::{HalfLineFn, ParityFunction};
use crate::scalar::{cplx, creal, pairwise_sum, pairwise_sum_c, Bounded, Real, C};

use super::character::DirichletCharacter;
use super::sieve::{smooth_numbers, Sieve};

/// Truncation parameters for Dirichlet series and Euler products.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TruncationSpec {
    /// Largest index `n` ever summed.
    pub n_max: usize,
    /// Largest prime in Euler products and prime sums.
    pub p_max: u64,
    /// Largest prime-power exponent.
    pub e_max: u32,
    /// Certified bound required for every neglected tail.
    pub tail_tol: f64,
}

impl Default for TruncationSpec {
    fn default() -> Self {
        Self {
            n_max: 10_000_000,
            p_max: 100,
            e_max: 64,
            tail_tol: 1e-14,
        }
    }
}

impl TruncationSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n_max < 1 || self.p_max < 2 || self.e_max < 1 || !(self.tail_tol > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "truncation needs n_max ≥ 1, p_max ≥ 2, e_max ≥ 1, tail_tol > 0: {self}"
            )));
        }
        Ok(())
    }

    pub fn with_tail_tol(self, tail_tol: f64) -> Self {
        Self { tail_tol, ..self }
    }
}

impl fmt::Display for TruncationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n_max={},p_max={},e_max={},tail_tol={:e}",
            self.n_max, self.p_max, self.e_max, self.tail_tol
        )
    }
}

/// Parses `n_max=1000,p_max=50,e_max=30,tail_tol=1e-12`; missing keys keep
/// their defaults. `n`, `p`, `e` and `tol` are accepted as short keys.
impl FromStr for TruncationSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut spec = TruncationSpec::default();
        let bad = |msg: String| Error::InvalidSpec(format!("truncation `{s}`: {msg}"));
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got `{part}`")))?;
            let value = value.trim();
            let int = |v: &str| -> Result<u64> {
                // allow 1e6 style integers
                let x: f64 = v.parse().map_err(|_| bad(format!("`{v}` is not a number")))?;
                if x < 0.0 || x.fract() != 0.0 || x > 1e15 {
                    return Err(bad(format!("`{v}` is not a non-negative integer")));
                }
                Ok(x as u64)
            };
            match key.trim() {
                "n_max" | "n" => spec.n_max = int(value)? as usize,
                "p_max" | "p" => spec.p_max = int(value)?,
                "e_max" | "e" => spec.e_max = int(value)? as u32,
                "tail_tol" | "tol" => {
                    spec.tail_tol = value.parse().map_err(|_| bad(format!("`{value}` is not a number")))?
                }
                other => return Err(bad(format!("unknown key `{other}`"))),
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// Smallest `n ≤ n_max` whose tail bound is far below the tolerance, with
/// that bound. Fails when even `n_max` cannot be certified.
pub(crate) fn cutoff<T: Real>(
    tail: impl Fn(usize) -> T,
    tr: &TruncationSpec,
    what: &'static str,
) -> Result<(usize, T)> {
    tr.validate()?;
    let tol = T::lit(tr.tail_tol);
    let at_max = tail(tr.n_max);
    if !(at_max <= tol) {
        return Err(Error::TailBoundViolation {
            what,
            bound: at_max.as_f64(),
            tolerance: tr.tail_tol,
        });
    }
    let target = tol * T::lit(1e-3);
    if at_max > target {
        return Ok((tr.n_max, at_max));
    }
    // bounds decrease in n: double, then bisect
    let mut hi = 1usize;
    while hi < tr.n_max && !(tail(hi) <= target) {
        hi = (hi * 2).min(tr.n_max);
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if tail(mid) <= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((hi, tail(hi)))
}

/// Number of terms summed by [`apply_z`] at `x`, with the certified tail.
pub fn z_cutoff<T: Real, F: HalfLineFn<T> + ?Sized>(f: &F, x: T, tr: &TruncationSpec) -> Result<(usize, T)> {
    check_point(x)?;
    cutoff(|n| f.weighted_tail(x, n, T::zero()), tr, "Z tail")
}

fn check_point<T: Real>(x: T) -> Result<()> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::Domain(format!("operators act at x > 0, got {x}")));
    }
    Ok(())
}

fn weighted_sum<T: Real, F: HalfLineFn<T> + ?Sized>(
    f: &F,
    x: T,
    n: usize,
    tail: T,
    weight: impl Fn(usize) -> T,
) -> Bounded<T, T> {
    let mut terms = Vec::with_capacity(n);
    let mut err = tail;
    let mut mass = T::zero();
    for k in 1..=n {
        let w = weight(k);
        if w == T::zero() {
            continue;
        }
        let (v, e) = f.eval_bounded(x * T::from_usize_lossy(k));
        terms.push(w * v);
        err += w.abs() * e;
        mass += (w * v).abs();
    }
    let value = pairwise_sum(&terms);
    Bounded::new(value, err + mass * T::epsilon() * T::lit(4.0))
}

/// `Zf(x) = Σ_{n ≥ 1} f(nx)` with a certified error bound.
pub fn apply_z<T: Real, F: HalfLineFn<T> + ?Sized>(f: &F, x: T, tr: &TruncationSpec) -> Result<Bounded<T, T>> {
    let (n, tail) = z_cutoff(f, x, tr)?;
    Ok(weighted_sum(f, x, n, tail, |_| T::one()))
}

/// `Z⁻¹f(x) = Σ_{n ≥ 1} μ(n) f(nx)`.
pub fn apply_z_inverse<T: Real, F: HalfLineFn<T> + ?Sized>(f: &F, x: T, tr: &TruncationSpec) -> Result<Bounded<T, T>> {
    let (n, tail) = z_cutoff(f, x, tr)?;
    let sieve = Sieve::new(n);
    Ok(apply_z_inverse_with(&sieve, f, x, n, tail))
}

fn apply_z_inverse_with<T: Real, F: HalfLineFn<T> + ?Sized>(
    sieve: &Sieve,
    f: &F,
    x: T,
    n: usize,
    tail: T,
) -> Bounded<T, T> {
    weighted_sum(f, x, n, tail, |k| T::from_i8(sieve.mobius(k)).unwrap_or(T::zero()))
}

/// `Zf` as a function, so that operators can be composed.
pub struct ZOperator<'a, T: Real, F: HalfLineFn<T> + ?Sized> {
    f: &'a F,
    tr: TruncationSpec,
    inverse: bool,
    _t: std::marker::PhantomData<T>,
}

impl<'a, T: Real, F: HalfLineFn<T> + ?Sized> ZOperator<'a, T, F> {
    pub fn new(f: &'a F, tr: TruncationSpec) -> Self {
        Self {
            f,
            tr,
            inverse: false,
            _t: std::marker::PhantomData,
        }
    }

    pub fn inverse(f: &'a F, tr: TruncationSpec) -> Self {
        Self {
            inverse: true,
            ..Self::new(f, tr)
        }
    }
}

impl<T: Real, F: HalfLineFn<T> + ?Sized> HalfLineFn<T> for ZOperator<'_, T, F> {
    fn eval(&self, x: T) -> T {
        self.eval_bounded(x).0
    }

    fn eval_bounded(&self, x: T) -> (T, T) {
        let r = if self.inverse {
            apply_z_inverse(self.f, x, &self.tr)
        } else {
            apply_z(self.f, x, &self.tr)
        };
        match r {
            Ok(b) => (b.value, b.bound),
            Err(_) => (T::nan(), T::infinity()),
        }
    }

    fn weighted_tail(&self, x: T, n: usize, j: T) -> T {
        // Σ_{k>n} k^j Σ_m |f(mkx)| ≤ Σ_{N>n} d(N) N^j |f(Nx)|, d(N) ≤ 2√N
        T::lit(2.0) * self.f.weighted_tail(x, n, j + T::lit(0.5))
    }
}

/// Squarefree `p_max`-smooth numbers `≤ bound` with their Möbius signs.
fn squarefree_smooth(primes: &[u64], bound: u64) -> Vec<(u64, i8)> {
    let mut out = vec![(1u64, 1i8)];
    for &p in primes {
        if p > bound {
            break;
        }
        let len = out.len();
        for i in 0..len {
            let (v, sign) = out[i];
            if let Some(w) = v.checked_mul(p).filter(|&w| w <= bound) {
                out.push((w, -sign));
            }
        }
    }
    out.sort_unstable();
    out
}

fn primes_for(tr: &TruncationSpec) -> Vec<u64> {
    Sieve::new(tr.p_max as usize).primes().to_vec()
}

/// `∏_{p ≤ p_max} Σ_{e ≤ e_max} λ_{p^{-e}} f(x)`: the sum of `f(nx)` over
/// `p_max`-smooth `n`. Indices past the `Z` cutoff are bounded by its tail.
pub fn euler_product_z<T: Real, F: HalfLineFn<T> + ?Sized>(f: &F, x: T, tr: &TruncationSpec) -> Result<Bounded<T, T>> {
    let (n, tail) = z_cutoff(f, x, tr)?;
    let smooth = smooth_numbers(&primes_for(tr), n as u64, tr.e_max);
    let mut terms = Vec::with_capacity(smooth.len());
    let mut err = tail;
    for m in smooth {
        let (v, e) = f.eval_bounded(x * T::from_u64(m).expect("index"));
        terms.push(v);
        err += e;
    }
    let mass: T = terms.iter().map(|v| v.abs()).sum();
    Ok(Bounded::new(
        pairwise_sum(&terms),
        err + mass * T::epsilon() * T::lit(4.0),
    ))
}

/// `∏_{p ≤ p_max} (1 - λ_p^{-1}) f(x)`, a finite sum over squarefree smooth `n`.
pub fn euler_product_z_inverse<T: Real, F: HalfLineFn<T> + ?Sized>(
    f: &F,
    x: T,
    tr: &TruncationSpec,
) -> Result<Bounded<T, T>> {
    let (n, tail) = z_cutoff(f, x, tr)?;
    let mut terms = Vec::new();
    let mut err = tail;
    for (m, sign) in squarefree_smooth(&primes_for(tr), n as u64) {
        let (v, e) = f.eval_bounded(x * T::from_u64(m).expect("index"));
        terms.push(v * T::from_i8(sign).expect("sign"));
        err += e;
    }
    let mass: T = terms.iter().map(|v| v.abs()).sum();
    Ok(Bounded::new(
        pairwise_sum(&terms),
        err + mass * T::epsilon() * T::lit(4.0),
    ))
}

fn char_value<T: Real>(chi: &DirichletCharacter, n: u64) -> C<T> {
    let v = chi.value(n);
    cplx(T::lit(v.re), T::lit(v.im))
}

/// `Σ_{n ≥ 1} w(n) f(nx)` for a parity function and bounded weights `|w| ≤ 1`.
fn twisted_sum<T: Real>(
    f: &ParityFunction<T>,
    x: T,
    tr: &TruncationSpec,
    weight: impl Fn(u64) -> C<T>,
) -> Result<Bounded<C<T>, T>> {
    check_point(x)?;
    let (n, tail) = cutoff(|n| f.weighted_tail_abs(x, n, T::zero()), tr, "twisted tail")?;
    let mut terms = Vec::with_capacity(n);
    let mut mass = T::zero();
    for k in 1..=n as u64 {
        let w = weight(k);
        if w.norm() == T::zero() {
            continue;
        }
        let v = w * f.eval(x * T::from_u64(k).expect("index"));
        mass += v.norm();
        terms.push(v);
    }
    Ok(Bounded::new(
        pairwise_sum_c(&terms),
        tail + mass * T::epsilon() * T::lit(4.0),
    ))
}

fn check_parity<T: Real>(chi: &DirichletCharacter, f: &ParityFunction<T>) -> Result<()> {
    let sign = f.parity().sign();
    if sign != chi.parity() {
        return Err(Error::ParityMismatch {
            function: sign,
            character: chi.parity(),
        });
    }
    Ok(())
}

/// `ℒ_χ f(x) = Σ_{n ≥ 1} χ(n) f(nx)`.
pub fn apply_l_chi<T: Real>(
    chi: &DirichletCharacter,
    f: &ParityFunction<T>,
    x: T,
    tr: &TruncationSpec,
) -> Result<Bounded<C<T>, T>> {
    check_parity(chi, f)?;
    twisted_sum(f, x, tr, |n| char_value(chi, n))
}

/// `∏_{p ≤ p_max} (1 - χ(p) λ_p^{-1})^{-1} f(x)`, expanded over smooth `n`.
pub fn euler_product_l_chi<T: Real>(
    chi: &DirichletCharacter,
    f: &ParityFunction<T>,
    x: T,
    tr: &TruncationSpec,
) -> Result<Bounded<C<T>, T>> {
    check_parity(chi, f)?;
    check_point(x)?;
    let (n, tail) = cutoff(|n| f.weighted_tail_abs(x, n, T::zero()), tr, "twisted tail")?;
    let smooth = smooth_numbers(&primes_for(tr), n as u64, tr.e_max);
    let terms: Vec<C<T>> = smooth
        .into_iter()
        .map(|m| char_value::<T>(chi, m) * f.eval(x * T::from_u64(m).expect("index")))
        .collect();
    let mass: T = terms.iter().map(|v| v.norm()).sum();
    Ok(Bounded::new(
        pairwise_sum_c(&terms),
        tail + mass * T::epsilon() * T::lit(4.0),
    ))
}

/// Both sides of an identity and their difference.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IdentityCheck<T: Real = f64> {
    pub lhs: C<T>,
    pub rhs: C<T>,
    pub residual: T,
    /// Certified numerical error of the two sides together.
    pub est_error: T,
}

impl<T: Real> IdentityCheck<T> {
    fn new(lhs: Bounded<C<T>, T>, rhs: Bounded<C<T>, T>) -> Self {
        Self {
            lhs: lhs.value,
            rhs: rhs.value,
            residual: (lhs.value - rhs.value).norm(),
            est_error: lhs.bound + rhs.bound,
        }
    }
}

/// `f(0)/2 + Zf(x) = x⁻¹ Z𝓕f(1/x) + x⁻¹ 𝓕f(0)/2` for even `f`.
pub fn poisson_check<T: Real>(f: &ParityFunction<T>, x: T, tr: &TruncationSpec) -> Result<IdentityCheck<T>> {
    if f.parity() != crate::function_spaces::Parity::Even {
        return Err(Error::Domain("Poisson summation check needs an even function".into()));
    }
    check_point(x)?;
    let g = f.fourier();
    let zf = twisted_sum(f, x, tr, |_| creal(T::one()))?;
    let zg = twisted_sum(&g, x.recip(), tr, |_| creal(T::one()))?;
    let half = T::lit(0.5);
    let lhs = Bounded::new(f.eval(T::zero()) * half + zf.value, zf.bound);
    let rhs = Bounded::new((zg.value + g.eval(T::zero()) * half) / x, zg.bound / x);
    Ok(IdentityCheck::new(lhs, rhs))
}

/// `ℒ_χ f(x) = κ √d (dx)⁻¹ ℒ_χ̄ 𝓕f(1/(dx))`, i.e. `ℒ_χ f = κ √d λ_d^{-1} J ℒ_χ̄ 𝓕f`.
pub fn twisted_poisson_check<T: Real>(
    chi: &DirichletCharacter,
    f: &ParityFunction<T>,
    x: T,
    tr: &TruncationSpec,
) -> Result<IdentityCheck<T>> {
    if !chi.is_primitive() {
        return Err(Error::NonPrimitiveCharacter {
            modulus: chi.modulus(),
            index: chi.index(),
        });
    }
    let lhs = apply_l_chi(chi, f, x, tr)?;
    let g = f.fourier();
    let d = T::from_u64(chi.modulus()).expect("modulus");
    let y = d * x;
    let conj = chi.conjugate();
    let inner = apply_l_chi(&conj, &g, y.recip(), tr)?;
    let k = chi.kappa();
    let kappa = cplx(T::lit(k.re), T::lit(k.im));
    let factor = kappa * d.sqrt() / y;
    let rhs = Bounded::new(factor * inner.value, factor.norm() * inner.bound);
    Ok(IdentityCheck::new(lhs, rhs))
}
