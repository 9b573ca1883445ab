//! Truncated algebra of prime-power combs `Σ a_n δ_{1/n}` under
//! multiplicative convolution, i.e. Dirichlet series cut at `n ≤ N`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::function_spaces::{HalfLineFn, TestFunction};
use crate::scalar::{pairwise_sum, Real};
use crate::zeta_operators::{cutoff, Sieve, TruncationSpec};

/// `Σ_{n ≤ N} a_n δ_{1/n}`; `δ_{1/n}` acts as `λ_n^{-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Comb<T: Real = f64> {
    coeffs: Vec<T>,
}

impl<T: Real> Comb<T> {
    fn from_fn(len: usize, a: impl Fn(usize) -> T) -> Self {
        let mut coeffs = vec![T::zero(); len + 1];
        for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
            *c = a(n);
        }
        Self { coeffs }
    }

    /// `Z = Σ δ_{1/n}`.
    pub fn zeta(len: usize) -> Self {
        Self::from_fn(len, |_| T::one())
    }

    /// `Z⁻¹ = Σ μ(n) δ_{1/n}`.
    pub fn mobius(sieve: &Sieve, len: usize) -> Self {
        Self::from_fn(len, |n| T::from_i8(sieve.mobius(n)).expect("small"))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn coeff(&self, n: usize) -> T {
        self.coeffs[n]
    }

    /// `∂δ_t = ln t · δ_t`, so `a_n ↦ -a_n ln n`.
    pub fn derivation(&self) -> Self {
        Self::from_fn(self.len(), |n| -self.coeffs[n] * T::from_usize_lossy(n).ln())
    }

    pub fn scale(&self, c: T) -> Self {
        Self::from_fn(self.len(), |n| c * self.coeffs[n])
    }

    /// `δ_{1/m} * δ_{1/n} = δ_{1/mn}`, kept for `mn ≤ N`.
    pub fn convolve(&self, other: &Self) -> Self {
        let len = self.len().min(other.len());
        let mut out = vec![T::zero(); len + 1];
        for m in 1..=len {
            let a = self.coeffs[m];
            if a == T::zero() {
                continue;
            }
            for n in 1..=len / m {
                out[m * n] += a * other.coeffs[n];
            }
        }
        Self { coeffs: out }
    }

    /// `(f * comb)(1) = Σ a_n f(n)`.
    pub fn pair(&self, f: &TestFunction<T>) -> T {
        let terms: Vec<T> = (1..=self.len())
            .filter(|&n| self.coeffs[n] != T::zero())
            .map(|n| self.coeffs[n] * f.value(T::from_usize_lossy(n)))
            .collect();
        pairwise_sum(&terms)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WeilDerivationCheck<T: Real = f64> {
    /// `τ(f * Z∂(Z⁻¹))` from the comb algebra.
    pub lhs: T,
    /// `Σ_{p ≤ p_max} Σ_{e ≤ e_max} ln p f(p^e)`.
    pub rhs: T,
    pub residual: T,
    /// Comb length `N`.
    pub comb_length: usize,
    pub tail_bound: T,
    /// `max_n |∂(Z⁻¹) + Z⁻² ∂Z|` over the comb.
    pub derivation_rule_residual: T,
}

/// `Σ_{n > N} ln n |f(n)|` through `ln n ≤ n^j / (e j)`.
fn log_weighted_tail<T: Real>(f: &TestFunction<T>, n: usize) -> T {
    [0.5, 0.25, 0.125, 0.0625]
        .iter()
        .map(|&j| {
            let j = T::lit(j);
            HalfLineFn::weighted_tail(f, T::one(), n, j) / (T::one().exp() * j)
        })
        .fold(T::infinity(), T::min)
}

/// `τ(f * Z∂(Z⁻¹))` computed in the comb algebra against the prime-power sum
/// `Σ_p Σ_e ln p f(p^e)` summed exponent-first.
pub fn weil_derivation_check<T: Real>(f: &TestFunction<T>, tr: &TruncationSpec) -> Result<WeilDerivationCheck<T>> {
    tr.validate()?;
    let tol = T::lit(tr.tail_tol);
    let (len, comb_tail) = cutoff(|n| log_weighted_tail(f, n), tr, "comb length")?;
    let sieve = Sieve::new(len.max(tr.p_max as usize));

    let z = Comb::<T>::zeta(len);
    let zinv = Comb::mobius(&sieve, len);
    let d_zinv = zinv.derivation();
    let g = z.convolve(&d_zinv);
    let lhs = g.pair(f);

    // ∂(Z⁻¹) = -Z⁻² ∂Z
    let via_rule = zinv.convolve(&zinv).convolve(&z.derivation()).scale(-T::one());
    let derivation_rule_residual = (1..=len)
        .map(|n| (d_zinv.coeff(n) - via_rule.coeff(n)).abs())
        .fold(T::zero(), T::max);

    let primes = sieve.primes_up_to(tr.p_max);
    let mut rows = Vec::with_capacity(tr.e_max as usize);
    let mut exp_tail = T::zero();
    for e in 1..=tr.e_max {
        let et = T::from_u32(e).expect("exponent");
        let row: Vec<T> = primes
            .iter()
            .map(|&p| {
                let lp = T::from_u64(p).expect("prime").ln();
                lp * f.eval_log(et * lp)
            })
            .collect();
        rows.push(pairwise_sum(&row));
    }
    for &p in primes {
        let lp = T::from_u64(p).expect("prime").ln();
        let top = (T::from_u32(tr.e_max).expect("exponent") * lp).exp();
        exp_tail += if top >= f.monotone_threshold(T::zero()) {
            f.upper_tail_integral(top, T::zero())
        } else {
            T::infinity()
        };
    }
    let prime_tail = log_weighted_tail(f, tr.p_max as usize);
    let tail_bound = comb_tail + exp_tail + prime_tail;
    if !(exp_tail + prime_tail <= tol) {
        return Err(Error::TailBoundViolation {
            what: "prime powers beyond p_max or e_max",
            bound: (exp_tail + prime_tail).as_f64(),
            tolerance: tr.tail_tol,
        });
    }
    let rhs = pairwise_sum(&rows);
    Ok(WeilDerivationCheck {
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
        comb_length: len,
        tail_bound,
        derivation_rule_residual,
    })
}
