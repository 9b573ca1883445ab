use crate::error::{Error, Result};
use crate::scalar::{creal, Real, C};

use super::HalfLineFn;

/// Parity of a function on `ℝ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> i8 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    fn of_degree(k: u32) -> Self {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// `c · x^k · exp(-α π x²)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParityTerm<T: Real = f64> {
    pub coeff: C<T>,
    pub degree: u32,
    pub alpha: T,
}

/// Even or odd Schwartz function `Σ c·x^k·exp(-απx²)`.
///
/// Coefficients are complex: the Fourier transform multiplies odd members
/// by `i` (e.g. `2x e^{-πx²} ↦ 2i x e^{-πx²}`).
#[derive(Clone, Debug, PartialEq)]
pub struct ParityFunction<T: Real = f64> {
    parity: Parity,
    terms: Vec<ParityTerm<T>>,
}

impl<T: Real> ParityFunction<T> {
    pub fn new(parity: Parity, terms: Vec<ParityTerm<T>>) -> Result<Self> {
        for t in &terms {
            if Parity::of_degree(t.degree) != parity {
                return Err(Error::InvalidSpec(format!(
                    "degree {} does not match {:?} parity",
                    t.degree, parity
                )));
            }
            if !(t.alpha > T::zero()) || !t.alpha.is_finite() {
                return Err(Error::InvalidSpec(format!(
                    "Gaussian scale must be positive, got {}",
                    t.alpha
                )));
            }
        }
        Ok(Self { parity, terms }.merged())
    }

    /// Real combination `Σ c·x^k·exp(-απx²)` given as `(c, k, α)` triples;
    /// the parity is read off the degrees.
    pub fn from_real_terms(terms: &[(T, u32, T)]) -> Result<Self> {
        let parity = terms
            .first()
            .map(|t| Parity::of_degree(t.1))
            .ok_or_else(|| Error::InvalidSpec("empty parity function".into()))?;
        Self::new(
            parity,
            terms
                .iter()
                .map(|&(c, degree, alpha)| ParityTerm {
                    coeff: creal(c),
                    degree,
                    alpha,
                })
                .collect(),
        )
    }

    /// `2 exp(-πx²)`, its own Fourier transform.
    pub fn special_even() -> Self {
        Self::from_real_terms(&[(T::lit(2.0), 0, T::one())]).expect("valid")
    }

    /// `2x exp(-πx²)`.
    pub fn special_odd() -> Self {
        Self::from_real_terms(&[(T::lit(2.0), 1, T::one())]).expect("valid")
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn terms(&self) -> &[ParityTerm<T>] {
        &self.terms
    }

    fn merged(mut self) -> Self {
        let mut out: Vec<ParityTerm<T>> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match out.iter_mut().find(|o| o.degree == t.degree && o.alpha == t.alpha) {
                Some(o) => o.coeff += t.coeff,
                None => out.push(t),
            }
        }
        out.retain(|t| t.coeff.norm() != T::zero());
        out.sort_by(|a, b| {
            a.alpha
                .partial_cmp(&b.alpha)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.degree.cmp(&b.degree))
        });
        Self {
            parity: self.parity,
            terms: out,
        }
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.im == T::zero())
    }

    pub fn eval(&self, x: T) -> C<T> {
        let pi = T::PI();
        self.terms
            .iter()
            .map(|t| t.coeff * (x.powi(t.degree as i32) * (-t.alpha * pi * x * x).exp()))
            .fold(creal(T::zero()), |a, b| a + b)
    }

    pub fn scale(&self, c: C<T>) -> Self {
        Self {
            parity: self.parity,
            terms: self
                .terms
                .iter()
                .map(|t| ParityTerm {
                    coeff: t.coeff * c,
                    ..*t
                })
                .collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.parity != other.parity {
            return Err(Error::InvalidSpec("cannot add functions of opposite parity".into()));
        }
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Ok(Self {
            parity: self.parity,
            terms,
        }
        .merged())
    }

    /// `λ_t f(x) = f(x/t)` for `t > 0`.
    pub fn dilated(&self, t: T) -> Result<Self> {
        if !(t > T::zero()) || !t.is_finite() {
            return Err(Error::Domain(format!("dilation must be positive, got {t}")));
        }
        let terms = self
            .terms
            .iter()
            .map(|term| ParityTerm {
                coeff: term.coeff * t.powi(-(term.degree as i32)),
                degree: term.degree,
                alpha: term.alpha / (t * t),
            })
            .collect();
        Ok(Self {
            parity: self.parity,
            terms,
        }
        .merged())
    }

    /// `𝓕f(y) = ∫ f(x) e^{2πixy} dx`, exactly.
    ///
    /// `𝓕[x^k g](y) = (2πi)^{-k} ∂_y^k 𝓕g(y)` with
    /// `𝓕[e^{-απx²}](y) = α^{-1/2} e^{-πy²/α}`.
    pub fn fourier(&self) -> Self {
        let pi = T::PI();
        let mut out = Vec::new();
        for t in &self.terms {
            let beta = pi / t.alpha;
            // ∂^k e^{-βy²} = P_k(y) e^{-βy²}
            let mut poly = vec![T::one()];
            for _ in 0..t.degree {
                let mut next = vec![T::zero(); poly.len() + 1];
                for (j, &c) in poly.iter().enumerate() {
                    if j > 0 {
                        next[j - 1] += c * T::from_usize_lossy(j);
                    }
                    next[j + 1] -= T::lit(2.0) * beta * c;
                }
                poly = next;
            }
            // (2πi)^{-k} = (2π)^{-k} · (-i)^k
            let k = t.degree as i32;
            let phase = match t.degree % 4 {
                0 => C::new(T::one(), T::zero()),
                1 => C::new(T::zero(), -T::one()),
                2 => C::new(-T::one(), T::zero()),
                _ => C::new(T::zero(), T::one()),
            };
            let factor = t.coeff * phase * (T::TAU().powi(-k) / t.alpha.sqrt());
            for (j, &c) in poly.iter().enumerate() {
                if c != T::zero() {
                    out.push(ParityTerm {
                        coeff: factor * c,
                        degree: j as u32,
                        alpha: t.alpha.recip(),
                    });
                }
            }
        }
        Self {
            parity: self.parity,
            terms: out,
        }
        .merged()
    }

    /// Bound on `Σ_{k>n} k^j |f(kx)|`, `+∞` if the terms are not yet decreasing.
    pub fn weighted_tail_abs(&self, x: T, n: usize, j: T) -> T {
        let y = x * T::from_usize_lossy(n);
        let mut total = T::zero();
        for t in &self.terms {
            let beta = t.alpha * T::PI();
            let p = j + T::from_usize_lossy(t.degree as usize);
            // y^p e^{-βy²} decreases once y² ≥ p/(2β)
            if y * y * T::lit(2.0) * beta < p {
                return T::infinity();
            }
            let slack = T::lit(2.0) * beta - (p - T::one()) / (y * y);
            if slack <= T::zero() {
                return T::infinity();
            }
            let integral = y.powf(p - T::one()) * (-beta * y * y).exp() / slack;
            total += t.coeff.norm() * integral / x;
        }
        total * x.powf(-j)
    }
}

/// The restriction to `x > 0` as a real function (real part of the value).
impl<T: Real> HalfLineFn<T> for ParityFunction<T> {
    fn eval(&self, x: T) -> T {
        ParityFunction::eval(self, x).re
    }

    fn weighted_tail(&self, x: T, n: usize, j: T) -> T {
        self.weighted_tail_abs(x, n, j)
    }
}
