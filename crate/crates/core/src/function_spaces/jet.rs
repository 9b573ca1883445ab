//! Truncated Taylor series ("jets") for exact derivatives of family members.

use std::ops::{Add, Mul};

use crate::scalar::Real;

/// Taylor coefficients `c_k = h^{(k)}(u₀)/k!` for `k = 0..=order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<T: Real> {
    pub coeffs: Vec<T>,
}

impl<T: Real> Jet<T> {
    pub fn constant(c: T, order: usize) -> Self {
        let mut coeffs = vec![T::zero(); order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// The identity `u ↦ u` expanded at `u0`.
    pub fn variable(u0: T, order: usize) -> Self {
        let mut j = Self::constant(u0, order);
        if order >= 1 {
            j.coeffs[1] = T::one();
        }
        j
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn value(&self) -> T {
        self.coeffs[0]
    }

    /// `h^{(k)}(u₀)`.
    pub fn derivative(&self, k: usize) -> T {
        let fact: T = (1..=k).map(T::from_usize_lossy).fold(T::one(), |a, b| a * b);
        self.coeffs[k] * fact
    }

    pub fn scale(mut self, c: T) -> Self {
        self.coeffs.iter_mut().for_each(|x| *x *= c);
        self
    }

    pub fn exp(&self) -> Self {
        let n = self.coeffs.len();
        let a = &self.coeffs;
        let mut b = vec![T::zero(); n];
        b[0] = a[0].exp();
        for k in 1..n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc += T::from_usize_lossy(j) * a[j] * b[k - j];
            }
            b[k] = acc / T::from_usize_lossy(k);
        }
        Self { coeffs: b }
    }

    pub fn recip(&self) -> Self {
        let n = self.coeffs.len();
        let a = &self.coeffs;
        let mut b = vec![T::zero(); n];
        b[0] = a[0].recip();
        for k in 1..n {
            let mut acc = T::zero();
            for j in 1..=k {
                acc += a[j] * b[k - j];
            }
            b[k] = -acc * b[0];
        }
        Self { coeffs: b }
    }
}

impl<T: Real> Add for Jet<T> {
    type Output = Jet<T>;
    fn add(self, rhs: Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(&a, &b)| a + b).collect();
        Jet { coeffs }
    }
}

impl<T: Real> Mul for &Jet<T> {
    type Output = Jet<T>;
    fn mul(self, rhs: Self) -> Jet<T> {
        let n = self.coeffs.len();
        let mut c = vec![T::zero(); n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().take(n - i).enumerate() {
                c[i + j] += a * b;
            }
        }
        Jet { coeffs: c }
    }
}
