//! Dirichlet characters, enumerated through the cyclic decomposition of
//! the unit group.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// One cyclic factor of `(ℤ/dℤ)^×` living in the component mod `q`.
struct Cyclic {
    order: u64,
    /// discrete log mod `q`; `u64::MAX` on non-units
    log: Vec<u64>,
}

impl Cyclic {
    fn new(q: u64, generator: u64, order: u64) -> Self {
        let mut log = vec![u64::MAX; q as usize];
        let mut x = 1 % q;
        for e in 0..order {
            log[x as usize] = e;
            x = x * generator % q;
        }
        Self { order, log }
    }
}

/// A cyclic factor with the map from residues mod `d` into its modulus.
type Component = (Cyclic, Box<dyn Fn(u64) -> u64>);

/// Cyclic components of the unit group mod `d`; each maps a unit to an exponent.
fn components(d: u64) -> Vec<Component> {
    let mut out: Vec<Component> = Vec::new();
    for (p, k) in factorize(d) {
        let q = p.pow(k);
        if p == 2 {
            if k == 2 {
                out.push((Cyclic::new(4, 3, 2), Box::new(move |n| n % 4)));
            } else if k >= 3 {
                // n ≡ ±5^b mod 2^k
                out.push((Cyclic::new(4, 3, 2), Box::new(move |n| n % 4)));
                let order = q / 4;
                let sign_fix = move |n: u64| {
                    let r = n % q;
                    if r % 4 == 1 {
                        r
                    } else {
                        q - r
                    }
                };
                out.push((Cyclic::new(q, 5, order), Box::new(sign_fix)));
            }
            continue;
        }
        let phi = q / p * (p - 1);
        let pf: Vec<u64> = factorize(phi).into_iter().map(|(r, _)| r).collect();
        let g = (2..q)
            .find(|&g| gcd(g, q) == 1 && pf.iter().all(|&r| pow_mod(g, phi / r, q) != 1))
            .unwrap_or(1);
        out.push((Cyclic::new(q, g, phi), Box::new(move |n| n % q)));
    }
    out
}

/// A Dirichlet character mod `d` with its value table.
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletCharacter {
    modulus: u64,
    index: usize,
    values: Vec<Complex64>,
    parity: i8,
    primitive: bool,
    gauss_sum: Complex64,
}

/// All `φ(d)` characters mod `d`, index 0 being the principal character.
///
/// The index is a mixed-radix number over the cyclic components of
/// `(ℤ/dℤ)^×`, taken in increasing order of prime.
pub fn characters(d: u64) -> Vec<DirichletCharacter> {
    assert!(d >= 1, "modulus must be positive");
    let comps = components(d);
    let orders: Vec<u64> = comps.iter().map(|(c, _)| c.order).collect();
    let total: u64 = orders.iter().product();
    // exponent vector of every residue
    let logs: Vec<Option<Vec<u64>>> = (0..d)
        .map(|n| {
            if gcd(n, d) != 1 {
                return None;
            }
            Some(comps.iter().map(|(c, f)| c.log[f(n) as usize]).collect())
        })
        .collect();
    (0..total)
        .map(|index| {
            let mut digits = Vec::with_capacity(orders.len());
            let mut rest = index;
            for &o in orders.iter().rev() {
                digits.push(rest % o);
                rest /= o;
            }
            digits.reverse();
            let values: Vec<Complex64> = logs
                .iter()
                .map(|l| match l {
                    None => Complex64::new(0.0, 0.0),
                    Some(e) => {
                        let mut frac = 0.0;
                        for ((&j, &ei), &o) in digits.iter().zip(e).zip(&orders) {
                            frac += ((j * ei) % o) as f64 / o as f64;
                        }
                        let frac = frac.fract();
                        Complex64::from_polar(1.0, 2.0 * PI * frac)
                    }
                })
                .collect();
            DirichletCharacter::from_values(d, index as usize, values)
        })
        .collect()
}

/// The character of the given index mod `d`.
pub fn character(d: u64, index: usize) -> Result<DirichletCharacter> {
    if d < 2 {
        return Err(Error::InvalidSpec(format!("modulus {d} must be at least 2")));
    }
    characters(d)
        .into_iter()
        .nth(index)
        .ok_or_else(|| Error::InvalidSpec(format!("modulus {d} has fewer than {} characters", index + 1)))
}

/// Primitive characters mod `d` other than the principal one.
pub fn primitive_characters(d: u64) -> Vec<DirichletCharacter> {
    characters(d)
        .into_iter()
        .filter(|c| c.is_primitive() && !c.is_principal())
        .collect()
}

impl DirichletCharacter {
    fn from_values(d: u64, index: usize, values: Vec<Complex64>) -> Self {
        let parity = if d <= 2 || values[(d - 1) as usize].re > 0.0 {
            1
        } else {
            -1
        };
        let primitive = factorize(d).iter().all(|&(p, _)| {
            let m = d / p;
            (1..d).any(|a| a % m == 1 % m && gcd(a, d) == 1 && (values[a as usize] - 1.0).norm() > 1e-9)
        });
        let gauss_sum = (1..d)
            .map(|a| values[a as usize] * Complex64::from_polar(1.0, 2.0 * PI * a as f64 / d as f64))
            .sum();
        Self {
            modulus: d,
            index,
            values,
            parity,
            primitive,
            gauss_sum,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// `χ(n)`, zero when `gcd(n, d) > 1`.
    pub fn value(&self, n: u64) -> Complex64 {
        self.values[(n % self.modulus) as usize]
    }

    /// `χ(-1)`.
    pub fn parity(&self) -> i8 {
        self.parity
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn is_principal(&self) -> bool {
        self.values.iter().all(|v| v.norm() == 0.0 || (v - 1.0).norm() < 1e-12)
    }

    pub fn gauss_sum(&self) -> Complex64 {
        self.gauss_sum
    }

    /// Root number in `ℒ_χ f = κ √d λ_d^{-1} J ℒ_χ̄ 𝓕f`: `κ = χ(-1) g(χ) / √d`.
    pub fn kappa(&self) -> Complex64 {
        self.gauss_sum * (self.parity as f64) / (self.modulus as f64).sqrt()
    }

    /// The complex-conjugate character.
    pub fn conjugate(&self) -> Self {
        let index = characters(self.modulus)
            .iter()
            .position(|c| {
                c.values
                    .iter()
                    .zip(&self.values)
                    .all(|(a, b)| (a - b.conj()).norm() < 1e-12)
            })
            .unwrap_or(self.index);
        let values = self.values.iter().map(|v| v.conj()).collect();
        Self::from_values(self.modulus, index, values)
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_primitive_counts() {
        // number of primitive characters mod d (OEIS A007431)
        let expected = [
            (3, 1),
            (4, 1),
            (5, 3),
            (7, 5),
            (8, 2),
            (9, 4),
            (12, 1),
            (15, 3),
            (16, 4),
            (6, 0),
        ];
        for (d, prim) in expected {
            let all = characters(d);
            let phi = (1..d).filter(|&a| gcd(a, d) == 1).count();
            assert_eq!(all.len(), phi, "d = {d}");
            assert_eq!(all.iter().filter(|c| c.is_primitive()).count(), prim, "d = {d}");
        }
    }

    #[test]
    fn multiplicative_and_unit_modulus_gauss_sum() {
        for d in [3u64, 4, 5, 7, 8, 9, 15, 16, 20] {
            for chi in characters(d) {
                for a in 0..d {
                    for b in 0..d {
                        let lhs = chi.value(a * b);
                        let rhs = chi.value(a) * chi.value(b);
                        assert!((lhs - rhs).norm() < 1e-12);
                    }
                }
                if chi.is_primitive() {
                    assert!((chi.gauss_sum().norm() - (d as f64).sqrt()).abs() < 1e-12);
                    assert!((chi.kappa().norm() - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn mod_four_is_odd_and_real() {
        let chi = &primitive_characters(4)[0];
        assert_eq!(chi.parity(), -1);
        assert!((chi.value(3).re + 1.0).abs() < 1e-15);
        assert!((chi.conjugate().value(3) - chi.value(3)).norm() < 1e-15);
    }

    #[test]
    fn characters_are_distinct() {
        let all = characters(7);
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert!(a.values().iter().zip(b.values()).any(|(x, y)| (x - y).norm() > 1e-6));
            }
        }
    }
}
