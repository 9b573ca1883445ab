use crate::error::{Error, Result};
use crate::scalar::{creal, Bounded, Real, C};
use crate::zeta_operators::DirichletCharacter;

use super::gamma::gamma;
use super::zeta::hurwitz_zeta_regular;

fn require_primitive(chi: &DirichletCharacter) -> Result<()> {
    if !chi.is_primitive() || chi.is_principal() {
        return Err(Error::NonPrimitiveCharacter {
            modulus: chi.modulus(),
            index: chi.index(),
        });
    }
    Ok(())
}

/// `L(s, χ)` with an error bound, via `d^{-s} Σ_a χ(a) ζ(s, a/d)`.
///
/// The pole parts of the Hurwitz terms cancel because `Σ χ(a) = 0`, so the
/// result is finite at `s = 1`.
pub fn l_chi_with_error<T: Real>(chi: &DirichletCharacter, s: C<T>) -> Result<Bounded<C<T>, T>> {
    require_primitive(chi)?;
    let d = chi.modulus();
    let df = T::lit(d as f64);
    let mut acc = creal(T::zero());
    let mut err = T::zero();
    for a in 1..d {
        let c = chi.value(a);
        if c.norm() == 0.0 {
            continue;
        }
        let c = C::new(T::lit(c.re), T::lit(c.im));
        let h = hurwitz_zeta_regular(s, T::lit(a as f64) / df);
        acc += c * h.value;
        err += h.bound;
    }
    let scale = (-s * df.ln()).exp();
    Ok(Bounded::new(scale * acc, scale.norm() * err))
}

/// Dirichlet L-function of a primitive non-principal character.
pub fn l_chi<T: Real>(chi: &DirichletCharacter, s: C<T>) -> Result<C<T>> {
    Ok(l_chi_with_error(chi, s)?.value)
}

/// `Λ(s, χ) = (d/π)^{(s+a)/2} Γ((s+a)/2) L(s, χ)` with `a = 0` for even and
/// `a = 1` for odd characters.
pub fn completed_l_chi<T: Real>(chi: &DirichletCharacter, s: C<T>) -> Result<C<T>> {
    let a = if chi.parity() < 0 { T::one() } else { T::zero() };
    let half = (s + a) * T::lit(0.5);
    let ratio = T::lit(chi.modulus() as f64) / T::PI();
    Ok((half * ratio.ln()).exp() * gamma(half)? * l_chi(chi, s)?)
}
