use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{creal, Real, C};

use super::gamma::gamma;
use super::zeta::zeta;

/// `ξ(s) = π^{-s/2} Γ(s/2) ζ(s)` together with its two factors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CompletedZetaValue<T: Real> {
    pub s: C<T>,
    pub xi: C<T>,
    pub zeta: C<T>,
    pub gamma_factor: C<T>,
}

fn gamma_factor<T: Real>(s: C<T>) -> Result<C<T>> {
    let half = s * T::lit(0.5);
    Ok((-half * T::PI().ln()).exp() * gamma(half)?)
}

fn is_trivial_zero<T: Real>(s: C<T>) -> bool {
    s.im == T::zero() && s.re < T::zero() && (s.re * T::lit(0.5)) == (s.re * T::lit(0.5)).round()
}

/// Completed zeta function.
///
/// At the trivial zeros `s = -2k` the gamma factor has a pole; there `ξ` is
/// taken from `ξ(1 - s)` and `gamma_factor` is reported as infinite.
pub fn xi<T: Real>(s: C<T>) -> Result<CompletedZetaValue<T>> {
    let tiny = T::lit(1e-12);
    if s.norm() < tiny {
        return Err(Error::PoleAtZeroOrOne(0.0));
    }
    if (s - T::one()).norm() < tiny {
        return Err(Error::PoleAtZeroOrOne(1.0));
    }
    if is_trivial_zero(s) {
        let mirrored = xi(creal(T::one()) - s)?;
        return Ok(CompletedZetaValue {
            s,
            xi: mirrored.xi,
            zeta: creal(T::zero()),
            gamma_factor: creal(T::infinity()),
        });
    }
    let g = gamma_factor(s)?;
    let z = zeta(s)?;
    Ok(CompletedZetaValue {
        s,
        xi: g * z,
        zeta: z,
        gamma_factor: g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    #[test]
    fn functional_equation_at_two_plus_three_i() {
        let s = cplx(2.0f64, 3.0);
        let a = xi(s).unwrap().xi;
        let b = xi(creal(1.0) - s).unwrap().xi;
        assert!((a - b).norm() / a.norm() < 1e-10);
    }

    #[test]
    fn real_on_critical_line_and_axis() {
        for t in [0.0, 3.3, 14.0, 40.0, 99.5] {
            let v = xi(cplx(0.5f64, t)).unwrap().xi;
            assert!(v.im.abs() < 1e-12 * v.re.abs().max(1e-30) + 1e-25, "t = {t}: {v}");
        }
        for x in [-3.5f64, 0.3, 2.0, 7.0] {
            let v = xi(creal(x)).unwrap().xi;
            assert!(v.im.abs() < 1e-12 * v.norm());
        }
    }

    #[test]
    fn poles_and_trivial_zeros() {
        assert!(matches!(xi(creal(0.0f64)), Err(Error::PoleAtZeroOrOne(_))));
        assert!(matches!(xi(creal(1.0f64)), Err(Error::PoleAtZeroOrOne(_))));
        let v = xi(creal(-2.0f64)).unwrap();
        let w = xi(creal(3.0f64)).unwrap();
        assert!((v.xi - w.xi).norm() < 1e-14);
    }

    #[test]
    fn first_zero() {
        let v = xi(cplx(0.5f64, 14.134_725_141_734_693)).unwrap();
        assert!(v.xi.norm() < 1e-6);
    }
}
