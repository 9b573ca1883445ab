use crate::error::{Error, Result};
use crate::scalar::{cplx, Real};

use super::gamma::ln_gamma;
use super::zeta::zeta;

/// Largest accepted imaginary part of `e^{iθ(t)} ζ(1/2 + it)`, relative to
/// `max(1, |ζ|)`.
pub const HARDY_RESIDUE_LIMIT: f64 = 1e-10;

/// Riemann–Siegel theta `θ(t) = arg Γ(1/4 + it/2) - (t/2) ln π`, continuous in `t`.
pub fn theta<T: Real>(t: T) -> T {
    let z = cplx(T::lit(0.25), t * T::lit(0.5));
    let lg = ln_gamma(z).expect("1/4 + it/2 is never a pole");
    lg.im - t * T::lit(0.5) * T::PI().ln()
}

/// Hardy Z-function together with the discarded imaginary residue.
pub fn hardy_z_checked<T: Real>(t: T) -> Result<(T, T)> {
    let rot = cplx(T::zero(), theta(t)).exp();
    let z = zeta(cplx(T::lit(0.5), t))?;
    let v = rot * z;
    let scale = z.norm().max(T::one());
    let limit = T::lit(HARDY_RESIDUE_LIMIT).max(T::epsilon() * T::lit(64.0));
    if v.im.abs() > limit * scale {
        return Err(Error::ImaginaryResidue {
            what: "hardy_z",
            residue: v.im.as_f64(),
            limit: (limit * scale).as_f64(),
        });
    }
    Ok((v.re, v.im))
}

/// `Z(t) = e^{iθ(t)} ζ(1/2 + it)`, real for real `t`.
pub fn hardy_z<T: Real>(t: T) -> Result<T> {
    Ok(hardy_z_checked(t)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_zero() {
        let z = hardy_z(0.0f64).unwrap();
        assert!((z + 1.460_354_508_809_586_8).abs() < 1e-12, "{z}");
        assert_eq!(theta(0.0f64), 0.0);
    }

    #[test]
    fn brackets_first_zero() {
        let a = hardy_z(14.0f64).unwrap();
        let b = hardy_z(14.2f64).unwrap();
        assert!(a.signum() != b.signum());
    }

    #[test]
    fn even_in_t() {
        for t in [0.7f64, 9.0, 21.3, 57.1, 118.0] {
            let d = hardy_z(t).unwrap() - hardy_z(-t).unwrap();
            assert!(d.abs() < 1e-10, "t = {t}");
        }
    }

    #[test]
    fn theta_reference_values() {
        // θ(t) from the asymptotic expansion, accurate at these heights
        for t in [50.0f64, 100.0] {
            let x = t / (2.0 * std::f64::consts::PI);
            let asym =
                t / 2.0 * x.ln() - t / 2.0 - std::f64::consts::PI / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t.powi(3));
            assert!((theta(t) - asym).abs() < 1e-9, "t = {t}");
        }
    }
}
