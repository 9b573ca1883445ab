use crate::error::{Error, Result};
use crate::scalar::{creal, Real, C};

/// Lanczos coefficients for g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_nonpositive_integer<T: Real>(z: C<T>) -> bool {
    z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round()
}

/// Principal branch of `ln Γ(z)`, continuous on `ℂ \ (-∞, 0]`.
///
/// Uses the Lanczos series for `Re z ≥ 1/2` and the upward recurrence
/// `ln Γ(z) = ln Γ(z + n) - Σ ln(z + k)` otherwise, which keeps the branch
/// continuous (the reflection formula would not).
pub fn ln_gamma<T: Real>(z: C<T>) -> Result<C<T>> {
    if is_nonpositive_integer(z) {
        return Err(Error::PoleAtNonPositiveInteger(z.re.as_f64()));
    }
    let half = T::lit(0.5);
    if z.re < half {
        let shift = (half - z.re).ceil().to_usize().unwrap_or(0).max(1);
        let mut acc = creal(T::zero());
        for k in 0..shift {
            acc += (z + T::from_usize_lossy(k)).ln();
        }
        return Ok(lanczos_ln_gamma(z + T::from_usize_lossy(shift)) - acc);
    }
    Ok(lanczos_ln_gamma(z))
}

fn lanczos_ln_gamma<T: Real>(z: C<T>) -> C<T> {
    let zm1 = z - T::one();
    let mut series = creal(T::lit(LANCZOS[0]));
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        series += creal(T::lit(c)) / (zm1 + T::from_usize_lossy(i));
    }
    let t = zm1 + T::lit(LANCZOS_G + 0.5);
    let half_ln_two_pi = T::lit(0.918_938_533_204_672_7);
    creal(half_ln_two_pi) + (zm1 + T::lit(0.5)) * t.ln() - t + series.ln()
}

/// `Γ(z)` for complex `z`.
pub fn gamma<T: Real>(z: C<T>) -> Result<C<T>> {
    Ok(ln_gamma(z)?.exp())
}

/// `Γ(x)` for real `x`, keeping the sign for negative arguments.
pub fn gamma_real<T: Real>(x: T) -> Result<T> {
    Ok(gamma(creal(x))?.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    #[test]
    fn half_integer_and_integer_values() {
        let g = gamma(creal(0.5f64)).unwrap();
        assert!((g.re - std::f64::consts::PI.sqrt()).abs() < 1e-14);
        assert!(g.im.abs() < 1e-15);
        assert!((gamma(creal(1.0f64)).unwrap().re - 1.0).abs() < 1e-14);
        assert!((gamma(creal(6.0f64)).unwrap().re - 120.0).abs() < 1e-11);
    }

    #[test]
    fn poles_are_reported() {
        assert!(matches!(gamma(creal(0.0f64)), Err(Error::PoleAtNonPositiveInteger(_))));
        assert!(matches!(gamma(creal(-3.0f64)), Err(Error::PoleAtNonPositiveInteger(_))));
        assert!(gamma(creal(-2.5f64)).is_ok());
    }

    #[test]
    fn reflection_formula_oracle() {
        // Γ(s)Γ(1-s) sin(πs)/π = 1
        let s = cplx(0.3f64, 0.7);
        let lhs = gamma(s).unwrap() * gamma(creal(1.0) - s).unwrap() * (s * std::f64::consts::PI).sin()
            / std::f64::consts::PI;
        assert!((lhs - creal(1.0)).norm() < 1e-12, "{lhs}");
    }

    #[test]
    fn duplication_formula_oracle() {
        // Γ(z)Γ(z+1/2) = 2^{1-2z} √π Γ(2z)
        for &(re, im) in &[(0.25, 0.0), (1.3, 4.0), (0.1, -11.0), (3.0, 25.0)] {
            let z = cplx(re, im);
            let lhs = ln_gamma(z).unwrap() + ln_gamma(z + 0.5).unwrap();
            let rhs = (creal(1.0) - z * 2.0) * 2f64.ln() + 0.5 * std::f64::consts::PI.ln() + ln_gamma(z * 2.0).unwrap();
            // compare modulo 2πi
            let d = (lhs - rhs).exp();
            assert!((d - creal(1.0)).norm() < 1e-12, "z = {z}: {d}");
        }
    }

    #[test]
    fn branch_is_continuous_along_quarter_line() {
        // Im ln Γ(1/4 + it/2) should not jump by 2π along t.
        let mut prev = ln_gamma(cplx(0.25f64, 0.0)).unwrap().im;
        let mut t = 0.0;
        while t < 240.0 {
            t += 0.05;
            let cur = ln_gamma(cplx(0.25, t / 2.0)).unwrap().im;
            assert!((cur - prev).abs() < 0.5, "jump at t = {t}");
            prev = cur;
        }
    }

    #[test]
    fn single_precision_smoke() {
        let g = gamma(creal(0.5f32)).unwrap();
        assert!((g.re - std::f32::consts::PI.sqrt()).abs() < 1e-5);
    }
}
