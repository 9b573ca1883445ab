use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::QuadratureSpec;
use crate::scalar::Real;

/// Smooth step `φ(t) = S(ln t / w)`: 0 below `e^{-w}`, 1 above `e^w`, with
/// `φ(t) + φ(1/t) = 1`.
///
/// `S(v) = g(1 + v) / (g(1 + v) + g(1 - v))` with `g(z) = e^{-1/z}` for
/// `z > 0` and 0 otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AuxiliaryPhi<T: Real = f64> {
    width: T,
}

fn g<T: Real>(z: T) -> T {
    if z > T::zero() {
        (-z.recip()).exp()
    } else {
        T::zero()
    }
}

/// The smoothstep `S` on `[-1, 1]`.
pub fn smoothstep<T: Real>(v: T) -> T {
    if v <= -T::one() {
        return T::zero();
    }
    if v >= T::one() {
        return T::one();
    }
    let a = g(T::one() + v);
    let b = g(T::one() - v);
    a / (a + b)
}

pub fn build_phi<T: Real>(width: T) -> Result<AuxiliaryPhi<T>> {
    if !(width > T::zero()) || !width.is_finite() {
        return Err(Error::InvalidSpec(format!("phi width must be positive, got {width}")));
    }
    Ok(AuxiliaryPhi { width })
}

impl<T: Real> AuxiliaryPhi<T> {
    pub fn width(&self) -> T {
        self.width
    }

    /// `φ(e^u)`.
    pub fn eval_log(&self, u: T) -> T {
        smoothstep(u / self.width)
    }

    pub fn eval(&self, t: T) -> T {
        self.eval_log(t.ln())
    }
}

/// `∫₀^∞ (φ(z) - φ(xz)) d×z` against `ln(1/x)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhiLogCheck<T: Real = f64> {
    pub integral: T,
    pub expected: T,
    pub residual: T,
    pub est_error: T,
}

/// Trapezoid rule on the window of `q`, which must cover the transition
/// region `[-w - |ln x|, w + |ln x|]`.
pub fn phi_log_identity<T: Real>(phi: &AuxiliaryPhi<T>, x: T, q: &QuadratureSpec<T>) -> Result<PhiLogCheck<T>> {
    q.validate()?;
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::Domain(format!("x must be positive, got {x}")));
    }
    let shift = x.ln();
    let reach = phi.width + shift.abs();
    if q.u_min > -reach || q.u_max < reach {
        return Err(Error::WindowTooSmall {
            what: "phi transition region",
            tail: reach.as_f64(),
            tolerance: q.u_max.min(-q.u_min).as_f64(),
        });
    }
    let integrand = |u: T| phi.eval_log(u) - phi.eval_log(u + shift);
    let trap = |spec: &QuadratureSpec<T>| -> T {
        let n = spec.n_points;
        let h = spec.step();
        let mut s = T::zero();
        for (i, u) in spec.nodes().enumerate() {
            let w = if i == 0 || i + 1 == n { T::lit(0.5) } else { T::one() };
            s += w * integrand(u);
        }
        s * h
    };
    let integral = trap(q);
    let coarse = trap(&q.coarsened());
    let est = (integral - coarse).abs() + T::epsilon() * T::lit(4.0) * reach;
    if !(est <= q.tolerance) {
        return Err(Error::ToleranceNotMet {
            estimate: est.as_f64(),
            tolerance: q.tolerance.as_f64(),
        });
    }
    let expected = -shift;
    Ok(PhiLogCheck {
        integral,
        expected,
        residual: (integral - expected).abs(),
        est_error: est,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateaus_and_midpoint() {
        for w in [0.5f64, 1.0, 2.0] {
            let phi = build_phi(w).unwrap();
            assert_eq!(phi.eval(1.0), 0.5);
            assert_eq!(phi.eval((2.0 * w).exp()), 1.0);
            assert_eq!(phi.eval((-2.0 * w).exp()), 0.0);
        }
        assert!(build_phi(0.0f64).is_err());
    }

    #[test]
    fn antisymmetric() {
        let phi = build_phi(1.0f64).unwrap();
        let worst = (0..=4000)
            .map(|i| {
                let t = (-3.0 + 6.0 * i as f64 / 4000.0).exp();
                (phi.eval(t) + phi.eval(1.0 / t) - 1.0).abs()
            })
            .fold(0.0, f64::max);
        assert!(worst < 1e-15, "{worst}");
    }

    #[test]
    fn log_identity() {
        let q = QuadratureSpec::symmetric(6.0, 4001, 1e-10).unwrap();
        for w in [0.5, 1.0, 2.0] {
            let phi = build_phi(w).unwrap();
            assert_eq!(phi_log_identity(&phi, 1.0, &q).unwrap().integral, 0.0);
            for x in [0.5, std::f64::consts::E] {
                let r = phi_log_identity(&phi, x, &q).unwrap();
                assert!(r.residual < 1e-10, "w = {w}, x = {x}: {r:?}");
            }
        }
        let narrow = QuadratureSpec::symmetric(1.0, 401, 1e-10).unwrap();
        let phi = build_phi(1.0).unwrap();
        assert!(matches!(
            phi_log_identity(&phi, 2.0, &narrow),
            Err(Error::WindowTooSmall { .. })
        ));
    }
}
