//! Spectral side `f̂(0) + f̂(1) - Σ_ρ f̂(ρ)` over a table of zero ordinates.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function_spaces::{LineEnvelope, TestFunction};
use crate::quadrature::QuadratureSpec;
use crate::scalar::{cplx, creal, pairwise_sum, Real, C};
use crate::transforms::mellin_auto;
use crate::zeros::ZeroTable;

/// Zero tails larger than this are rejected as uncertifiable.
pub const MAX_ZERO_TAIL: f64 = 1e-3;

/// No zeta zero has ordinate below this.
const FIRST_ZERO_FLOOR: f64 = 14.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralSide<T: Real = f64> {
    pub value: T,
    /// `f̂(0) + f̂(1)`
    pub pole_contribution: T,
    /// `Σ_{γ ≤ T} [f̂(½ + iγ) + f̂(½ - iγ)]`
    pub zero_contribution: T,
    pub zero_count: usize,
    pub height: T,
    pub tail_bound: T,
    /// Effect of the ordinate precision of the zero table.
    pub precision_bound: T,
    /// Quadrature error of the Mellin values.
    pub value_error: T,
    pub pole_error: T,
    pub imaginary_residue: T,
}

impl<T: Real> SpectralSide<T> {
    pub fn error(&self) -> T {
        self.tail_bound + self.precision_bound + self.value_error + self.pole_error
    }
}

/// `(value, error)` of `f̂(s)`.
pub(crate) fn mellin_value<T: Real>(f: &TestFunction<T>, s: C<T>, tolerance: T) -> Result<(C<T>, T)> {
    if f.has_closed_form_mellin() {
        let v = f.mellin_closed_form(s)?;
        return Ok((v, v.norm() * T::epsilon() * T::lit(16.0)));
    }
    let m = mellin_auto(f, s, tolerance)?;
    Ok((m.value, m.est_error))
}

/// `|N(t) - (t/2π) ln(t/2πe) - 7/8| ≤ R(t)` for `t ≥ e` (Trudgian).
fn count_remainder<T: Real>(t: T) -> T {
    T::lit(0.112) * t.ln() + T::lit(0.278) * t.ln().ln() + T::lit(2.51)
}

/// Bound on `Σ_{γ > T} g(γ)` for `g` decreasing, given the envelope.
///
/// Writing `N = M + S` with `M' = ln(t/2π)/2π` and `|S| ≤ R`, integration by
/// parts gives `Σ ≤ ∫_T^∞ g (M' + R') dt + 2 R(T) g(T)`.
fn envelope_tail<T: Real>(env: &LineEnvelope<T>, height: T) -> T {
    let t = height.max(T::lit(FIRST_ZERO_FLOOR));
    let two_pi = T::TAU();
    let lnp = (t / two_pi).ln().max(T::zero());
    let r_slope = T::lit(0.112) + T::lit(0.278) / t.ln();
    let boundary = T::lit(2.0) * count_remainder(t);
    match env {
        LineEnvelope::Gaussian { scale, width } => {
            // g(t+v) ≤ g(t) e^{-a v}, ln((t+v)/2π) ≤ ln(t/2π) + v/t
            let a = *width * *width * t;
            let g = env.at(t);
            let _ = scale;
            g * ((lnp / two_pi + r_slope / t) / a + T::one() / (two_pi * a * a * t) + boundary)
        }
        LineEnvelope::Powers { constants } => constants
            .iter()
            .enumerate()
            .skip(2)
            .map(|(m, &c)| {
                let m1 = T::from_usize_lossy(m - 1);
                let tm = t.powi(-(m as i32));
                let main = c * t * tm / two_pi * (lnp / m1 + T::one() / (m1 * m1));
                let slope = c * r_slope * tm / T::from_usize_lossy(m);
                main + slope + boundary * c * tm
            })
            .fold(T::infinity(), T::min),
    }
}

/// Bound on `Σ_{γ > T} |f̂(½ + iγ) + f̂(½ - iγ)|`.
pub fn zero_tail_bound<T: Real>(f: &TestFunction<T>, height: T) -> T {
    let envs = f.line_envelope(T::lit(0.5));
    T::lit(2.0) * envs.iter().map(|e| envelope_tail(e, height)).sum::<T>()
}

/// `∫ |u| |f(e^u)| e^{u/2} du`, the Lipschitz constant of `γ ↦ f̂(½ + iγ)`.
pub fn ordinate_lipschitz<T: Real>(f: &TestFunction<T>) -> T {
    let (a, b) = f.log_support(T::lit(1e-300));
    let n = 4096;
    let h = (b - a) / T::from_usize_lossy(n);
    let half = T::lit(0.5);
    let sum: T = (0..=n)
        .map(|i| {
            let u = a + h * T::from_usize_lossy(i);
            u.abs() * f.eval_log(u).abs() * (half * u).exp()
        })
        .sum();
    sum * h * T::lit(1.05)
}

/// `f̂(0) + f̂(1) - Σ_{γ ∈ table} [f̂(½ + iγ) + f̂(½ - iγ)]`.
///
/// Fails with `ImaginaryResidue` when the summed imaginary parts exceed
/// `1e-10` (for a real `f` they cancel), and with `TailBoundViolation` when
/// the zeros above the table height cannot be bounded by [`MAX_ZERO_TAIL`].
pub fn spectral_side<T: Real>(
    f: &TestFunction<T>,
    zt: &ZeroTable<T>,
    q: &QuadratureSpec<T>,
) -> Result<SpectralSide<T>> {
    q.validate()?;
    let tol = q.tolerance;
    let height = zt.height_bound();
    let tail = zero_tail_bound(f, height);
    if !(tail <= T::lit(MAX_ZERO_TAIL)) {
        return Err(Error::TailBoundViolation {
            what: "zeros above the table height",
            bound: tail.as_f64(),
            tolerance: MAX_ZERO_TAIL,
        });
    }
    let (f0, e0) = mellin_value(f, creal(T::zero()), tol)?;
    let (f1, e1) = mellin_value(f, creal(T::one()), tol)?;
    let half = T::lit(0.5);
    let terms = zt
        .ordinates()
        .par_iter()
        .map(|&g| {
            let (a, ea) = mellin_value(f, cplx(half, g), tol)?;
            let (b, eb) = mellin_value(f, cplx(half, -g), tol)?;
            Ok((a + b, ea + eb))
        })
        .collect::<Result<Vec<_>>>()?;
    let re: Vec<T> = terms.iter().map(|t| t.0.re).collect();
    let im: Vec<T> = terms.iter().map(|t| t.0.im).collect();
    let residue = pairwise_sum(&im).abs() + (f0 + f1).im.abs();
    let limit = T::lit(1e-10);
    if !(residue <= limit) {
        return Err(Error::ImaginaryResidue {
            what: "spectral side",
            residue: residue.as_f64(),
            limit: 1e-10,
        });
    }
    let zero_contribution = pairwise_sum(&re);
    let pole = (f0 + f1).re;
    let n = zt.len();
    let precision_bound = if n == 0 {
        T::zero()
    } else {
        T::lit(2.0) * zt.precision() * ordinate_lipschitz(f) * T::from_usize_lossy(n)
    };
    let mass: T = re.iter().map(|v| v.abs()).sum();
    Ok(SpectralSide {
        value: pole - zero_contribution,
        pole_contribution: pole,
        zero_contribution,
        zero_count: n,
        height,
        tail_bound: tail,
        precision_bound,
        value_error: terms.iter().map(|t| t.1).sum::<T>() + mass * T::epsilon() * T::lit(4.0),
        pole_error: e0 + e1,
        imaginary_residue: residue,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::ZeroSource;

    fn q() -> QuadratureSpec<f64> {
        QuadratureSpec::symmetric(40.0, 4001, 1e-10).unwrap()
    }

    #[test]
    fn empty_table_gives_the_poles() {
        let f = TestFunction::log_gaussian(1.0, 0.0, 1.0).unwrap();
        let zt = ZeroTable::new(vec![], 100.0, 1e-12, ZeroSource::Computed).unwrap();
        let s = spectral_side(&f, &zt, &q()).unwrap();
        let expect = (2.0 * std::f64::consts::PI).sqrt() * (1.0 + 0.5f64.exp());
        assert_eq!(s.zero_count, 0);
        assert!((s.value - expect).abs() < 1e-13);
        assert_eq!(s.value, s.pole_contribution);
    }

    #[test]
    fn tail_bound_dominates_known_zeros() {
        // zeros between 14 and 50 against the tail from 14
        let zeros = [
            14.134725141734693,
            21.022039638771555,
            25.010857580145688,
            30.424876125859513,
            32.935061587739189,
            37.586178158825671,
            40.918719012147495,
            43.327073280914999,
            48.005150881167159,
            49.773832477672302,
        ];
        let f = TestFunction::log_gaussian(1.0, 0.0, 0.1).unwrap();
        let exact: f64 = zeros
            .iter()
            .map(|&g| 2.0 * f.mellin_closed_form(cplx(0.5, g)).unwrap().norm())
            .sum();
        let bound = zero_tail_bound(&f, 14.0);
        assert!(bound >= exact, "{bound} < {exact}");
        let b = TestFunction::log_bump(1.0, 0.5, 2.0).unwrap();
        let exact: f64 = zeros
            .iter()
            .map(|&g| 2.0 * mellin_auto(&b, cplx(0.5, g), 1e-12).unwrap().value.norm())
            .sum();
        assert!(zero_tail_bound(&b, 14.0) >= exact);
    }

    #[test]
    fn wide_functions_need_more_zeros() {
        let f = TestFunction::log_gaussian(1.0, 0.0, 0.01).unwrap();
        let zt = ZeroTable::new(vec![14.134725141734693], 15.0, 1e-12, ZeroSource::Computed).unwrap();
        assert!(matches!(
            spectral_side(&f, &zt, &q()),
            Err(Error::TailBoundViolation { .. })
        ));
    }

    #[test]
    fn lipschitz_constant_of_log_gaussian() {
        // ∫ |u| e^{-u²/2} e^{u/2} du
        let f = TestFunction::log_gaussian(1.0, 0.0, 1.0).unwrap();
        let l = ordinate_lipschitz(&f);
        let g = |u: f64| u.abs() * (-u * u / 2.0 + u / 2.0).exp();
        let v =
            crate::quadrature::tanh_sinh(-40.0, 0.0, 1e-14, g).0 + crate::quadrature::tanh_sinh(0.0, 40.0, 1e-14, g).0;
        assert!(l >= v && l < 1.1 * v, "{l} vs {v}");
    }
}
