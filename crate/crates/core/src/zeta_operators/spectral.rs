//! `(Zf)^(s) = ζ(s) f̂(s)` for `Re s > 1`, with `Zf` summed pointwise.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function_spaces::TestFunction;
use crate::quadrature::{GaussLegendre, QuadratureSpec};
use crate::scalar::{creal, Real, C};
use crate::special_functions::zeta_with_error;
use crate::transforms::{cosine_transform_modulus, mellin_auto};

use super::ops::{apply_z, TruncationSpec};

const PANEL_NODES: usize = 16;

/// Lines `Re s = -m` used to bound `Zf(x) - f̂(1)/x` near zero.
const CORRECTION_LINES: [f64; 6] = [-1.0, -2.0, -4.0, -6.0, -8.0, -12.0];

/// Values of `Zf` on Gauss–Legendre panels in `u = ln x`, reusable for
/// every `s` with `1 < Re s ≤ sigma_max`.
///
/// Below `x₀ = e^{u_min}` only the leading term `f̂(1)/x` is integrated. By
/// Poisson summation `Zf(x) - f̂(1)/x = x⁻¹ Σ_{k ≥ 1} C_f(k/x)` with
/// `C_f(y) = 2∫₀^∞ f(v) cos(2πyv) dv`, which is bounded through
/// `|C_f(y)| ≤ M_c (2πy)^{c-1}`.
#[derive(Clone, Debug)]
pub struct ZMellinGrid<T: Real> {
    f: TestFunction<T>,
    tolerance: T,
    sigma_max: T,
    u_min: T,
    u_max: T,
    /// `(u, weight, Zf(e^u), error bound)`
    nodes: Vec<(T, T, T, T)>,
    f_hat_one: T,
    /// `(c, M_c)`, empty when no bound is available
    moduli: Vec<(T, T)>,
}

fn moduli_for<T: Real>(f: &TestFunction<T>) -> Vec<(T, T)> {
    CORRECTION_LINES
        .iter()
        .filter_map(|&c| {
            let c = T::lit(c);
            cosine_transform_modulus(f, c).ok().map(|m| (c, m))
        })
        .collect()
}

/// `∫₀^{x₀} |x^s| |Zf(x) - f̂(1)/x| d×x ≤ M_c (2π)^{c-1} ζ(1-c) x₀^{σ-c}/(σ-c)`.
fn correction_bound<T: Real>(moduli: &[(T, T)], u_min: T, sigma: T) -> T {
    moduli
        .iter()
        .map(|&(c, m)| {
            let zeta = zeta_with_error(creal(T::one() - c))
                .map(|z| z.value.re)
                .unwrap_or(T::infinity());
            m * T::TAU().powf(c - T::one()) * zeta * ((sigma - c) * u_min).exp() / (sigma - c)
        })
        .fold(T::infinity(), T::min)
}

impl<T: Real> ZMellinGrid<T> {
    pub fn new(f: &TestFunction<T>, tr: &TruncationSpec, q: &QuadratureSpec<T>, sigma_max: T) -> Result<Self> {
        q.validate()?;
        if !(sigma_max > T::one()) {
            return Err(Error::Domain(format!(
                "(Zf)^(s) needs Re s > 1, got sigma_max = {sigma_max}"
            )));
        }
        let panels = q.n_points.div_ceil(PANEL_NODES).max(1);
        let gl = GaussLegendre::<T>::new(PANEL_NODES);
        let width = (q.u_max - q.u_min) / T::from_usize_lossy(panels);
        let mut points = Vec::with_capacity(panels * PANEL_NODES);
        for k in 0..panels {
            let a = q.u_min + width * T::from_usize_lossy(k);
            points.extend(gl.mapped(a, a + width));
        }
        let nodes = points
            .into_par_iter()
            .map(|(u, w)| {
                let x = u.exp();
                // the weight |x^s| is at most x for x < 1 and x^{sigma_max} above
                let weight = if x < T::one() { x } else { x.powf(sigma_max) };
                let local = tr.with_tail_tol(tr.tail_tol / weight.as_f64());
                apply_z(f, x, &local).map(|b| (u, w, b.value, b.bound))
            })
            .collect::<Result<Vec<_>>>()?;
        let f_hat_one = if f.has_closed_form_mellin() {
            f.mellin_closed_form(creal(T::one()))?.re
        } else {
            mellin_auto(f, creal(T::one()), q.tolerance * T::lit(1e-2))?.value.re
        };
        Ok(Self {
            f: f.clone(),
            tolerance: q.tolerance,
            sigma_max,
            u_min: q.u_min,
            u_max: q.u_max,
            nodes,
            f_hat_one,
            moduli: moduli_for(f),
        })
    }

    /// `∫ Zf(x) x^s d×x` with an error bound. Without a closed-form
    /// `f̂` the correction below `x₀` is not included in the bound.
    pub fn mellin(&self, s: C<T>) -> Result<(C<T>, T)> {
        if !(s.re > T::one()) {
            return Err(Error::Domain(format!("(Zf)^(s) needs Re s > 1, got {s}")));
        }
        if s.re > self.sigma_max {
            return Err(Error::Domain(format!(
                "grid was built for Re s ≤ {}, got {s}",
                self.sigma_max
            )));
        }
        let mut acc = creal(T::zero());
        let mut err = T::zero();
        for &(u, w, v, e) in &self.nodes {
            let k = (s * u).exp() * w;
            acc += k * v;
            err += k.norm() * e;
        }
        let x0_pow = ((s - T::one()) * self.u_min).exp();
        acc += x0_pow * self.f_hat_one / (s - T::one());
        let lower = if self.moduli.is_empty() {
            T::zero()
        } else {
            correction_bound(&self.moduli, self.u_min, s.re)
        };
        // ∫_X^∞ x^σ |Zf| d×x ≤ ζ(σ) ∫_X^∞ y^σ |f(y)| d×y
        let zeta_sigma = zeta_with_error(creal(s.re))?.value.re;
        let upper = zeta_sigma * self.f.upper_tail_integral(self.u_max.exp(), s.re);
        if upper + lower > self.tolerance {
            return Err(Error::WindowTooSmall {
                what: "Mellin transform of Zf",
                tail: (upper + lower).as_f64(),
                tolerance: self.tolerance.as_f64(),
            });
        }
        Ok((acc, err + upper + lower))
    }
}

/// Both sides of `(Zf)^(s) = ζ(s) f̂(s)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZSpectralCheck<T: Real = f64> {
    pub s: C<T>,
    pub mellin_zf: C<T>,
    pub zeta_times_mellin: C<T>,
    pub residual: T,
    pub est_error: T,
}

/// A window and panel count serving `sigma_min ≤ Re s ≤ sigma_max`,
/// `|Im s| ≤ t_max`.
///
/// `x₀` is the largest of `10⁻¹, 10^{-1.5}, …, 10⁻³` whose correction bound
/// is below `tolerance/100`; `10⁻³` when no bound is available.
pub fn zspectral_spec<T: Real>(
    f: &TestFunction<T>,
    sigma_min: T,
    sigma_max: T,
    t_max: T,
    tolerance: T,
) -> Result<QuadratureSpec<T>> {
    if !(sigma_min > T::one() && sigma_max >= sigma_min) {
        return Err(Error::Domain(format!(
            "(Zf)^(s) needs 1 < sigma_min ≤ sigma_max, got {sigma_min}, {sigma_max}"
        )));
    }
    let moduli = moduli_for(f);
    let mut u_min = T::lit(1e-3).ln();
    if !moduli.is_empty() {
        for k in 2..=6 {
            let u = -T::from_usize_lossy(k) * T::lit(0.5) * T::LN_10();
            if correction_bound(&moduli, u, sigma_min) < tolerance * T::lit(1e-2) {
                u_min = u;
                break;
            }
        }
    }
    let mut u_max = f.log_support(T::lit(1e-300)).1.max(u_min + T::one());
    let zeta_sigma = zeta_with_error(creal(sigma_min))?.value.re;
    let upper = |u: T| zeta_sigma * f.upper_tail_integral(u.exp(), sigma_max);
    while upper(u_max) > tolerance * T::lit(1e-3) {
        u_max += T::lit(0.5);
        if u_max > T::lit(700.0) {
            return Err(Error::WindowTooSmall {
                what: "Mellin transform of Zf",
                tail: upper(u_max).as_f64(),
                tolerance: tolerance.as_f64(),
            });
        }
    }
    // panels of width ≤ 1/2 (1/16 for the non-analytic bumps) and at most
    // 8 radians of e^{i t u} per panel
    let base = if f.support_end().is_some() {
        T::lit(0.0625)
    } else {
        T::lit(0.5)
    };
    let width = base.min(T::lit(8.0) / t_max.abs().max(T::one()));
    let panels = ((u_max - u_min) / width).ceil().to_usize().unwrap_or(1 << 20);
    QuadratureSpec::new(u_min, u_max, panels * PANEL_NODES, tolerance)
}

pub fn zspectral_check<T: Real>(
    f: &TestFunction<T>,
    s: C<T>,
    tr: &TruncationSpec,
    q: &QuadratureSpec<T>,
) -> Result<ZSpectralCheck<T>> {
    let grid = ZMellinGrid::new(f, tr, q, s.re)?;
    zspectral_check_on(&grid, s)
}

/// [`zspectral_check`] reusing precomputed values of `Zf`.
pub fn zspectral_check_on<T: Real>(grid: &ZMellinGrid<T>, s: C<T>) -> Result<ZSpectralCheck<T>> {
    let (lhs, lhs_err) = grid.mellin(s)?;
    let z = zeta_with_error(s)?;
    let (f_hat, f_err) = if grid.f.has_closed_form_mellin() {
        (grid.f.mellin_closed_form(s)?, T::zero())
    } else {
        let m = mellin_auto(&grid.f, s, grid.tolerance * T::lit(1e-2))?;
        (m.value, m.est_error)
    };
    let rhs = z.value * f_hat;
    Ok(ZSpectralCheck {
        s,
        mellin_zf: lhs,
        zeta_times_mellin: rhs,
        residual: (lhs - rhs).norm(),
        est_error: lhs_err + z.bound * f_hat.norm() + z.value.norm() * f_err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    fn check(f: &TestFunction, s: C<f64>) -> ZSpectralCheck {
        let tr = TruncationSpec::default().with_tail_tol(1e-13);
        let q = zspectral_spec(f, s.re, s.re, s.im, 1e-10).unwrap();
        zspectral_check(f, s, &tr, &q).unwrap()
    }

    #[test]
    fn log_gaussian_examples() {
        let f = TestFunction::log_gaussian(1.0, 0.0, 1.0).unwrap();
        for s in [creal(2.0), cplx(3.0, 5.0)] {
            let c = check(&f, s);
            assert!(c.residual < 1e-9, "s = {s}: {}", c.residual);
            assert!(c.residual <= c.est_error + 1e-12);
        }
    }

    #[test]
    fn grid_reuse_over_a_range_of_s() {
        let f = TestFunction::log_gaussian(0.7, 0.4, 0.8).unwrap();
        let tr = TruncationSpec::default().with_tail_tol(1e-13);
        let q = zspectral_spec(&f, 1.5, 4.0, 20.0, 1e-10).unwrap();
        let grid = ZMellinGrid::new(&f, &tr, &q, 4.0).unwrap();
        for &(re, im) in &[(1.5, 0.0), (1.5, 20.0), (2.5, -13.0), (4.0, 7.5), (4.0, -20.0)] {
            let c = zspectral_check_on(&grid, cplx(re, im)).unwrap();
            assert!(c.residual < 1e-8, "s = {re}+{im}i: {}", c.residual);
            assert!(
                c.residual <= c.est_error + 1e-12,
                "s = {re}+{im}i: {} > {}",
                c.residual,
                c.est_error
            );
        }
        assert!(grid.mellin(cplx(1.0, 3.0)).is_err());
        assert!(grid.mellin(cplx(4.5, 3.0)).is_err());
    }

    #[test]
    fn bump_without_closed_form() {
        let f = TestFunction::log_bump(1.0, 0.5, 3.0).unwrap();
        let c = check(&f, cplx(2.0, 1.0));
        assert!(c.residual < 1e-9, "{}", c.residual);
    }

    #[test]
    fn residual_is_subadditive() {
        let f1 = TestFunction::log_gaussian(1.0, 0.0, 1.0).unwrap();
        let f2 = TestFunction::log_gaussian(-0.5, 1.0, 0.6).unwrap();
        let sum = f1.clone().plus(f2.clone());
        let s = cplx(2.0, 3.0);
        let r = check(&sum, s).residual;
        assert!(r <= check(&f1, s).residual + check(&f2, s).residual + 1e-12);
    }
}
