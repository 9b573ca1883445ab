//! Weil explicit formula: spectral side against prime side.
//!
//! `f̂(0) + f̂(1) - Σ_ρ f̂(ρ) = Σ_p W_p(f) + W_∞(f)`, with every truncation
//! (zeros, primes, prime powers, quadrature) carried as a certified budget.

mod archimedean;
mod primes;
mod spectral;

use serde::Serialize;

pub use archimedean::{calibration, naive_pv, w_infty, Calibration, WInfty, WInftyMethod};
pub use primes::{w_p, w_p_chi, w_prime_total, w_prime_total_chi, PrimeSide};
pub use spectral::{ordinate_lipschitz, spectral_side, zero_tail_bound, SpectralSide, MAX_ZERO_TAIL};

use crate::error::{Error, Result};
use crate::function_spaces::TestFunction;
use crate::quadrature::QuadratureSpec;
use crate::scalar::Real;
use crate::zeros::ZeroTable;
use crate::zeta_operators::TruncationSpec;

/// Every input and error term that enters the residual budget.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Budgets<T: Real = f64> {
    pub zero_height: T,
    pub zero_count: usize,
    pub zero_precision: T,
    pub p_max: u64,
    pub e_max: u32,
    pub tail_tol: f64,
    pub quadrature_tolerance: T,
    pub zero_tail: T,
    pub zero_precision_term: T,
    pub mellin_error: T,
    pub exponent_tail: T,
    pub prime_tail: T,
    pub w_infty_error: T,
    /// Sum of the error terms.
    pub total: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExplicitFormulaReport<T: Real = f64> {
    pub function: String,
    pub spectral_side: T,
    pub pole_contribution: T,
    pub zero_contribution: T,
    pub prime_side: T,
    #[serde(rename = "W_p_total")]
    pub w_p_total: T,
    #[serde(rename = "W_infty")]
    pub w_infty: T,
    pub w_infty_detail: WInfty<T>,
    pub residual: T,
    pub within_budget: bool,
    pub budgets: Budgets<T>,
}

/// Evaluates both sides and the budget without judging the outcome.
pub fn explicit_formula_report<T: Real>(
    f: &TestFunction<T>,
    zt: &ZeroTable<T>,
    tr: &TruncationSpec,
    q: &QuadratureSpec<T>,
) -> Result<ExplicitFormulaReport<T>> {
    let (spectral, (primes, winf)) = rayon::join(
        || spectral_side(f, zt, q),
        || rayon::join(|| w_prime_total(f, tr), || w_infty(f, q)),
    );
    let (spectral, primes, winf) = (spectral?, primes?, winf?);
    let prime_side = primes.total + winf.value;
    let residual = (spectral.value - prime_side).abs();
    let mellin_error = spectral.value_error + spectral.pole_error;
    let total = spectral.tail_bound
        + spectral.precision_bound
        + mellin_error
        + primes.exponent_tail
        + primes.prime_tail
        + winf.est_error;
    Ok(ExplicitFormulaReport {
        function: f.to_string(),
        spectral_side: spectral.value,
        pole_contribution: spectral.pole_contribution,
        zero_contribution: spectral.zero_contribution,
        prime_side,
        w_p_total: primes.total,
        w_infty: winf.value,
        w_infty_detail: winf,
        residual,
        within_budget: residual <= total,
        budgets: Budgets {
            zero_height: zt.height_bound(),
            zero_count: zt.len(),
            zero_precision: zt.precision(),
            p_max: tr.p_max,
            e_max: tr.e_max,
            tail_tol: tr.tail_tol,
            quadrature_tolerance: q.tolerance,
            zero_tail: spectral.tail_bound,
            zero_precision_term: spectral.precision_bound,
            mellin_error,
            exponent_tail: primes.exponent_tail,
            prime_tail: primes.prime_tail,
            w_infty_error: winf.est_error,
            total,
        },
    })
}

/// [`explicit_formula_report`], failing with `BudgetExceeded` when the
/// residual is larger than the certified budget.
pub fn verify_explicit_formula<T: Real>(
    f: &TestFunction<T>,
    zt: &ZeroTable<T>,
    tr: &TruncationSpec,
    q: &QuadratureSpec<T>,
) -> Result<ExplicitFormulaReport<T>> {
    let r = explicit_formula_report(f, zt, tr, q)?;
    if !r.within_budget {
        return Err(Error::BudgetExceeded {
            residual: r.residual.as_f64(),
            budget: r.budgets.total.as_f64(),
        });
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::parse_zeros;
    use std::path::Path;

    fn table() -> ZeroTable<f64> {
        let text = include_str!("../../tests/data/zeta_zeros_120.txt");
        parse_zeros(text, Path::new("zeta_zeros_120.txt")).unwrap()
    }

    fn tr() -> TruncationSpec {
        TruncationSpec {
            p_max: 10_000,
            e_max: 60,
            ..TruncationSpec::default()
        }
    }

    fn q() -> QuadratureSpec<f64> {
        QuadratureSpec::symmetric(40.0, 4001, 1e-10).unwrap()
    }

    #[test]
    fn log_gaussian_balances() {
        let zt = table().truncated(60.0);
        let f = TestFunction::log_gaussian(1.0, 0.0, 1.0).unwrap();
        let r = verify_explicit_formula(&f, &zt, &tr(), &q()).unwrap();
        assert!(r.residual < 1e-8, "{r:#?}");
        assert!((r.spectral_side - (r.pole_contribution - r.zero_contribution)).abs() < 1e-15);
        assert!((r.prime_side - (r.w_p_total + r.w_infty)).abs() < 1e-15);
        assert!((r.w_infty - 3.180_502_428_126_847).abs() < 1e-9);
    }

    #[test]
    fn shifted_function_is_dominated_by_two() {
        let zt = table().truncated(60.0);
        let f = TestFunction::log_gaussian(1.0, 0.0, 0.15)
            .unwrap()
            .shifted(2.0)
            .unwrap();
        let r = verify_explicit_formula(&f, &zt, &tr(), &q()).unwrap();
        let w2 = w_p(&f, 2, &tr()).unwrap().value;
        assert!(w2.abs() > 0.9 * r.w_p_total.abs(), "{w2} vs {}", r.w_p_total);
    }

    #[test]
    fn more_zeros_do_not_hurt() {
        let f = TestFunction::log_gaussian(1.0, 0.3, 0.3).unwrap();
        let full = table();
        let r60 = explicit_formula_report(&f, &full.truncated(60.0), &tr(), &q()).unwrap();
        let r30 = explicit_formula_report(&f, &full.truncated(30.0), &tr(), &q()).unwrap();
        let band = zero_tail_bound(&f, 30.0);
        assert!(r60.residual <= r30.residual + band);
        assert!(r30.within_budget && r60.within_budget);
    }

    #[test]
    fn linear_in_the_test_function() {
        let zt = table().truncated(60.0);
        let f = TestFunction::log_gaussian(1.0, 0.2, 0.6).unwrap();
        let g = TestFunction::log_gaussian(-0.5, -0.4, 0.8).unwrap();
        let a = explicit_formula_report(&f, &zt, &tr(), &q()).unwrap();
        let b = explicit_formula_report(&g, &zt, &tr(), &q()).unwrap();
        let c = explicit_formula_report(&f.clone().scale(2.0).plus(g.clone()), &zt, &tr(), &q()).unwrap();
        assert!((c.spectral_side - 2.0 * a.spectral_side - b.spectral_side).abs() < 1e-12);
        assert!((c.w_p_total - 2.0 * a.w_p_total - b.w_p_total).abs() < 1e-12);
    }

    #[test]
    fn truncated_zero_sum_is_rejected_by_the_budget() {
        // too few zeros for a narrow window in u: the tail is not certifiable
        let zt = table().truncated(20.0);
        let f = TestFunction::log_gaussian(1.0, 0.0, 0.1).unwrap();
        assert!(matches!(
            verify_explicit_formula(&f, &zt, &tr(), &q()),
            Err(Error::TailBoundViolation { .. })
        ));
    }

    #[test]
    fn bump_prime_side_is_two_terms() {
        let zt = table();
        let f = TestFunction::log_bump(1.0, 0.5, 2.0).unwrap();
        let winf = w_infty(&f, &q()).unwrap();
        let r = explicit_formula_report(&f, &zt, &tr(), &q());
        let expect = 2f64.ln() * (f.value(2.0) + f.value(0.5) / 2.0) + winf.value;
        match r {
            Ok(r) => assert!((r.prime_side - expect).abs() < 1e-15),
            Err(e) => assert!(e.is_certification_failure(), "{e}"),
        }
    }
}
