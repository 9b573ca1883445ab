use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use zetaops::explicit_formula::explicit_formula_report;
use zetaops::function_spaces::{parse_parity_function, parse_test_function, Parity};
use zetaops::quadrature::QuadratureSpec;
use zetaops::special_functions::{completed_l_chi, l_chi_with_error, xi, zeta_with_error};
use zetaops::trace_checks::{build_phi, phi_log_identity, toeplitz_trace_check, LogGrid};
use zetaops::transforms::mellin_auto;
use zetaops::zeros::{find_zeros, write_zeros};
use zetaops::zeta_operators::{
    character, characters, poisson_check, twisted_poisson_check, zspectral_check_on, zspectral_spec, ZMellinGrid,
};
use zetaops::{Complex, Error};

use crate::args::*;
use crate::zero_source;

#[derive(Debug)]
pub enum Failure {
    Config(String),
    Numeric(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Numeric(e) if e.is_certification_failure() => 3,
            Failure::Numeric(Error::BudgetExceeded { .. } | Error::DisagreementBeyondTolerance { .. }) => 1,
            Failure::Numeric(_) => 2,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Config(m) => m.clone(),
            Failure::Numeric(e) => e.to_string(),
        }
    }
}

/// What a command produced: its echoed inputs, outputs, and whether every
/// residual met its tolerance.
pub struct Outcome {
    pub inputs: Value,
    pub outputs: Value,
    pub ok: bool,
}

fn to_value<S: Serialize>(v: &S) -> Value {
    serde_json::to_value(v).expect("reports are plain data")
}

fn c(s: [f64; 2]) -> Complex<f64> {
    Complex::new(s[0], s[1])
}

fn outcome<A: Serialize>(args: &A, outputs: Value, ok: bool) -> Outcome {
    Outcome {
        inputs: to_value(args),
        outputs,
        ok,
    }
}

pub struct Context<'a> {
    pub report: Option<&'a Path>,
    pub verbose: bool,
}

pub fn mellin(a: &MellinArgs) -> Result<Outcome, Failure> {
    let f = parse_test_function::<f64>(&a.f)?;
    let m = mellin_auto(&f, c(a.s), a.tol)?;
    let closed = f
        .has_closed_form_mellin()
        .then(|| f.mellin_closed_form(c(a.s)))
        .transpose()?;
    Ok(outcome(
        a,
        json!({ "mellin": m, "closed_form": closed }),
        m.est_error <= a.tol,
    ))
}

pub fn zeta(a: &PointArgs) -> Result<Outcome, Failure> {
    let z = zeta_with_error(c(a.s))?;
    Ok(outcome(a, json!({ "value": z.value, "est_error": z.bound }), true))
}

pub fn xi_value(a: &PointArgs) -> Result<Outcome, Failure> {
    let v = xi(c(a.s))?;
    Ok(outcome(a, to_value(&v), true))
}

pub fn lchi(a: &LchiArgs) -> Result<Outcome, Failure> {
    let chi = character(a.modulus, a.index)?;
    let l = l_chi_with_error(&chi, c(a.s))?;
    let completed = completed_l_chi(&chi, c(a.s))?;
    Ok(outcome(
        a,
        json!({
            "value": l.value,
            "est_error": l.bound,
            "completed": completed,
            "parity": chi.parity(),
            "kappa": chi.kappa(),
        }),
        true,
    ))
}

pub fn zeros(a: &ZerosArgs, ctx: &Context) -> Result<Outcome, Failure> {
    if ctx.verbose {
        eprintln!("zeros: searching up to T = {}", a.max_height);
    }
    let table = find_zeros(a.max_height, a.precision)?;
    write_zeros(&table, &a.out)?;
    Ok(outcome(
        a,
        json!({
            "count": table.len(),
            "height_bound": table.height_bound(),
            "precision": table.precision(),
            "ordinates": table.ordinates(),
        }),
        true,
    ))
}

pub fn poisson(a: &PoissonArgs) -> Result<Outcome, Failure> {
    let f = parse_parity_function::<f64>(&a.f)?;
    let checks =
        a.x.iter()
            .map(|&x| poisson_check(&f, x, &a.trunc))
            .collect::<Result<Vec<_>, _>>()?;
    let worst = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    Ok(outcome(
        a,
        json!({ "checks": checks, "max_residual": worst }),
        worst <= a.tol,
    ))
}

pub fn zspectral(a: &ZSpectralArgs) -> Result<Outcome, Failure> {
    let f = parse_test_function::<f64>(&a.f)?;
    let points: Vec<[f64; 2]> = if a.s.is_empty() {
        vec![[1.5, 0.0], [2.0, 5.0], [3.0, -10.0], [4.0, 20.0]]
    } else {
        a.s.clone()
    };
    let sigma_min = points.iter().map(|s| s[0]).fold(f64::INFINITY, f64::min);
    let sigma_max = points.iter().map(|s| s[0]).fold(f64::NEG_INFINITY, f64::max);
    let t_max = points.iter().map(|s| s[1].abs()).fold(1.0, f64::max);
    let q = zspectral_spec(&f, sigma_min, sigma_max, t_max, a.tol)?;
    let grid = ZMellinGrid::new(&f, &a.trunc, &q, sigma_max)?;
    let checks = points
        .iter()
        .map(|&s| zspectral_check_on(&grid, c(s)))
        .collect::<Result<Vec<_>, _>>()?;
    let worst = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    Ok(outcome(
        a,
        json!({ "checks": checks, "max_residual": worst }),
        worst <= a.tol,
    ))
}

pub fn twisted(a: &TwistedArgs) -> Result<Outcome, Failure> {
    let chi = match a.index {
        Some(i) => character(a.modulus, i)?,
        None => characters(a.modulus)
            .into_iter()
            .find(|c| c.is_primitive() && !c.is_principal())
            .ok_or_else(|| Failure::Config(format!("no primitive character mod {}", a.modulus)))?,
    };
    let expr = a.f.clone().unwrap_or_else(|| {
        if chi.parity() < 0 {
            "pgauss(2,1,1)".into()
        } else {
            "gauss2".into()
        }
    });
    let f = parse_parity_function::<f64>(&expr)?;
    let checks =
        a.x.iter()
            .map(|&x| twisted_poisson_check(&chi, &f, x, &a.trunc))
            .collect::<Result<Vec<_>, _>>()?;
    let worst = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    let parity = match f.parity() {
        Parity::Even => 1,
        Parity::Odd => -1,
    };
    Ok(outcome(
        a,
        json!({
            "function": expr,
            "function_parity": parity,
            "character_index": chi.index(),
            "kappa": chi.kappa(),
            "checks": checks,
            "max_residual": worst,
        }),
        worst <= a.tol,
    ))
}

pub fn trace_lemma(a: &TraceArgs) -> Result<Outcome, Failure> {
    let f0 = parse_test_function::<f64>(&a.f0)?;
    let f1 = parse_test_function::<f64>(&a.f1)?;
    let phi = build_phi(a.phi_width)?;
    let grid = LogGrid::new(a.n, a.window)?;
    let q = QuadratureSpec::symmetric(a.window, a.n, 1e-12)?;
    let r = toeplitz_trace_check(&f0, &f1, &phi, &grid, &q)?;
    Ok(outcome(a, to_value(&r), r.residual <= a.tol))
}

pub fn phi_identity(a: &PhiArgs) -> Result<Outcome, Failure> {
    let phi = build_phi(a.phi_width)?;
    let q = QuadratureSpec::symmetric(a.window, a.points, a.tol)?;
    let checks =
        a.x.iter()
            .map(|&x| phi_log_identity(&phi, x, &q))
            .collect::<Result<Vec<_>, _>>()?;
    let worst = checks.iter().map(|c| c.residual).fold(0.0, f64::max);
    Ok(outcome(
        a,
        json!({ "checks": checks, "max_residual": worst }),
        worst <= a.tol,
    ))
}

pub fn explicit_formula(a: &ExplicitArgs, ctx: &Context) -> Result<Outcome, Failure> {
    let f = parse_test_function::<f64>(&a.f)?;
    let mut tr = a.trunc;
    if let Some(p) = a.primes {
        tr.p_max = p;
    }
    if let Some(e) = a.e_max {
        tr.e_max = e;
    }
    tr.validate()?;
    let zeros = zero_source::resolve(&a.zeros, ctx.report, ctx.verbose)?;
    let q = QuadratureSpec::symmetric(40.0, 4001, a.tol)?;
    let r = explicit_formula_report(&f, &zeros.table, &tr, &q)?;
    let ok = r.within_budget && r.residual <= a.max_residual;
    Ok(Outcome {
        inputs: json!({
            "f": a.f,
            "zeros": a.zeros,
            "zero_table": zeros.path,
            "zero_table_cached": zeros.cached,
            "trunc": tr,
            "tol": a.tol,
            "max_residual": a.max_residual,
        }),
        outputs: to_value(&r),
        ok,
    })
}
