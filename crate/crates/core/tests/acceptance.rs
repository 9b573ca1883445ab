//! Acceptance suite: one line per criterion, each with a wall-clock limit.
//!
//! Run with `cargo test -p zetaops --test acceptance`.

use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zetaops::explicit_formula::{explicit_formula_report, ExplicitFormulaReport};
use zetaops::function_spaces::{Parity, ParityFunction, TestFunction};
use zetaops::quadrature::{tanh_sinh, QuadratureSpec};
use zetaops::special_functions::{l_chi, xi};
use zetaops::trace_checks::{build_phi, phi_log_identity, toeplitz_trace_check, LogGrid};
use zetaops::transforms::{pair_log_fourier, LogPairingInput, LogPairingOptions};
use zetaops::zeros::{counting_estimate, find_zeros, parse_zeros};
use zetaops::zeta_operators::{
    apply_z, apply_z_inverse, poisson_check, primitive_characters, twisted_poisson_check, zspectral_check_on,
    zspectral_spec, TruncationSpec, ZMellinGrid, ZOperator,
};
use zetaops::Complex;

mod tol {
    pub const POISSON: f64 = 1e-10;
    pub const FOURIER: f64 = 1e-12;
    pub const FUNCTIONAL_EQUATION: f64 = 1e-9;
    pub const MOBIUS: f64 = 1e-10;
    pub const MELLIN_IDENTITY: f64 = 1e-8;
    pub const ZERO_VALUE: f64 = 1e-5;
    pub const ZERO_REFERENCE: f64 = 1e-6;
    pub const EXPLICIT_FORMULA: f64 = 1e-4;
    /// Certified prime tail demanded of the explicit formula runs.
    pub const PRIME_TAIL: f64 = 1e-10;
    pub const TOEPLITZ: f64 = 1e-6;
    /// Slack when both Toeplitz residuals already sit at rounding level.
    pub const TOEPLITZ_FLOOR: f64 = 1e-13;
    pub const PHI_ANTISYMMETRY: f64 = 1e-15;
    pub const PHI_LOG: f64 = 1e-10;
    pub const LOG_PAIRING: f64 = 1e-6;
    pub const TWISTED_POISSON: f64 = 1e-7;
    pub const L_CHI: f64 = 1e-10;
    pub const KAPPA: f64 = 1e-12;
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn even(terms: &[(f64, u32, f64)]) -> ParityFunction {
    ParityFunction::from_real_terms(terms).expect("valid parity function")
}

fn poisson() -> Outcome {
    let mut fs = vec![ParityFunction::special_even()];
    let families: [&[(f64, u32, f64)]; 10] = [
        &[(1.0, 0, 0.5)],
        &[(1.0, 0, 0.8)],
        &[(1.0, 0, 1.5)],
        &[(1.0, 0, 2.5)],
        &[(1.0, 2, 1.0)],
        &[(1.0, 2, 0.6)],
        &[(1.0, 4, 1.2)],
        &[(1.0, 0, 1.0), (-0.5, 2, 2.0)],
        &[(0.3, 0, 0.4), (1.0, 4, 3.0)],
        &[(2.0, 0, 0.7), (1.0, 2, 0.7), (-1.0, 4, 0.7)],
    ];
    fs.extend(families.iter().map(|t| even(t)));
    let tr = TruncationSpec::default();
    let mut worst: f64 = 0.0;
    for f in &fs {
        for x in [0.25, 0.5, 1.0, 2.0, 4.0] {
            let c = poisson_check(f, x, &tr).map_err(e)?;
            worst = worst.max(c.residual);
        }
    }
    ensure(worst < tol::POISSON, || format!("max residual {worst:.2e}"))?;
    Ok(format!("{} functions, max residual {worst:.2e}", fs.len()))
}

fn fourier() -> Outcome {
    let f = ParityFunction::<f64>::special_even();
    let g = f.fourier();
    let grid: Vec<f64> = (0..=800).map(|i| -8.0 + 16.0 * i as f64 / 800.0).collect();
    let fixed = grid.iter().map(|&x| (g.eval(x) - f.eval(x)).norm()).fold(0.0, f64::max);
    ensure(fixed < tol::FOURIER, || format!("fixed point off by {fixed:.2e}"))?;
    let evens = [
        even(&[(1.0, 0, 0.7), (-0.3, 2, 1.9), (0.25, 4, 0.5)]),
        even(&[(2.0, 0, 3.0), (1.0, 6, 1.1)]),
    ];
    let odds = [
        ParityFunction::special_odd(),
        even(&[(1.0, 1, 0.7), (0.4, 3, 2.5), (-0.1, 5, 1.1)]),
    ];
    let mut inv: f64 = 0.0;
    for (fs, sign) in [(&evens, 1.0), (&odds, -1.0)] {
        for f in fs.iter() {
            let ff = f.fourier().fourier();
            for &x in &grid {
                inv = inv.max((ff.eval(x) - f.eval(x) * sign).norm());
            }
        }
    }
    ensure(odds.iter().all(|f| f.parity() == Parity::Odd), || {
        "parity bookkeeping".into()
    })?;
    ensure(inv < tol::FOURIER, || format!("F² off by {inv:.2e}"))?;
    Ok(format!("fixed point {fixed:.1e}, F² = ±id {inv:.1e}"))
}

fn functional_equation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let s = Complex::new(rng.gen_range(0.1..0.9), rng.gen_range(-50.0..50.0));
        let a = xi(s).map_err(e)?.xi;
        let b = xi(Complex::new(1.0, 0.0) - s).map_err(e)?.xi;
        worst = worst.max((a - b).norm() / a.norm());
    }
    ensure(worst < tol::FUNCTIONAL_EQUATION, || {
        format!("relative residual {worst:.2e}")
    })?;
    Ok(format!("50 points, max relative residual {worst:.2e}"))
}

fn mobius() -> Outcome {
    let tr = TruncationSpec::default();
    let fs = [
        TestFunction::log_gaussian(1.0, 0.0, 1.0).map_err(e)?,
        TestFunction::log_gaussian(0.5, 0.3, 0.7).map_err(e)?,
        TestFunction::log_gaussian(-2.0, 0.4, 0.9).map_err(e)?,
    ];
    let mut worst: f64 = 0.0;
    for f in &fs {
        let zf = ZOperator::new(f, tr);
        let zinv = ZOperator::inverse(f, tr);
        for i in 0..20 {
            let x = 0.3 * 10f64.powf(i as f64 / 19.0);
            let a = apply_z_inverse(&zf, x, &tr).map_err(e)?.value;
            let b = apply_z(&zinv, x, &tr).map_err(e)?.value;
            let fx = f.value(x);
            worst = worst.max((a - fx).abs()).max((b - fx).abs());
        }
    }
    ensure(worst < tol::MOBIUS, || format!("max deviation {worst:.2e}"))?;
    Ok(format!("3 log-Gaussians x 20 points, max deviation {worst:.2e}"))
}

fn mellin_identity() -> Outcome {
    let f = TestFunction::log_gaussian(1.0, 0.2, 0.8).map_err(e)?;
    let tr = TruncationSpec::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let points: Vec<Complex<f64>> = (0..20)
        .map(|_| Complex::new(rng.gen_range(1.5..=4.0), rng.gen_range(-20.0..=20.0)))
        .collect();
    let q = zspectral_spec(&f, 1.5, 4.0, 20.0, tol::MELLIN_IDENTITY).map_err(e)?;
    let grid = ZMellinGrid::new(&f, &tr, &q, 4.0).map_err(e)?;
    let mut worst: f64 = 0.0;
    for &s in &points {
        worst = worst.max(zspectral_check_on(&grid, s).map_err(e)?.residual);
    }
    ensure(worst < tol::MELLIN_IDENTITY, || format!("max residual {worst:.2e}"))?;
    Ok(format!("20 points, max residual {worst:.2e}"))
}

fn reference_zeros() -> Result<Vec<f64>, String> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/zeta_zeros_120.txt");
    let text = std::fs::read_to_string(&path).map_err(e)?;
    Ok(parse_zeros::<f64>(&text, &path)
        .map_err(e)?
        .truncated(60.0)
        .ordinates()
        .to_vec())
}

fn zero_finding() -> Outcome {
    let table = find_zeros(60.0, 1e-9).map_err(e)?;
    let expected = counting_estimate(60.0f64).round() as usize;
    ensure(table.len() == expected, || {
        format!("found {} zeros, estimate {expected}", table.len())
    })?;
    let reference = reference_zeros()?;
    ensure(reference.len() == table.len(), || {
        format!("reference has {} zeros", reference.len())
    })?;
    let mut worst_xi: f64 = 0.0;
    let mut worst_ref: f64 = 0.0;
    for (&g, &r) in table.ordinates().iter().zip(&reference) {
        worst_xi = worst_xi.max(xi(Complex::new(0.5, g)).map_err(e)?.xi.norm());
        worst_ref = worst_ref.max((g - r).abs());
    }
    ensure(worst_xi < tol::ZERO_VALUE, || format!("|xi| up to {worst_xi:.2e}"))?;
    ensure(worst_ref < tol::ZERO_REFERENCE, || {
        format!("reference mismatch {worst_ref:.2e}")
    })?;
    Ok(format!(
        "{} zeros, max |xi| {worst_xi:.1e}, reference gap {worst_ref:.1e}",
        table.len()
    ))
}

fn explicit_formula() -> Outcome {
    let zeros = find_zeros(60.0, 1e-9).map_err(e)?;
    let tr = TruncationSpec {
        p_max: 10_000,
        e_max: 60,
        tail_tol: tol::PRIME_TAIL,
        ..TruncationSpec::default()
    };
    let q = QuadratureSpec::symmetric(40.0, 4001, 1e-10).map_err(e)?;
    let base = TestFunction::log_gaussian(1.0, 0.0, 1.0).map_err(e)?;
    let fs = [
        base.clone(),
        base.clone().shifted(2.0).map_err(e)?,
        base.shifted(0.5).map_err(e)?,
    ];
    let mut notes = Vec::new();
    for f in &fs {
        let r: ExplicitFormulaReport = explicit_formula_report(f, &zeros, &tr, &q).map_err(e)?;
        ensure(r.residual < tol::EXPLICIT_FORMULA, || {
            format!("{}: residual {:.2e}", r.function, r.residual)
        })?;
        ensure(r.within_budget, || {
            format!(
                "{}: residual {:.2e} above budget {:.2e}",
                r.function, r.residual, r.budgets.total
            )
        })?;
        notes.push(format!("{:.1e}/{:.1e}", r.residual, r.budgets.total));
    }
    Ok(format!("residual/budget {}", notes.join(", ")))
}

fn toeplitz() -> Outcome {
    let lg = |mu: f64, sigma: f64| TestFunction::log_gaussian(1.0, mu, sigma);
    let ln2 = 2f64.ln();
    let pairs = [
        (lg(0.0, 1.0).map_err(e)?, lg(0.0, 1.0).map_err(e)?),
        (lg(ln2, 1.0).map_err(e)?, lg(-ln2, 1.0).map_err(e)?),
        (lg(0.0, 0.8).map_err(e)?, lg(0.0, 1.2).map_err(e)?.scale(0.5)),
    ];
    let phi = build_phi(1.0).map_err(e)?;
    let q = QuadratureSpec::symmetric(8.0, 2048, 1e-12).map_err(e)?;
    let coarse = LogGrid::new(2048, 8.0).map_err(e)?;
    let fine = LogGrid::new(4096, 8.0).map_err(e)?;
    let mut notes = Vec::new();
    for (f0, f1) in &pairs {
        let a = toeplitz_trace_check(f0, f1, &phi, &coarse, &q).map_err(e)?;
        let b = toeplitz_trace_check(f0, f1, &phi, &fine, &q).map_err(e)?;
        ensure(a.residual < tol::TOEPLITZ, || {
            format!("N = 2048 residual {:.2e}", a.residual)
        })?;
        ensure(b.residual <= a.residual.max(tol::TOEPLITZ_FLOOR), || {
            format!("residual grew from {:.2e} to {:.2e}", a.residual, b.residual)
        })?;
        notes.push(format!("{:.1e}->{:.1e}", a.residual, b.residual));
    }
    Ok(format!("residuals {}", notes.join(", ")))
}

fn phi_identities() -> Outcome {
    let q = QuadratureSpec::symmetric(8.0, 8001, tol::PHI_LOG).map_err(e)?;
    let mut anti: f64 = 0.0;
    let mut worst: f64 = 0.0;
    for w in [0.5, 1.0, 2.0] {
        let phi = build_phi(w).map_err(e)?;
        for i in 0..=2000 {
            let t = (-6.0 + 12.0 * i as f64 / 2000.0).exp();
            anti = anti.max((phi.eval(t) + phi.eval(1.0 / t) - 1.0).abs());
        }
        for x in [0.5, 1.0, std::f64::consts::E] {
            worst = worst.max(phi_log_identity(&phi, x, &q).map_err(e)?.residual);
        }
    }
    ensure(anti < tol::PHI_ANTISYMMETRY, || {
        format!("antisymmetry off by {anti:.2e}")
    })?;
    ensure(worst < tol::PHI_LOG, || format!("log identity residual {worst:.2e}"))?;
    Ok(format!("antisymmetry {anti:.1e}, log identity {worst:.1e}"))
}

fn log_pairing(psi: &ParityFunction) -> Result<f64, String> {
    let opts = LogPairingOptions::default();
    Ok(pair_log_fourier(LogPairingInput::Parity(psi), &opts)
        .map_err(e)?
        .value
        .re)
}

fn fourier_of_log() -> Outcome {
    let vanishing = [
        even(&[(1.0, 2, 1.0)]),
        even(&[(1.0, 0, 1.0), (-1.0, 0, 2.0)]),
        even(&[(1.0, 4, 0.5)]),
        even(&[(3.0, 2, 2.0), (-1.0, 4, 1.0)]),
        even(&[(1.0, 0, 0.5), (-1.0, 0, 3.0), (1.0, 2, 1.0)]),
    ];
    let mut worst: f64 = 0.0;
    for psi in &vanishing {
        // ∫ ψ d×x over ℝ with d×x = dx / (2|x|)
        let integral: f64 = (0..24)
            .map(|k| tanh_sinh(k as f64, k as f64 + 1.0, 1e-15, |x: f64| psi.eval(x).re / x).0)
            .sum();
        worst = worst.max((log_pairing(psi)? + integral).abs());
    }
    ensure(worst < tol::LOG_PAIRING, || format!("c = -1 check off by {worst:.2e}"))?;
    let mut cov: f64 = 0.0;
    for psi in [ParityFunction::special_even(), even(&[(1.0, 0, 0.7), (1.0, 2, 1.3)])] {
        let base = log_pairing(&psi)?;
        for t in [0.5, 2.0, 3.0] {
            let shifted = log_pairing(&psi.dilated(t).map_err(e)?)?;
            cov = cov.max((shifted - base + t.ln() * psi.eval(0.0).re).abs());
        }
    }
    ensure(cov < tol::LOG_PAIRING, || format!("covariance off by {cov:.2e}"))?;
    Ok(format!("pairing {worst:.1e}, covariance {cov:.1e}"))
}

fn dirichlet() -> Outcome {
    let tr = TruncationSpec::default();
    let mut worst: f64 = 0.0;
    let mut kappa: f64 = 0.0;
    let mut count = 0;
    for d in [3u64, 4, 5, 7] {
        for chi in primitive_characters(d) {
            let f = if chi.parity() > 0 {
                ParityFunction::special_even()
            } else {
                ParityFunction::special_odd()
            };
            for x in [0.5, 1.0, 2.0] {
                worst = worst.max(twisted_poisson_check(&chi, &f, x, &tr).map_err(e)?.residual);
            }
            kappa = kappa.max((chi.kappa().norm() - 1.0).abs());
            count += 1;
        }
    }
    ensure(worst < tol::TWISTED_POISSON, || {
        format!("twisted Poisson residual {worst:.2e}")
    })?;
    ensure(kappa < tol::KAPPA, || format!("|kappa| - 1 = {kappa:.2e}"))?;
    // Σ (-1)^k / (2k+1)², summed from the small end; the tail is below the
    // first omitted term
    let chi4 = &primitive_characters(4)[0];
    let n = 4_000_000u64;
    let series: f64 = (0..n)
        .rev()
        .map(|k| {
            let t = 1.0 / ((2 * k + 1) as f64).powi(2);
            if k % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum();
    let l2 = l_chi(chi4, Complex::new(2.0, 0.0)).map_err(e)?;
    let gap = (l2 - series).norm();
    ensure(gap < tol::L_CHI, || format!("L(2) off by {gap:.2e}"))?;
    Ok(format!(
        "{count} characters, residual {worst:.1e}, L(2) gap {gap:.1e}, kappa {kappa:.1e}"
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion {
            id: 1,
            name: "Poisson identity",
            limit: secs(5),
            run: poisson,
        },
        Criterion {
            id: 2,
            name: "Fourier involution",
            limit: secs(1),
            run: fourier,
        },
        Criterion {
            id: 3,
            name: "functional equation",
            limit: secs(5),
            run: functional_equation,
        },
        Criterion {
            id: 4,
            name: "Mobius inversion",
            limit: secs(5),
            run: mobius,
        },
        Criterion {
            id: 5,
            name: "Mellin identity",
            limit: secs(10),
            run: mellin_identity,
        },
        Criterion {
            id: 6,
            name: "zero finding",
            limit: secs(60),
            run: zero_finding,
        },
        Criterion {
            id: 7,
            name: "explicit formula",
            limit: secs(120),
            run: explicit_formula,
        },
        Criterion {
            id: 8,
            name: "Toeplitz trace",
            limit: secs(120),
            run: toeplitz,
        },
        Criterion {
            id: 9,
            name: "phi identities",
            limit: secs(5),
            run: phi_identities,
        },
        Criterion {
            id: 10,
            name: "Fourier of log",
            limit: secs(10),
            run: fourier_of_log,
        },
        Criterion {
            id: 11,
            name: "Dirichlet layer",
            limit: secs(30),
            run: dirichlet,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if took <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(d) => (false, d),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "[{}] {:>2} {:<20} {:>7.2} s / {:>3} s  {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            took.as_secs_f64(),
            c.limit.as_secs(),
            detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
