use std::path::Path;

use zetaops::explicit_formula::{verify_explicit_formula, w_infty, WInftyMethod};
use zetaops::function_spaces::{parse_test_function, TestFunction};
use zetaops::quadrature::QuadratureSpec;
use zetaops::trace_checks::{build_phi, toeplitz_trace_check, weil_derivation_check, LogGrid};
use zetaops::zeros::{find_zeros, load_zeros, parse_zeros, write_zeros, ZeroSource};
use zetaops::zeta_operators::{poisson_check, TruncationSpec};
use zetaops::Error;

fn reference() -> zetaops::f64::ZeroTable {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/zeta_zeros_120.txt");
    load_zeros(&path).unwrap()
}

fn tr() -> TruncationSpec {
    TruncationSpec {
        p_max: 10_000,
        e_max: 60,
        tail_tol: 1e-10,
        ..TruncationSpec::default()
    }
}

#[test]
fn computed_zeros_match_reference_to_120() {
    let table = find_zeros(120.0, 1e-9).unwrap();
    let reference = reference();
    assert_eq!(table.len(), reference.len());
    for (a, b) in table.ordinates().iter().zip(reference.ordinates()) {
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }
}

#[test]
fn zero_table_round_trips_through_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeros.txt");
    let table = find_zeros(50.0, 1e-9).unwrap();
    write_zeros(&table, &path).unwrap();
    let back: zetaops::f64::ZeroTable = load_zeros(&path).unwrap();
    assert_eq!(back.len(), table.len());
    assert_eq!(back.height_bound(), 50.0);
    assert_eq!(back.precision(), 1e-9);
    assert_eq!(back.source(), &ZeroSource::Ingested(path.clone()));
    for (a, b) in back.ordinates().iter().zip(table.ordinates()) {
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn malformed_tables_are_rejected() {
    let p = Path::new("inline");
    assert!(matches!(
        parse_zeros::<f64>("14.1\n21.0\n20.0\n", p),
        Err(Error::OrderViolation { line: 3, .. })
    ));
    assert!(matches!(
        parse_zeros::<f64>("14.1\nabc\n", p),
        Err(Error::Parse { line: 2, .. })
    ));
    let missing = load_zeros::<f64>(Path::new("/nonexistent/zeros.txt"));
    assert!(matches!(missing, Err(Error::Io { .. })));
}

#[test]
fn explicit_formula_from_expression() {
    let f = parse_test_function::<f64>("shift(loggauss(1,0,1), t=2) + 0.5*loggauss(1,0.3,0.8)").unwrap();
    let q = QuadratureSpec::symmetric(40.0, 4001, 1e-10).unwrap();
    let r = verify_explicit_formula(&f, &reference().truncated(60.0), &tr(), &q).unwrap();
    assert!(r.within_budget);
    assert!(r.residual < 1e-6, "residual {}", r.residual);
}

#[test]
fn bump_explicit_formula_uses_pv() {
    let f = TestFunction::log_bump(1.0, 0.8, 1.25).unwrap();
    let q = QuadratureSpec::symmetric(40.0, 4001, 1e-10).unwrap();
    let w = w_infty(&f, &q).unwrap();
    assert_eq!(w.method, WInftyMethod::CalibratedPv);
    assert!(w.duality.is_none());
    // narrow bumps have huge spectral tails, so the full check is expected to refuse
    match verify_explicit_formula(&f, &reference(), &tr(), &q) {
        Err(Error::TailBoundViolation { .. }) => {}
        Ok(r) => assert!(r.within_budget),
        Err(e) => panic!("unexpected error {e}"),
    }
}

#[test]
fn f32_instantiation_runs() {
    let f = zetaops::f32::ParityFunction::special_even();
    let spec = TruncationSpec {
        tail_tol: 1e-6,
        ..TruncationSpec::default()
    };
    let c: zetaops::f32::IdentityCheck = poisson_check(&f, 0.7f32, &spec).unwrap();
    assert!(c.residual < 1e-5);
    let phi: zetaops::f32::AuxiliaryPhi = build_phi(1.0f32).unwrap();
    assert!((phi.eval(3.0) + phi.eval(1.0 / 3.0) - 1.0).abs() < 1e-6);
}

#[test]
fn trace_lemma_and_weil_derivation_off_center() {
    let f0 = TestFunction::log_gaussian(1.0, 0.3, 0.9).unwrap();
    let f1 = TestFunction::log_gaussian(1.0, -0.1, 0.7).unwrap();
    let phi = build_phi(1.0).unwrap();
    let grid = LogGrid::new(1024, 8.0).unwrap();
    let q = QuadratureSpec::symmetric(8.0, 2001, 1e-12).unwrap();
    let t = toeplitz_trace_check(&f0, &f1, &phi, &grid, &q).unwrap();
    assert!(t.residual < 1e-8, "residual {}", t.residual);
    let w = weil_derivation_check(&f0, &tr()).unwrap();
    assert!(w.residual < 1e-10);
    assert!(w.lhs > 0.0);
}
