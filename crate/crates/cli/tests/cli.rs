use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn zetaops(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zetaops"))
        .args(args)
        .env("ZETAOPS_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}):\n{}\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn reference_zeros() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/data/zeta_zeros_120.txt")
        .display()
        .to_string()
}

#[test]
fn explicit_formula_writes_report_and_caches_zeros() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("ef.json");
    let path_s = path.to_str().unwrap();
    let args = [
        "verify",
        "explicit-formula",
        "--f",
        "loggauss(1,0,1)",
        "--zeros",
        "auto:60",
        "--primes",
        "10000",
        "--report",
        path_s,
    ];
    let out = zetaops(dir.path(), &args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc, report(&out));
    assert_eq!(doc["command"], "verify-explicit-formula");
    assert_eq!(doc["ok"], true);
    let o = &doc["outputs"];
    for key in [
        "spectral_side",
        "W_p_total",
        "W_infty",
        "residual",
        "within_budget",
        "budgets",
    ] {
        assert!(!o[key].is_null(), "missing {key}");
    }
    assert!(o["residual"].as_f64().unwrap() < 1e-4);
    assert!(o["budgets"]["total"].as_f64().unwrap() > 0.0);
    assert!(dir.path().join("zeta_zeros_60.txt").exists());
    assert_eq!(doc["inputs"]["zero_table_cached"], false);

    let again = report(&zetaops(dir.path(), &args));
    assert_eq!(again["inputs"]["zero_table_cached"], true);
    assert_eq!(again["outputs"]["residual"], o["residual"]);
}

#[test]
fn hyphenated_aliases_match_nested_commands() {
    let dir = TempDir::new().unwrap();
    let zeros = reference_zeros();
    let nested = zetaops(
        dir.path(),
        &[
            "verify",
            "explicit-formula",
            "--f",
            "shift(loggauss(1,0,1),2)",
            "--zeros",
            &zeros,
        ],
    );
    let flat = zetaops(
        dir.path(),
        &[
            "verify-explicit-formula",
            "--f",
            "shift(loggauss(1,0,1),2)",
            "--zeros",
            &zeros,
        ],
    );
    assert_eq!(code(&nested), 0, "{}", String::from_utf8_lossy(&nested.stderr));
    assert_eq!(report(&nested)["outputs"], report(&flat)["outputs"]);
    let a = zetaops(dir.path(), &["check", "poisson"]);
    let b = zetaops(dir.path(), &["check-poisson"]);
    assert_eq!(code(&a), 0);
    assert_eq!(report(&a)["outputs"], report(&b)["outputs"]);
}

#[test]
fn tolerance_failure_exits_one() {
    let dir = TempDir::new().unwrap();
    let out = zetaops(
        dir.path(),
        &["check", "poisson", "--f", "pgauss(1,2,0.7)", "--tol", "1e-30"],
    );
    assert_eq!(code(&out), 1);
    let doc = report(&out);
    assert_eq!(doc["ok"], false);
    assert_eq!(doc["exit_code"], 1);
}

#[test]
fn configuration_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let missing = zetaops(
        dir.path(),
        &[
            "verify",
            "explicit-formula",
            "--f",
            "loggauss(1,0,1)",
            "--zeros",
            "/no/such/file",
        ],
    );
    assert_eq!(code(&missing), 2);
    assert!(report(&missing)["error"].as_str().unwrap().contains("/no/such/file"));
    let bad_expr = zetaops(dir.path(), &["mellin", "--f", "loggauss(1,0)", "--s", "2"]);
    assert_eq!(code(&bad_expr), 2);
    let bad_flag = zetaops(dir.path(), &["check", "poisson", "--trunc", "n=abc"]);
    assert_eq!(code(&bad_flag), 2);
}

#[test]
fn certification_failures_exit_three() {
    let dir = TempDir::new().unwrap();
    let narrow_window = zetaops(
        dir.path(),
        &[
            "check",
            "trace-lemma",
            "--f0",
            "loggauss(1,0,1)",
            "--f1",
            "loggauss(1,0,1)",
            "--window",
            "3",
            "--n",
            "256",
        ],
    );
    assert_eq!(code(&narrow_window), 3);
    let zeros = dir.path().join("short.txt");
    std::fs::write(&zeros, "# height_bound: 20\n14.134725141734693790\n").unwrap();
    let too_few_zeros = zetaops(
        dir.path(),
        &[
            "verify",
            "explicit-formula",
            "--f",
            "loggauss(1,0,0.1)",
            "--zeros",
            zeros.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&too_few_zeros), 3);
    assert_eq!(report(&too_few_zeros)["ok"], false);
}

#[test]
fn config_file_fills_in_missing_flags() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# strict\nf = pgauss(1,2,0.7)\ntol = 1e-30\nx = 0.5,2\n").unwrap();
    let cfg_s = cfg.to_str().unwrap();
    let strict = zetaops(dir.path(), &["check", "poisson", "--config", cfg_s]);
    assert_eq!(code(&strict), 1);
    let doc = report(&strict);
    assert!((doc["inputs"]["tol"].as_f64().unwrap() / 1e-30 - 1.0).abs() < 1e-12);
    assert_eq!(doc["inputs"]["x"], serde_json::json!([0.5, 2.0]));
    let relaxed = zetaops(dir.path(), &["check", "poisson", "--config", cfg_s, "--tol", "1e-10"]);
    assert_eq!(code(&relaxed), 0);
}

#[test]
fn zeros_command_writes_table() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("z.txt");
    let out = zetaops(
        dir.path(),
        &["zeros", "--max-height", "40", "--out", out_path.to_str().unwrap()],
    );
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["outputs"]["count"], 6);
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.lines().any(|l| l.starts_with("14.1347251")));
}

#[test]
fn point_evaluations() {
    let dir = TempDir::new().unwrap();
    let l = report(&zetaops(
        dir.path(),
        &["lchi", "--modulus", "4", "--index", "1", "--s", "2"],
    ));
    let catalan = 0.915_965_594_177_219;
    assert!((l["outputs"]["value"][0].as_f64().unwrap() - catalan).abs() < 1e-12);
    let z = report(&zetaops(dir.path(), &["zeta", "--s", "2,0"]));
    let pi2_6 = std::f64::consts::PI.powi(2) / 6.0;
    assert!((z["outputs"]["value"][0].as_f64().unwrap() - pi2_6).abs() < 1e-13);
    let tw = zetaops(dir.path(), &["check", "twisted-poisson", "--modulus", "5"]);
    assert_eq!(code(&tw), 0);
    let phi = zetaops(dir.path(), &["check", "phi-identity", "--phi-width", "2"]);
    assert_eq!(code(&phi), 0);
    let zs = zetaops(dir.path(), &["check", "zspectral", "--s", "2,3", "--s", "1.5,-7"]);
    assert_eq!(code(&zs), 0, "{}", String::from_utf8_lossy(&zs.stderr));
}
