use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use zetaops::zeta_operators::TruncationSpec;

/// Numerical checks around zeta operators and the explicit formula.
///
/// Every command prints one JSON report; `--report` also writes it to a file.
/// Exit status: 0 all residuals within tolerance, 1 tolerance failure,
/// 2 configuration error, 3 numerical certification failure.
#[derive(Debug, Parser)]
#[command(name = "zetaops", version)]
pub struct Cli {
    /// Plain-text `key = value` file; flags given on the command line win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Where to write the JSON report.
    #[arg(long, global = true, value_name = "PATH")]
    pub report: Option<PathBuf>,

    /// Progress notes on stderr.
    #[arg(short, long, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mellin transform of a test function at one point.
    Mellin(MellinArgs),
    /// Riemann zeta function.
    Zeta(PointArgs),
    /// Completed zeta function.
    Xi(PointArgs),
    /// Dirichlet L-function of a primitive character.
    Lchi(LchiArgs),
    /// Zeros of zeta on the critical line up to a height.
    Zeros(ZerosArgs),
    #[command(subcommand)]
    Check(CheckCommand),
    /// Checks against a certified error budget.
    #[command(subcommand)]
    Verify(VerifyCommand),
    #[command(name = "check-poisson", hide = true)]
    CheckPoisson(PoissonArgs),
    #[command(name = "check-zspectral", hide = true)]
    CheckZspectral(ZSpectralArgs),
    #[command(name = "check-twisted-poisson", hide = true)]
    CheckTwistedPoisson(TwistedArgs),
    #[command(name = "check-trace-lemma", hide = true)]
    CheckTraceLemma(TraceArgs),
    #[command(name = "check-phi-identity", hide = true)]
    CheckPhiIdentity(PhiArgs),
    #[command(name = "verify-explicit-formula", hide = true)]
    VerifyExplicitFormula(ExplicitArgs),
}

/// Identity checks.
#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    /// `Σ f(nx) = x⁻¹ Σ 𝓕f(n/x)` for an even Gaussian-family function.
    Poisson(PoissonArgs),
    /// `(Zf)^(s) = ζ(s) f̂(s)` for `Re s > 1`.
    Zspectral(ZSpectralArgs),
    /// Poisson summation twisted by a primitive character.
    TwistedPoisson(TwistedArgs),
    /// Trace of `∫λ(f₀) [M_φ, ∫λ(f₁)]` against `τ(f₀ * ∂f₁)`.
    TraceLemma(TraceArgs),
    /// `∫ (φ(z) - φ(xz)) d×z = ln(1/x)`.
    PhiIdentity(PhiArgs),
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Spectral side against prime side of the explicit formula.
    ExplicitFormula(ExplicitArgs),
}

/// `re,im` or `re`.
pub fn parse_complex(s: &str) -> Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<f64>().map_err(|e| format!("bad number `{p}`: {e}"));
    match parts.as_slice() {
        [re] => Ok([num(re)?, 0.0]),
        [re, im] => Ok([num(re)?, num(im)?]),
        _ => Err(format!("expected `re,im`, got `{s}`")),
    }
}

#[derive(Debug, Args, Serialize)]
pub struct MellinArgs {
    /// Test function, e.g. `loggauss(a=1,mu=0,sigma=1)`.
    #[arg(long)]
    pub f: String,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: [f64; 2],
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct PointArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: [f64; 2],
}

#[derive(Debug, Args, Serialize)]
pub struct LchiArgs {
    #[arg(long)]
    pub modulus: u64,
    /// Character index mod d (0 is principal).
    #[arg(long)]
    pub index: usize,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: [f64; 2],
}

#[derive(Debug, Args, Serialize)]
pub struct ZerosArgs {
    #[arg(long)]
    pub max_height: f64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    pub precision: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct PoissonArgs {
    /// Even parity function; `gauss2` is `2 exp(-πx²)`.
    #[arg(long, default_value = "gauss2")]
    pub f: String,
    #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,1,2,4")]
    pub x: Vec<f64>,
    #[arg(long, default_value_t = TruncationSpec::default())]
    pub trunc: TruncationSpec,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct ZSpectralArgs {
    #[arg(long, default_value = "loggauss(1,0,1)")]
    pub f: String,
    /// Evaluation points `re,im` with `re > 1`; repeat the flag for more.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: Vec<[f64; 2]>,
    #[arg(long, default_value_t = TruncationSpec::default())]
    pub trunc: TruncationSpec,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct TwistedArgs {
    /// Parity function matching the character; defaults to `gauss2` for
    /// even and `pgauss(2,1,1)` for odd characters.
    #[arg(long)]
    pub f: Option<String>,
    #[arg(long)]
    pub modulus: u64,
    /// Character index mod d; defaults to the first primitive one.
    #[arg(long)]
    pub index: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,2")]
    pub x: Vec<f64>,
    #[arg(long, default_value_t = TruncationSpec::default())]
    pub trunc: TruncationSpec,
    #[arg(long, default_value_t = 1e-7)]
    pub tol: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct TraceArgs {
    #[arg(long)]
    pub f0: String,
    #[arg(long)]
    pub f1: String,
    #[arg(long, default_value_t = 2048)]
    pub n: usize,
    /// Half-width `U` of the log window `[e^{-U}, e^U]`.
    #[arg(long, default_value_t = 8.0)]
    pub window: f64,
    #[arg(long, default_value_t = 1.0)]
    pub phi_width: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct PhiArgs {
    #[arg(long, default_value_t = 1.0)]
    pub phi_width: f64,
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,2.718281828459045")]
    pub x: Vec<f64>,
    #[arg(long, default_value_t = 8.0)]
    pub window: f64,
    #[arg(long, default_value_t = 8001)]
    pub points: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct ExplicitArgs {
    #[arg(long)]
    pub f: String,
    /// Zero table path, or `auto:T` to compute (and cache) zeros up to `T`.
    #[arg(long, default_value = "auto:60")]
    pub zeros: String,
    /// Largest prime; overrides the `p` entry of `--trunc`.
    #[arg(long)]
    pub primes: Option<u64>,
    /// Largest prime power exponent; overrides the `e` entry of `--trunc`.
    #[arg(long)]
    pub e_max: Option<u32>,
    #[arg(long, default_value = "n=1e7,p=1e4,e=64,tol=1e-10")]
    pub trunc: TruncationSpec,
    /// Quadrature tolerance for Mellin values and `W_∞`.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Largest acceptable residual, on top of the certified budget.
    #[arg(long, default_value_t = 1e-4)]
    pub max_residual: f64,
}
