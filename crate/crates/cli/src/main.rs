mod args;
mod commands;
mod config;
mod zero_source;

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use args::{CheckCommand, Cli, Command, VerifyCommand};
use commands::{Context, Failure, Outcome};

fn name_and_run(cmd: &Command, ctx: &Context) -> (&'static str, Result<Outcome, Failure>) {
    use Command as C;
    match cmd {
        C::Mellin(a) => ("mellin", commands::mellin(a)),
        C::Zeta(a) => ("zeta", commands::zeta(a)),
        C::Xi(a) => ("xi", commands::xi_value(a)),
        C::Lchi(a) => ("lchi", commands::lchi(a)),
        C::Zeros(a) => ("zeros", commands::zeros(a, ctx)),
        C::Check(CheckCommand::Poisson(a)) | C::CheckPoisson(a) => ("check-poisson", commands::poisson(a)),
        C::Check(CheckCommand::Zspectral(a)) | C::CheckZspectral(a) => ("check-zspectral", commands::zspectral(a)),
        C::Check(CheckCommand::TwistedPoisson(a)) | C::CheckTwistedPoisson(a) => {
            ("check-twisted-poisson", commands::twisted(a))
        }
        C::Check(CheckCommand::TraceLemma(a)) | C::CheckTraceLemma(a) => {
            ("check-trace-lemma", commands::trace_lemma(a))
        }
        C::Check(CheckCommand::PhiIdentity(a)) | C::CheckPhiIdentity(a) => {
            ("check-phi-identity", commands::phi_identity(a))
        }
        C::Verify(VerifyCommand::ExplicitFormula(a)) | C::VerifyExplicitFormula(a) => {
            ("verify-explicit-formula", commands::explicit_formula(a, ctx))
        }
    }
}

fn emit(doc: &Value, report: Option<&Path>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(doc).expect("serializable");
    println!("{text}");
    if let Some(path) = report {
        std::fs::write(path, text + "\n").map_err(|e| format!("cannot write report {}: {e}", path.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let argv = match config::merge(std::env::args_os().collect()) {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    let ctx = Context {
        report: cli.report.as_deref(),
        verbose: cli.verbose,
    };
    let start = Instant::now();
    let (name, result) = name_and_run(&cli.command, &ctx);
    let wall = start.elapsed().as_secs_f64();
    let (doc, code) = match result {
        Ok(Outcome { inputs, outputs, ok }) => {
            let code = if ok { 0 } else { 1 };
            (
                json!({
                    "command": name,
                    "version": env!("CARGO_PKG_VERSION"),
                    "inputs": inputs,
                    "outputs": outputs,
                    "ok": ok,
                    "exit_code": code,
                    "wall_time_s": wall,
                }),
                code,
            )
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            let code = f.exit_code();
            (
                json!({
                    "command": name,
                    "version": env!("CARGO_PKG_VERSION"),
                    "ok": false,
                    "error": f.message(),
                    "exit_code": code,
                    "wall_time_s": wall,
                }),
                code,
            )
        }
    };
    if cli.verbose {
        eprintln!("{name}: {wall:.3} s");
    }
    if let Err(msg) = emit(&doc, ctx.report) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
