//! Command-line front end for `resolvitor`.
//!
//! [`run`] parses arguments, runs one command and writes its report. Exit
//! codes: 0 when every check passes, 1 when a check fails or an internal
//! identity breaks, 2 on usage, parse and I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::Parser;

pub mod args;
mod commands;
pub mod report;

use args::{Cli, Command};
use report::Report;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("RESOLVITOR_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("RESOLVITOR_THREADS must be a positive integer, got {v:?}"))?;
    // a pool built earlier in the same process wins
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

fn dispatch(command: &Command) -> resolvitor::Result<Report> {
    match command {
        Command::GenMatrices(a) => commands::gen_matrices(a),
        Command::CheckAnnihilation(a) => commands::check_annihilation(a),
        Command::CheckComplex(a) => commands::check_complex(a),
        Command::CheckMinors(a) => commands::check_minors(a),
        Command::CheckRegseq(a) => commands::check_regseq(a),
        Command::CurveHr(a) => commands::curve_hr(a),
        Command::CurveResolution(a) => commands::curve_resolution(a),
        Command::CurveGap(a) => commands::curve_gap(a),
        Command::CurveOmega(a) => commands::curve_omega(a),
    }
}

/// Runs the CLI on `argv` (program name first), writing the report to `out`
/// and diagnostics to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    if let Err(m) = configure_threads() {
        let _ = writeln!(err, "error: {m}");
        return EXIT_USAGE;
    }
    let start = Instant::now();
    let mut report = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return match e {
                resolvitor::Error::Integrity(_) => EXIT_FAIL,
                _ => EXIT_USAGE,
            };
        }
    };
    if cli.timings {
        let mut t = std::collections::BTreeMap::new();
        t.insert("total".to_string(), start.elapsed().as_secs_f64());
        report.timings = Some(t);
    }
    let json_stdout = cli.json.as_deref().is_some_and(|p| p.as_os_str() == "-");
    let written = if json_stdout {
        out.write_all(report.to_json().as_bytes())
    } else {
        out.write_all(report.to_text().as_bytes())
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: writing report: {e}");
        return EXIT_USAGE;
    }
    if let Some(path) = cli.json.as_deref().filter(|_| !json_stdout) {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            let _ = writeln!(err, "error: --json {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    if report.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// [`run_with`] on standard output and standard error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}
