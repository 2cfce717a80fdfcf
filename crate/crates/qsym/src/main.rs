//! `qsym`: figure reproduction, solver invocation, verification suites, and
//! the machine-readable discrepancy ledger.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use qsym::cli::{
    cmd_deform_potential, cmd_invariant_solve, cmd_ncplane_check, cmd_partition_solve,
    cmd_phase_demo, cmd_verify, CliError,
};

#[derive(Parser)]
#[command(
    name = "qsym",
    about = "q-deformed quasi-continuous symmetry toolkit",
    long_about = "Deformed-potential curves, invariance solvers, identity \
                  verification, and phase demos. Exit codes: 0 ok, 2 config \
                  error, 3 numeric failure, 4 singular mode, 5 ledger \
                  regression."
)]
struct Args {
    #[command(subcommand)]
    command: Command,

    /// JSON configuration file; defaults are used when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Series truncation order override (commands that expand series).
    #[arg(long, global = true)]
    order: Option<usize>,

    /// Tolerance override (commands that flag convergence or spreads).
    #[arg(long, global = true)]
    tolerance: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Sample deformed Coulomb curves as CSV (columns x, s, re_v, im_v,
    /// converged).
    DeformPotential,
    /// Solve the q-independent invariance problem; emits JSON with f_k,
    /// W(k), E, the q-independence spread, and the commutant residual.
    InvariantSolve,
    /// Run the partition recursion at s = n pi / N; emits JSON including the
    /// comparison against the general recursion.
    PartitionSolve,
    /// Run every identity-verification suite and emit the ledger JSON.
    /// Exits 5 if any verdict regresses from the recorded baseline.
    Verify,
    /// Scan the separable solution variants of the limit equation and emit
    /// the JSON summary (optionally a residual-field CSV).
    NcplaneCheck,
    /// Path-dependent phases of the induced gauge field as CSV.
    PhaseDemo,
}

/// Patch `--order` / `--tolerance` overrides into a JSON config body.
fn apply_overrides(
    config: Option<String>,
    order: Option<usize>,
    tolerance: Option<f64>,
    order_key: Option<&str>,
    tolerance_key: Option<&str>,
) -> Result<Option<String>, CliError> {
    if order.is_none() && tolerance.is_none() {
        return Ok(config);
    }
    let mut value: serde_json::Value = match &config {
        Some(body) => serde_json::from_str(body).map_err(|e| CliError::Config(e.to_string()))?,
        None => serde_json::json!({}),
    };
    let obj = value
        .as_object_mut()
        .ok_or_else(|| CliError::Config("config root must be a JSON object".into()))?;
    if let (Some(order), Some(key)) = (order, order_key) {
        obj.insert(key.to_string(), serde_json::json!(order));
    }
    if let (Some(tol), Some(key)) = (tolerance, tolerance_key) {
        obj.insert(key.to_string(), serde_json::json!(tol));
    }
    Ok(Some(value.to_string()))
}

fn run(args: &Args) -> Result<(), CliError> {
    let config = match &args.config {
        Some(path) => Some(
            fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(|e| CliError::Config(e.to_string()))?,
        ),
        None => None,
    };

    let write_out = |body: &str| -> Result<(), CliError> {
        match &args.out {
            Some(path) => fs::write(path, body).map_err(|e| CliError::Numeric(e.to_string())),
            None => {
                print!("{body}");
                Ok(())
            }
        }
    };

    match args.command {
        Command::DeformPotential => {
            let cfg = apply_overrides(
                config,
                args.order,
                args.tolerance,
                Some("terms"),
                Some("tolerance"),
            )?;
            let (csv, summary) = cmd_deform_potential(cfg.as_deref())?;
            write_out(&csv)?;
            for line in summary {
                eprintln!("{line}");
            }
            Ok(())
        }
        Command::InvariantSolve => {
            let cfg = apply_overrides(
                config,
                args.order,
                args.tolerance,
                Some("order"),
                Some("tolerance"),
            )?;
            let json = cmd_invariant_solve(cfg.as_deref())?;
            write_out(&json)
        }
        Command::PartitionSolve => {
            let cfg = apply_overrides(config, args.order, None, Some("order"), None)?;
            let json = cmd_partition_solve(cfg.as_deref())?;
            write_out(&json)
        }
        Command::Verify => {
            let (json, lines, _) = cmd_verify(config.as_deref(), args.order)?;
            for line in &lines {
                eprintln!("{line}");
            }
            write_out(&json)
        }
        Command::NcplaneCheck => {
            let (json, csv) = cmd_ncplane_check(config.as_deref())?;
            if let Some(csv) = csv {
                // residual field rides alongside the JSON summary
                if let Some(out) = &args.out {
                    let mut path = out.clone();
                    path.set_extension("residuals.csv");
                    fs::write(&path, csv).map_err(|e| CliError::Numeric(e.to_string()))?;
                } else {
                    eprintln!("{csv}");
                }
            }
            write_out(&json)
        }
        Command::PhaseDemo => {
            let csv = cmd_phase_demo(config.as_deref())?;
            write_out(&csv)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("qsym: {}", err.message());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
