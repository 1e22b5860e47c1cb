use std::io::Write;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use ucoef_cli::cli::{Cli, Command};
use ucoef_cli::commands::{self, Outcome, Status, VerifyArgs};

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let json = cli.wants_json();
    match &cli.command {
        Command::Roots => commands::roots(json),
        Command::Bounds(p) => commands::bounds(p.alpha, p.lambda, json),
        Command::Regimes(r) => commands::regimes(r.alpha_steps, r.lambda_steps, r.spacing(), json),
        Command::Verify(v) => commands::verify(&VerifyArgs {
            alpha: v.point.alpha,
            lambda: v.point.lambda,
            k: v.k as usize,
            config: v.config(),
            json,
        }),
        Command::Expand(e) => commands::expand(e.point.alpha, e.point.lambda, &e.c, e.order, json),
    }
}

fn run(cli: &Cli) -> Result<Status> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        anyhow::ensure!(n > 0, "--threads must be positive");
        pool = pool.num_threads(n);
    }
    let pool = pool.build().context("building thread pool")?;
    let outcome = pool.install(|| dispatch(cli))?;
    match &cli.out {
        Some(path) => std::fs::write(path, &outcome.document)
            .with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(outcome.document.as_bytes())?,
    }
    Ok(outcome.status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(Status::Precondition as u8)
        }
    }
}
