//! `fluxscat`: command-line front end for flux-line scattering sweeps.
//!
//! Exit codes: 0 success, 2 invalid flags or parameters, 3 numerical accuracy
//! failure, 1 anything else (I/O). `FLUXSCAT_THREADS` caps the worker pool.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use fluxscat_core::Error;

use args::{Cli, Command};

const EXIT_USAGE: u8 = 2;
const EXIT_ACCURACY: u8 = 3;

/// Configuration problems found outside the numerical core.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("FLUXSCAT_THREADS") else {
        return Ok(());
    };
    let threads = match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => n,
        _ => bail!(UsageError(format!(
            "FLUXSCAT_THREADS must be a positive integer, got {raw:?}"
        ))),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring the worker pool")?;
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    configure_threads()?;
    match &cli.command {
        Command::SweepAlpha(a) => commands::sweep_alpha(a),
        Command::SweepChi(a) => commands::sweep_chi(a),
        Command::Amplitude(a) => commands::amplitude(a),
        Command::Bessel(a) => commands::bessel(a),
        Command::Dispersion(a) => commands::dispersion(a),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return EXIT_USAGE;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Accuracy { .. }) => EXIT_ACCURACY,
        Some(Error::Domain { .. } | Error::Divergence { .. }) => EXIT_USAGE,
        None => 1,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("fluxscat: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
