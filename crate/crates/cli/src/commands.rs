use std::path::Path;
use std::time::Instant;

use anyhow::Result;
use fluxscat_core::model::{derive_params, dispersion_k, omega_from_k, MediumParams};
use fluxscat_core::scattering::{
    amplitude_asymptotic, amplitude_numeric, auto_truncation_order, sweep_angle, sweep_flux, CrossSectionCurve,
    ScatteringSetup,
};
use fluxscat_core::specfun::{bessel_j, bessel_j_oracle};
use fluxscat_core::Error;
use serde::Serialize;

use crate::args::{AmplitudeArgs, BesselArgs, DispersionArgs, SweepAlphaArgs, SweepChiArgs};
use crate::output::{emit, num, opt, Table};

#[derive(Serialize)]
struct Meta<'a, P: Serialize> {
    tool: &'static str,
    version: &'static str,
    subcommand: &'static str,
    parameters: &'a P,
    #[serde(skip_serializing_if = "Option::is_none")]
    setup: Option<ScatteringSetup<f64>>,
    rows: usize,
    threads: usize,
    wall_time_s: f64,
}

/// Shared tail of every subcommand: sidecar metadata and output.
fn finish<P: Serialize>(
    subcommand: &'static str,
    parameters: &P,
    setup: Option<ScatteringSetup<f64>>,
    table: &Table,
    output: &Path,
    started: Instant,
) -> Result<()> {
    let meta = Meta {
        tool: env!("CARGO_BIN_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        subcommand,
        parameters,
        setup,
        rows: table.rows(),
        threads: rayon::current_num_threads(),
        wall_time_s: started.elapsed().as_secs_f64(),
    };
    emit(output, table, &meta)
}

fn curve_table(first: &str, curve: &CrossSectionCurve<f64>) -> Table {
    let mut table = Table::new(&[first, "sigma_h", "sigma_ab"]);
    for ((x, h), ab) in curve.abscissa.iter().zip(&curve.sigma_h).zip(&curve.sigma_ab) {
        table.row(&[num(*x), num(*h), opt(*ab)]);
    }
    table
}

/// Largest automatic truncation order over every flux on the grid.
fn sweep_order(args: &SweepAlphaArgs) -> Result<usize> {
    if args.alpha_steps < 2 {
        return Err(Error::Domain {
            name: "alpha_steps",
            value: args.alpha_steps as f64,
            reason: "a sweep needs at least two points",
        }
        .into());
    }
    let last = (args.alpha_steps - 1) as f64;
    let mut m = 0;
    for i in 0..args.alpha_steps {
        let alpha = args.alpha_min + (args.alpha_max - args.alpha_min) * (i as f64 / last);
        m = m.max(auto_truncation_order(args.kh, alpha, args.tan2eps, args.common.tol)?);
    }
    Ok(m)
}

pub fn sweep_alpha(args: &SweepAlphaArgs) -> Result<()> {
    let started = Instant::now();
    let order_max = match args.order_max {
        Some(m) => m,
        None => sweep_order(args)?,
    };
    let template = ScatteringSetup::new(args.alpha_min, args.tan2eps, args.kh, order_max, args.common.tol)?;
    log::info!("flux sweep with M = {order_max}");
    let curve = sweep_flux(&template, args.alpha_min, args.alpha_max, args.alpha_steps, args.chi)?;
    let table = curve_table("alpha_tilde", &curve);
    finish(
        "sweep-alpha",
        args,
        Some(template),
        &table,
        &args.common.output,
        started,
    )
}

pub fn sweep_chi(args: &SweepChiArgs) -> Result<()> {
    let started = Instant::now();
    let setup = ScatteringSetup::new(args.alpha_tilde, args.tan2eps, args.kh, args.order_max, args.common.tol)?;
    // the screen never sees the forward direction itself
    for chi in [args.chi_min, args.chi_max] {
        if chi.abs() >= std::f64::consts::PI {
            return Err(Error::Domain {
                name: "chi",
                value: chi,
                reason: "angle range must lie strictly inside (-pi, pi)",
            }
            .into());
        }
    }
    let curve = sweep_angle(&setup, args.chi_min, args.chi_max, args.chi_steps)?;
    let table = curve_table("chi_rad", &curve);
    finish("sweep-chi", args, Some(setup), &table, &args.common.output, started)
}

pub fn amplitude(args: &AmplitudeArgs) -> Result<()> {
    let started = Instant::now();
    let tol = args.common.tol;
    let setup = match args.order_max {
        Some(m) => ScatteringSetup::new(args.alpha_tilde, args.tan2eps, args.kh, m, tol)?,
        None => ScatteringSetup::with_auto_order(args.alpha_tilde, args.tan2eps, args.kh, tol)?,
    };
    let fh = amplitude_numeric(&setup, args.chi)?;
    let fasym = match amplitude_asymptotic(&setup, args.chi) {
        Ok(f) => Some(f),
        Err(Error::Divergence { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let mut table = Table::new(&["chi_rad", "re_fh", "im_fh", "sigma_h", "re_fasym", "im_fasym"]);
    table.row(&[
        num(args.chi),
        num(fh.re),
        num(fh.im),
        num(fh.norm_sqr()),
        opt(fasym.map(|f| f.re)),
        opt(fasym.map(|f| f.im)),
    ]);
    finish("amplitude", args, Some(setup), &table, &args.common.output, started)
}

pub fn bessel(args: &BesselArgs) -> Result<()> {
    let started = Instant::now();
    let eval = bessel_j(args.nu, args.x, args.common.tol)?;
    let oracle = match bessel_j_oracle(args.nu, args.x) {
        Ok(v) => Some(v),
        Err(e) => {
            log::warn!("no oracle value: {e}");
            None
        }
    };
    let mut table = Table::new(&["nu", "x", "value", "method", "abs_error_estimate", "oracle_value"]);
    table.row(&[
        num(args.nu),
        num(args.x),
        num(eval.value),
        eval.method.to_string(),
        num(eval.abs_error_estimate),
        opt(oracle),
    ]);
    finish("bessel", args, None, &table, &args.common.output, started)
}

pub fn dispersion(args: &DispersionArgs) -> Result<()> {
    let started = Instant::now();
    let omega_hbar = match (args.k, args.omega_hbar) {
        (Some(k), _) => omega_from_k(k, args.a, args.b)?,
        (None, Some(w)) => w,
        (None, None) => unreachable!("clap requires one of --k and --omega-hbar"),
    };
    let medium = MediumParams::new(args.a, args.b, omega_hbar)?;
    let derived = derive_params(&medium, args.alpha)?;
    let k = match args.k {
        Some(k) => k,
        None => dispersion_k(derived.lambda, args.a)?,
    };
    let mut table = Table::new(&["lambda", "omega_hbar", "k", "tan2eps", "alpha_tilde"]);
    table.row(&[
        num(derived.lambda),
        num(omega_hbar),
        num(k),
        num(derived.tan2eps),
        num(derived.alpha_tilde),
    ]);
    finish("dispersion", args, None, &table, &args.common.output, started)
}
