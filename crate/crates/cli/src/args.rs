use std::f64::consts::PI;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

/// Flux-line scattering in a medium with anomalous pairing: cross-section
/// sweeps, single-point amplitudes and special-function diagnostics.
#[derive(Debug, Parser)]
#[command(name = "fluxscat", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// σ_h and σ_AB as functions of the renormalised flux at a fixed angle.
    #[command(allow_negative_numbers = true)]
    SweepAlpha(SweepAlphaArgs),
    /// σ_h and σ_AB as functions of the scattering angle at a fixed flux.
    #[command(allow_negative_numbers = true)]
    SweepChi(SweepChiArgs),
    /// Finite-distance and asymptotic amplitudes at a single angle.
    #[command(allow_negative_numbers = true)]
    Amplitude(AmplitudeArgs),
    /// J_ν(x) with the routing method, error estimate and oracle value.
    #[command(allow_negative_numbers = true)]
    Bessel(BesselArgs),
    /// Quasiparticle energy, wavenumber and renormalised flux from raw medium parameters.
    #[command(allow_negative_numbers = true)]
    Dispersion(DispersionArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct Common {
    /// Relative tolerance for Bessel evaluations and truncation selection.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Output CSV path; `-` writes to standard output.
    #[arg(long, short, default_value = "-")]
    pub output: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepAlphaArgs {
    /// Barrier strength b/ωħ.
    #[arg(long, default_value_t = 0.2)]
    pub tan2eps: f64,
    /// Wavenumber times screen distance (radians).
    #[arg(long, default_value_t = 100.0)]
    pub kh: f64,
    /// Truncation order M; chosen automatically when omitted.
    #[arg(long)]
    pub order_max: Option<usize>,
    /// Scattering angle (radians).
    #[arg(long, default_value_t = PI / 15.0)]
    pub chi: f64,
    /// First flux on the grid.
    #[arg(long, default_value_t = 0.0)]
    pub alpha_min: f64,
    /// Last flux on the grid.
    #[arg(long, default_value_t = 5.0)]
    pub alpha_max: f64,
    /// Number of grid points (at least 2).
    #[arg(long, default_value_t = 501)]
    pub alpha_steps: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepChiArgs {
    /// Renormalised flux α̃.
    #[arg(long, default_value_t = 3.5)]
    pub alpha_tilde: f64,
    /// Barrier strength b/ωħ.
    #[arg(long, default_value_t = 0.2)]
    pub tan2eps: f64,
    /// Wavenumber times screen distance (radians).
    #[arg(long, default_value_t = 100.0)]
    pub kh: f64,
    /// Truncation order M.
    #[arg(long, default_value_t = 600)]
    pub order_max: usize,
    /// First angle on the grid (radians).
    #[arg(long, default_value_t = -2.9)]
    pub chi_min: f64,
    /// Last angle on the grid (radians).
    #[arg(long, default_value_t = 2.9)]
    pub chi_max: f64,
    /// Number of grid points (at least 2).
    #[arg(long, default_value_t = 581)]
    pub chi_steps: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct AmplitudeArgs {
    /// Renormalised flux α̃.
    #[arg(long, default_value_t = 3.5)]
    pub alpha_tilde: f64,
    /// Barrier strength b/ωħ.
    #[arg(long, default_value_t = 0.2)]
    pub tan2eps: f64,
    /// Wavenumber times screen distance (radians).
    #[arg(long, default_value_t = 100.0)]
    pub kh: f64,
    /// Truncation order M; chosen automatically when omitted.
    #[arg(long)]
    pub order_max: Option<usize>,
    /// Scattering angle (radians).
    #[arg(long, default_value_t = PI / 15.0)]
    pub chi: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
pub struct BesselArgs {
    /// Order ν >= 0.
    #[arg(long)]
    pub nu: f64,
    /// Argument x >= 0.
    #[arg(long)]
    pub x: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Serialize)]
#[command(group(clap::ArgGroup::new("energy").required(true).args(["k", "omega_hbar"])))]
pub struct DispersionArgs {
    /// Normal potential a.
    #[arg(long)]
    pub a: f64,
    /// Anomalous potential b >= 0.
    #[arg(long)]
    pub b: f64,
    /// Wavenumber k; exclusive with --omega-hbar.
    #[arg(long)]
    pub k: Option<f64>,
    /// Beam energy ωħ; exclusive with --k.
    #[arg(long)]
    pub omega_hbar: Option<f64>,
    /// Bare flux quanta α.
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}
