//! Scattering of Bogolyubov quasiparticles on an impenetrable magnetic flux
//! line.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`] — `ln Γ`, `J_ν(x)` for real order, and `(-i)^ν`;
//! * [`model`] — Bogolyubov rotation, renormalised flux, dispersion and the
//!   partial-wave index `ν(m)`;
//! * [`scattering`] — partial-wave sums, scattering amplitudes, cross
//!   sections and parameter sweeps.
//!
//! All numerical code is generic over [`Real`] (`f32` or `f64`); the
//! `*F64` aliases below name the double-precision instantiations used by the
//! command-line tool.

pub mod error;
pub mod model;
pub mod real;
pub mod scattering;
pub mod specfun;

pub use error::{Error, Result};
pub use real::Real;

pub type BesselEvalF64 = specfun::BesselEval<f64>;
pub type MediumParamsF64 = model::MediumParams<f64>;
pub type DerivedParamsF64 = model::DerivedParams<f64>;
pub type ScatteringSetupF64 = scattering::ScatteringSetup<f64>;
pub type ComplexAmplitudeF64 = scattering::ComplexAmplitude<f64>;
pub type CrossSectionCurveF64 = scattering::CrossSectionCurve<f64>;
