//! Special functions: log-gamma, Bessel functions of real order, and the
//! `(-i)^ν` phase factor.

pub mod bessel;
pub mod gamma;
pub mod phase;
pub mod quadrature;

pub use bessel::{bessel_j, bessel_j_oracle, tail_bound, BesselEval, BesselMethod};
pub use gamma::log_gamma;
pub use phase::phase_minus_i_pow;
