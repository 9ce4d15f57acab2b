//! Partial-wave assembly of the scattered wave, scattering amplitudes and
//! differential cross sections.
//!
//! Geometry: the beam arrives from `χ = 0` travelling along `-x`, so the
//! forward direction is `χ = ±π`. The incident wave is
//! `exp(-i kr cos χ - i α̃ χ)` with its branch cut at `χ = π`.

mod amplitude;
mod sum;
mod sweep;

pub use amplitude::{
    ab_amplitude, ab_cross_section, amplitude_asymptotic, amplitude_numeric, cross_section_numeric, total_wavefunction,
    PartialWaves,
};
pub use sum::{CompensatedSum, ComplexCompensatedSum};
pub use sweep::{sweep_angle, sweep_flux, CrossSectionCurve, SweepKind, FORWARD_CONE};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::model::partial_wave_index;
use crate::real::Real;
use crate::specfun::bessel::{MAX_ARGUMENT, MAX_ORDER};
use crate::specfun::gamma::log_gamma_unchecked;

/// A dimensionless complex scattering amplitude `F(χ)`.
pub type ComplexAmplitude<T> = Complex<T>;

/// Smallest screen distance `kh` accepted; the far-field picture needs `kh ≫ 2π`.
pub const MIN_KH: f64 = 20.0;
/// Below this `kh` a warning is logged.
pub const WARN_KH: f64 = 50.0;
/// Extra orders beyond `ceil(kh)` that automatic truncation always keeps.
pub const ORDER_MARGIN: usize = 10;

/// Everything needed to evaluate the finite partial-wave amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringSetup<T> {
    /// Renormalised flux quanta, signed.
    pub alpha_tilde: T,
    /// Barrier strength `tan 2ε = b/ωħ`.
    pub tan2eps: T,
    /// Wavenumber times screen distance (radians).
    pub kh: T,
    /// Truncation order `M`: the sum runs over `|m| <= M`.
    pub order_max: usize,
    /// Tolerance for each Bessel evaluation and for truncation checks.
    pub tol: T,
}

impl<T: Real> ScatteringSetup<T> {
    pub fn new(alpha_tilde: T, tan2eps: T, kh: T, order_max: usize, tol: T) -> Result<Self> {
        let s = Self {
            alpha_tilde,
            tan2eps,
            kh,
            order_max,
            tol,
        };
        s.validate()?;
        if kh < T::lit(WARN_KH) {
            log::warn!("kh = {kh} is small; the far-field amplitude is only qualitative below {WARN_KH}");
        }
        Ok(s)
    }

    /// Setup with `M` chosen by [`auto_truncation_order`].
    pub fn with_auto_order(alpha_tilde: T, tan2eps: T, kh: T, tol: T) -> Result<Self> {
        let m = auto_truncation_order(kh, alpha_tilde, tan2eps, tol)?;
        Self::new(alpha_tilde, tan2eps, kh, m, tol)
    }

    /// Same parameters with a different flux.
    pub fn with_alpha_tilde(&self, alpha_tilde: T) -> Result<Self> {
        let s = Self { alpha_tilde, ..*self };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.alpha_tilde.is_finite() {
            return domain("alpha_tilde", self.alpha_tilde.to_f64_lossy(), "flux must be finite");
        }
        if !self.tan2eps.is_finite() || self.tan2eps < T::zero() {
            return domain(
                "tan2eps",
                self.tan2eps.to_f64_lossy(),
                "barrier strength must be finite and >= 0",
            );
        }
        if !self.kh.is_finite() || self.kh < T::lit(MIN_KH) || self.kh > T::lit(MAX_ARGUMENT) {
            return domain("kh", self.kh.to_f64_lossy(), "screen distance must lie in [20, 10000]");
        }
        if self.order_max == 0 {
            return domain("order_max", 0.0, "truncation order must be positive");
        }
        if !self.tol.is_finite() || self.tol <= T::zero() {
            return domain("tol", self.tol.to_f64_lossy(), "tolerance must be positive");
        }
        let m = self.order_max as i64;
        let top = partial_wave_index(m, self.alpha_tilde, self.tan2eps)?.max(partial_wave_index(
            -m,
            self.alpha_tilde,
            self.tan2eps,
        )?);
        if top > T::lit(MAX_ORDER) {
            return domain(
                "order_max",
                self.order_max as f64,
                "largest Bessel order exceeds the supported range",
            );
        }
        Ok(())
    }
}

/// `ln` of `(x/2)^ν / Γ(ν+1)`, the bound on `|J_ν(x)|`.
fn log_bound<T: Real>(nu: T, x: T) -> T {
    nu * (x * T::lit(0.5)).ln() - log_gamma_unchecked(nu + T::one())
}

/// Smallest `M >= ceil(kh) + 10` for which the Bessel bound at both edge
/// orders, times the safety factor `4M`, is below `tol`.
pub fn auto_truncation_order<T: Real>(kh: T, alpha_tilde: T, tan2eps: T, tol: T) -> Result<usize> {
    if !kh.is_finite() || kh <= T::zero() {
        return domain("kh", kh.to_f64_lossy(), "screen distance must be positive");
    }
    if tol.is_nan() || tol <= T::zero() {
        return domain("tol", tol.to_f64_lossy(), "tolerance must be positive");
    }
    let floor = kh.ceil().to_usize().unwrap_or(usize::MAX - ORDER_MARGIN) + ORDER_MARGIN;
    let ln_tol = tol.ln();
    let mut m = floor;
    loop {
        let mi = m as i64;
        let nu = partial_wave_index(mi, alpha_tilde, tan2eps)?.min(partial_wave_index(-mi, alpha_tilde, tan2eps)?);
        // the smaller edge order carries the larger bound
        let lhs = log_bound(nu, kh) + (T::lit(4.0) * T::from_index(mi)).ln();
        if lhs < ln_tol {
            return Ok(m);
        }
        if nu > T::lit(MAX_ORDER) {
            return domain(
                "kh",
                kh.to_f64_lossy(),
                "no truncation order within the supported Bessel range",
            );
        }
        m += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::tail_bound;

    #[test]
    fn figure_order_is_sufficient() {
        let m = auto_truncation_order(100.0, 3.5, 0.2, 1e-10).unwrap();
        assert!(m <= 900, "auto order {m}");
        assert!(m >= 110);
    }

    #[test]
    fn small_kh_order() {
        let m = auto_truncation_order(20.0, 0.5, 0.0, 1e-8).unwrap();
        // Scan of (10)^ν/Γ(ν+1)·4M at ν = M - 1/2 in 40-digit arithmetic:
        // M = 44 gives 1.39e-8, M = 45 gives 3.20e-9.
        assert_eq!(m, 45);
        assert!((40..=60).contains(&m));
        assert!(tail_bound(44.5, 20.0).unwrap() * 4.0 * 45.0 < 1e-8);
        assert!(tail_bound(43.5, 20.0).unwrap() * 4.0 * 44.0 >= 1e-8);
    }

    #[test]
    fn huge_tolerance_hits_floor() {
        assert_eq!(auto_truncation_order(100.0, 3.5, 0.2, f64::INFINITY).unwrap(), 110);
        assert_eq!(auto_truncation_order(20.3, 0.0, 0.0, 1e300).unwrap(), 31);
    }

    #[test]
    fn setup_validation() {
        assert!(ScatteringSetup::new(0.5, 0.2, 19.0, 100, 1e-10).is_err());
        assert!(ScatteringSetup::new(0.5, -0.2, 100.0, 100, 1e-10).is_err());
        assert!(ScatteringSetup::new(0.5, 0.2, 100.0, 0, 1e-10).is_err());
        assert!(ScatteringSetup::new(0.5, 0.2, 100.0, 100, 0.0).is_err());
        assert!(ScatteringSetup::new(f64::NAN, 0.2, 100.0, 100, 1e-10).is_err());
        assert!(ScatteringSetup::new(0.5, 0.2, 100.0, 6000, 1e-10).is_err());
        assert!(ScatteringSetup::new(0.5, 0.2, 30.0, 100, 1e-10).is_ok());
    }
}
