//! Physical parameters of the medium and the quantities derived from them.
//!
//! Units: `ħ = m₀ = 1`. Energies `a`, `b`, `ωħ`, `Λ` share one unit and the
//! wavenumber `k` is measured in its square root.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::real::Real;

/// Largest azimuthal number accepted by [`partial_wave_index`].
pub const MAX_AZIMUTHAL: i64 = 1_000_000;

/// Normal (`a`) and anomalous (`b`) pairing potentials plus the beam energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MediumParams<T> {
    pub a: T,
    pub b: T,
    pub omega_hbar: T,
}

impl<T: Real> MediumParams<T> {
    pub fn new(a: T, b: T, omega_hbar: T) -> Result<Self> {
        let m = Self { a, b, omega_hbar };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.a.is_finite() {
            return domain("a", self.a.to_f64_lossy(), "normal potential must be finite");
        }
        if !self.b.is_finite() || self.b < T::zero() {
            return domain(
                "b",
                self.b.to_f64_lossy(),
                "anomalous potential must be finite and >= 0",
            );
        }
        if !self.omega_hbar.is_finite() || self.omega_hbar <= T::zero() {
            return domain(
                "omega_hbar",
                self.omega_hbar.to_f64_lossy(),
                "beam energy must be positive",
            );
        }
        Ok(())
    }
}

/// Bogolyubov rotation and the quantities the scattering problem depends on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedParams<T> {
    /// `tan 2ε = b / ωħ`
    pub tan2eps: T,
    /// `cos 2ε = 1 / sqrt(1 + tan² 2ε)`
    pub cos2eps: T,
    /// Renormalised flux `α̃ = α cos 2ε`, signed.
    pub alpha_tilde: T,
    /// Quasiparticle energy `Λ = sqrt(b² + (ωħ)²)`.
    pub lambda: T,
}

impl<T: Real> DerivedParams<T> {
    /// ν(m) for this rotation and flux.
    pub fn partial_wave_index(&self, m: i64) -> Result<T> {
        partial_wave_index(m, self.alpha_tilde, self.tan2eps)
    }
}

/// Bogolyubov angle, renormalised flux and quasiparticle energy for a medium
/// threaded by `alpha` bare flux quanta.
pub fn derive_params<T: Real>(medium: &MediumParams<T>, alpha: T) -> Result<DerivedParams<T>> {
    medium.validate()?;
    if !alpha.is_finite() {
        return domain("alpha", alpha.to_f64_lossy(), "flux must be finite");
    }
    let tan2eps = medium.b / medium.omega_hbar;
    let cos2eps = (T::one() + tan2eps * tan2eps).sqrt().recip();
    Ok(DerivedParams {
        tan2eps,
        cos2eps,
        alpha_tilde: alpha * cos2eps,
        lambda: medium.b.hypot(medium.omega_hbar),
    })
}

/// Bessel order of the `m`-th partial wave,
/// `ν = sqrt((m + α̃)² + α̃² tan² 2ε)`; always the non-negative root.
pub fn partial_wave_index<T: Real>(m: i64, alpha_tilde: T, tan2eps: T) -> Result<T> {
    if m.abs() > MAX_AZIMUTHAL {
        return domain("m", m as f64, "azimuthal number out of range");
    }
    if !alpha_tilde.is_finite() {
        return domain("alpha_tilde", alpha_tilde.to_f64_lossy(), "flux must be finite");
    }
    if !tan2eps.is_finite() || tan2eps < T::zero() {
        return domain(
            "tan2eps",
            tan2eps.to_f64_lossy(),
            "barrier strength must be finite and >= 0",
        );
    }
    Ok((T::from_index(m) + alpha_tilde).hypot(alpha_tilde * tan2eps))
}

/// Wavenumber on the gap spectrum `Λ = a + k²/2`.
pub fn dispersion_k<T: Real>(lambda: T, a: T) -> Result<T> {
    if !lambda.is_finite() || !a.is_finite() {
        return domain("lambda", lambda.to_f64_lossy(), "energies must be finite");
    }
    if lambda <= a {
        return domain(
            "lambda",
            lambda.to_f64_lossy(),
            "no propagating mode at or below the band edge a",
        );
    }
    Ok((T::lit(2.0) * (lambda - a)).sqrt())
}

/// Beam energy `ωħ = sqrt(a² - b² + a k² + k⁴/4)` for wavenumber `k`.
pub fn omega_from_k<T: Real>(k: T, a: T, b: T) -> Result<T> {
    if !k.is_finite() || k < T::zero() {
        return domain("k", k.to_f64_lossy(), "wavenumber must be finite and >= 0");
    }
    if !a.is_finite() || !b.is_finite() {
        return domain("a", a.to_f64_lossy(), "potentials must be finite");
    }
    // a² - b² + a k² + k⁴/4 = (a + k²/2)² - b²
    let lambda = a + k * k * T::lit(0.5);
    // Λ = a + k²/2 must sit on the upper branch Λ >= b; below it the radicand
    // is either negative or belongs to the unphysical root Λ <= -b.
    if lambda < b {
        return domain(
            "k",
            k.to_f64_lossy(),
            "a + k²/2 lies below b: evanescent or unstable regime",
        );
    }
    let radicand = (lambda - b) * (lambda + b);
    Ok(radicand.sqrt())
}

/// Effective potential `V(r) = α̃² tan² 2ε / (2 r²) + a`.
pub fn effective_potential<T: Real>(r: T, derived: &DerivedParams<T>, a: T) -> Result<T> {
    if !r.is_finite() || r <= T::zero() {
        return domain("r", r.to_f64_lossy(), "radius must be positive");
    }
    let g = derived.alpha_tilde * derived.tan2eps;
    Ok(g * g / (T::lit(2.0) * r * r) + a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn derived(alpha_tilde: f64, tan2eps: f64) -> DerivedParams<f64> {
        DerivedParams {
            tan2eps,
            cos2eps: (1.0 + tan2eps * tan2eps).sqrt().recip(),
            alpha_tilde,
            lambda: 1.0,
        }
    }

    #[test]
    fn ab_limit() {
        let d = derive_params(&MediumParams::new(0.0, 0.0, 1.0).unwrap(), 1.0).unwrap();
        assert_eq!(d.tan2eps, 0.0);
        assert_eq!(d.cos2eps, 1.0);
        assert_eq!(d.alpha_tilde, 1.0);
        assert_eq!(d.lambda, 1.0);
    }

    #[test]
    fn figure_parameters() {
        let d = derive_params(&MediumParams::new(0.0, 0.2, 1.0).unwrap(), 1.0).unwrap();
        assert_relative_eq!(d.tan2eps, 0.2);
        // 1/sqrt(1.04) = 0.98058067569092..., sqrt(1.04) = 1.01980390271855...
        assert_relative_eq!(d.cos2eps, 0.980_580_675_690_920_1, max_relative = 1e-15);
        assert_relative_eq!(d.alpha_tilde, 0.980_580_675_690_920_1, max_relative = 1e-15);
        assert_relative_eq!(d.lambda, 1.019_803_902_718_556_9, max_relative = 1e-15);
    }

    #[test]
    fn three_four_five() {
        let d = derive_params(&MediumParams::new(0.7, 3.0, 4.0).unwrap(), 0.0).unwrap();
        assert_eq!(d.tan2eps, 0.75);
        assert_eq!(d.lambda, 5.0);
        assert_eq!(d.alpha_tilde, 0.0);
    }

    #[test]
    fn medium_validation() {
        assert!(MediumParams::new(0.0, 0.2, 0.0).is_err());
        assert!(MediumParams::new(0.0, 0.2, -1.0).is_err());
        assert!(MediumParams::new(0.0, -0.1, 1.0).is_err());
        assert!(MediumParams::new(f64::NAN, 0.1, 1.0).is_err());
        let bad = MediumParams {
            a: 0.0,
            b: 0.0,
            omega_hbar: -2.0,
        };
        assert!(derive_params(&bad, 1.0).is_err());
    }

    #[test]
    fn index_examples() {
        assert_eq!(partial_wave_index(0, 0.0, 0.2).unwrap(), 0.0);
        assert_eq!(partial_wave_index(-7, 2.25, 0.0).unwrap(), 4.75);
        assert_relative_eq!(
            partial_wave_index(-4, 3.5, 0.2).unwrap(),
            0.74_f64.sqrt(),
            max_relative = 1e-15
        );
        // sqrt(0.74) = 0.86023252670426..., 3.5 sqrt(1.04) = 3.56931365951494...
        assert_relative_eq!(
            partial_wave_index(-4, 3.5, 0.2).unwrap(),
            0.860_232_526_704_262_7,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            partial_wave_index(0, 3.5, 0.2).unwrap(),
            3.569_313_659_514_949_4,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            derived(3.5, 0.2).partial_wave_index(0).unwrap(),
            3.5 / derived(3.5, 0.2).cos2eps,
            max_relative = 1e-15
        );
        assert!(partial_wave_index(2_000_000, 0.5, 0.2).is_err());
        assert!(partial_wave_index(1, 0.5, -0.2).is_err());
    }

    #[test]
    fn dispersion_examples() {
        assert_eq!(dispersion_k(0.5, 0.0).unwrap(), 1.0);
        assert!(dispersion_k(0.3, 0.3).is_err());
        assert!(dispersion_k(0.2, 0.3).is_err());
        let lam = 1.04_f64.sqrt();
        assert_relative_eq!(
            dispersion_k(lam, 0.1).unwrap(),
            (2.0 * (lam - 0.1)).sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_from_k(1.0, 0.0, 0.0).unwrap(), 0.5);
        assert_relative_eq!(
            omega_from_k(1.0, 1.0, 1.0).unwrap(),
            1.25_f64.sqrt(),
            max_relative = 1e-15
        );
        // a = b = μ: sqrt(μ k² + k⁴/4)
        let (mu, k) = (0.3_f64, 0.7_f64);
        assert_relative_eq!(
            omega_from_k(k, mu, mu).unwrap(),
            (mu * k * k + k.powi(4) / 4.0).sqrt(),
            max_relative = 1e-14
        );
        assert!(omega_from_k(0.1, 0.0, 1.0).is_err());
        assert!(omega_from_k(-1.0, 0.0, 0.0).is_err());
        // (a + k²/2)² > b² but on the negative root
        assert!(omega_from_k(0.1, -1.0, 0.9).is_err());
    }

    #[test]
    fn potential_examples() {
        assert_eq!(effective_potential(2.0, &derived(0.0, 0.2), 0.4).unwrap(), 0.4);
        assert_eq!(effective_potential(2.0, &derived(1.5, 0.0), 0.4).unwrap(), 0.4);
        assert_relative_eq!(
            effective_potential(1.0, &derived(3.5, 0.2), 0.0).unwrap(),
            0.245,
            max_relative = 1e-15
        );
        assert!(effective_potential(0.0, &derived(3.5, 0.2), 0.0).is_err());
    }

    proptest! {
        #[test]
        fn energy_round_trip(a in -2.0f64..2.0, b in 0.0f64..2.0, k in 0.0f64..5.0) {
            let lambda = a + k * k / 2.0;
            prop_assume!(lambda > b);
            let w = omega_from_k(k, a, b).unwrap();
            prop_assume!(w > 1e-6);
            let lhs = lambda * lambda;
            let rhs = b * b + w * w;
            prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(1e-300));
        }

        #[test]
        fn lambda_matches_energy(b in 0.0f64..10.0, w in 1e-3f64..10.0) {
            let d = derive_params(&MediumParams::new(0.0, b, w).unwrap(), 1.0).unwrap();
            let l2 = b * b + w * w;
            prop_assert!((d.lambda * d.lambda - l2).abs() <= 1e-14 * l2 * 4.0);
        }

        #[test]
        fn conjugation_symmetry(m in -5000i64..5000, at in -20.0f64..20.0, t in 0.0f64..3.0) {
            prop_assert_eq!(partial_wave_index(m, at, t).unwrap(), partial_wave_index(-m, -at, t).unwrap());
        }

        #[test]
        fn barrier_only_increases_index(m in -5000i64..5000, at in -20.0f64..20.0, t in 0.0f64..3.0) {
            let nu = partial_wave_index(m, at, t).unwrap();
            let bare = (m as f64 + at).abs();
            prop_assert!(nu >= bare);
            if at * t == 0.0 {
                prop_assert_eq!(nu, bare);
            }
        }

        #[test]
        fn index_monotone(m1 in -500i64..500, m2 in -500i64..500, at in -20.0f64..20.0, t in 0.0f64..3.0) {
            let d1 = (m1 as f64 + at).abs();
            let d2 = (m2 as f64 + at).abs();
            prop_assume!(d2 > d1 + 1e-6);
            prop_assert!(partial_wave_index(m2, at, t).unwrap() > partial_wave_index(m1, at, t).unwrap());
        }
    }
}
