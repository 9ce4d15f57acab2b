use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::amplitude::{ab_cross_section, PartialWaves};
use super::ScatteringSetup;
use crate::error::{domain, Error, Result};
use crate::real::Real;

/// Half-width of the forward cone around `χ = ±π` where the closed-form
/// AB cross section is reported as missing.
pub const FORWARD_CONE: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    FluxSweep,
    AngleSweep,
}

/// Sampled `σ_h` and `σ_AB` over a uniform grid of flux or angle.
///
/// `sigma_ab` is `None` where the closed form diverges or lies inside the
/// forward cone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossSectionCurve<T> {
    pub abscissa: Vec<T>,
    pub sigma_h: Vec<T>,
    pub sigma_ab: Vec<Option<T>>,
    pub setup: ScatteringSetup<T>,
    pub sweep_kind: SweepKind,
}

impl<T: Real> CrossSectionCurve<T> {
    pub fn len(&self) -> usize {
        self.abscissa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abscissa.is_empty()
    }

    /// Checks the shape invariants: equal lengths, non-negative values,
    /// strictly increasing abscissa.
    pub fn validate(&self) -> Result<()> {
        let n = self.abscissa.len();
        if self.sigma_h.len() != n || self.sigma_ab.len() != n {
            return domain("curve", n as f64, "columns differ in length");
        }
        if self.abscissa.windows(2).any(|w| w[1] <= w[0]) {
            return domain("curve", n as f64, "abscissa is not strictly increasing");
        }
        let bad = |s: &T| s.is_nan() || *s < T::zero();
        if self.sigma_h.iter().any(bad) || self.sigma_ab.iter().flatten().any(bad) {
            return domain("curve", n as f64, "negative or NaN cross section");
        }
        Ok(())
    }
}

fn grid<T: Real>(lo: T, hi: T, steps: usize, name: &'static str) -> Result<Vec<T>> {
    if steps < 2 {
        return domain(name, steps as f64, "a sweep needs at least two points");
    }
    if !lo.is_finite() || !hi.is_finite() || hi <= lo {
        return domain(name, lo.to_f64_lossy(), "sweep range must be finite and increasing");
    }
    let last = T::from_index(steps as i64 - 1);
    let out: Vec<T> = (0..steps)
        .map(|i| {
            if i + 1 == steps {
                hi
            } else {
                lo + (hi - lo) * (T::from_index(i as i64) / last)
            }
        })
        .collect();
    if out.windows(2).any(|w| w[1] <= w[0]) {
        return domain(name, steps as f64, "too many steps for the range at this precision");
    }
    Ok(out)
}

fn ab_or_missing<T: Real>(alpha_tilde: T, chi: T) -> Result<Option<T>> {
    if chi.abs() > T::PI() - T::lit(FORWARD_CONE) {
        return Ok(None);
    }
    match ab_cross_section(alpha_tilde, chi) {
        Ok(s) => Ok(Some(s)),
        Err(Error::Divergence { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `σ_h(α̃)` and `σ_AB(α̃)` on a uniform flux grid at fixed angle.
///
/// Every grid point uses the template's `tan 2ε`, `kh`, `M` and tolerance.
/// Points are evaluated in parallel on the current rayon pool; each point is
/// computed sequentially, so the result does not depend on the pool size.
pub fn sweep_flux<T: Real>(
    template: &ScatteringSetup<T>,
    alpha_min: T,
    alpha_max: T,
    steps: usize,
    chi: T,
) -> Result<CrossSectionCurve<T>> {
    template.validate()?;
    if !chi.is_finite() || chi.abs() > T::PI() {
        return domain("chi", chi.to_f64_lossy(), "angle must lie in [-pi, pi]");
    }
    let abscissa = grid(alpha_min, alpha_max, steps, "alpha")?;
    // validate the widest flux up front so no partial work is wasted
    template.with_alpha_tilde(alpha_min)?;
    template.with_alpha_tilde(alpha_max)?;
    let rows: Vec<(T, Option<T>)> = abscissa
        .par_iter()
        .map(|&a| -> Result<(T, Option<T>)> {
            let setup = template.with_alpha_tilde(a)?;
            let sigma_h = PartialWaves::for_setup(&setup)?.scattering_amplitude(chi)?.norm_sqr();
            Ok((sigma_h, ab_or_missing(a, chi)?))
        })
        .collect::<Result<_>>()?;
    let (sigma_h, sigma_ab) = rows.into_iter().unzip();
    Ok(CrossSectionCurve {
        abscissa,
        sigma_h,
        sigma_ab,
        setup: *template,
        sweep_kind: SweepKind::FluxSweep,
    })
}

/// `σ_h(χ)` and `σ_AB(χ)` on a uniform angle grid within `[-π, π]`.
///
/// The partial-wave coefficients are computed once and reused for every
/// angle.
pub fn sweep_angle<T: Real>(
    setup: &ScatteringSetup<T>,
    chi_min: T,
    chi_max: T,
    steps: usize,
) -> Result<CrossSectionCurve<T>> {
    setup.validate()?;
    let pi = T::PI();
    for chi in [chi_min, chi_max] {
        if chi.abs() > pi {
            return domain("chi", chi.to_f64_lossy(), "angle range must lie within [-pi, pi]");
        }
    }
    let abscissa = grid(chi_min, chi_max, steps, "chi")?;
    let waves = PartialWaves::for_setup(setup)?;
    let rows: Vec<(T, Option<T>)> = abscissa
        .par_iter()
        .map(|&chi| -> Result<(T, Option<T>)> {
            let sigma_h = waves.scattering_amplitude(chi)?.norm_sqr();
            Ok((sigma_h, ab_or_missing(setup.alpha_tilde, chi)?))
        })
        .collect::<Result<_>>()?;
    let (sigma_h, sigma_ab) = rows.into_iter().unzip();
    Ok(CrossSectionCurve {
        abscissa,
        sigma_h,
        sigma_ab,
        setup: *setup,
        sweep_kind: SweepKind::AngleSweep,
    })
}
