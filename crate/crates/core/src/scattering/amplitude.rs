use num_complex::Complex;

use super::sum::ComplexCompensatedSum;
use super::{ComplexAmplitude, ScatteringSetup};
use crate::error::{domain, Error, Result};
use crate::model::partial_wave_index;
use crate::real::Real;
use crate::specfun::{bessel_j, phase_minus_i_pow, tail_bound};

fn check_angle<T: Real>(chi: T) -> Result<()> {
    if !chi.is_finite() || chi.abs() > T::PI() {
        return domain("chi", chi.to_f64_lossy(), "angle must lie in [-pi, pi]");
    }
    Ok(())
}

fn check_open_angle<T: Real>(chi: T) -> Result<()> {
    check_angle(chi)?;
    if chi.abs() == T::PI() || (chi * T::lit(0.5)).cos() == T::zero() {
        return Err(Error::Divergence {
            chi: chi.to_f64_lossy(),
        });
    }
    Ok(())
}

#[inline]
fn unit<T: Real>(phase: T) -> Complex<T> {
    let (s, c) = phase.sin_cos();
    Complex::new(c, s)
}

/// Closed-form Aharonov–Bohm amplitude for the incident wave
/// `exp(-i kr cos χ - i α̃ χ)`:
///
/// `F_AB = e^{-3iπ/4} / sqrt(2π) · sin(π{α̃}) · e^{-i(N + 1/2)χ} / cos(χ/2)`
///
/// with `N = floor(α̃)` and `{α̃} = α̃ - N`. Its modulus is the textbook
/// `|sin πα̃| / (sqrt(2π) |cos(χ/2)|)`; the `N`-dependent phase makes it the
/// `b = 0` limit of the partial-wave sum for this incident wave.
pub fn ab_amplitude<T: Real>(alpha_tilde: T, chi: T) -> Result<ComplexAmplitude<T>> {
    if !alpha_tilde.is_finite() {
        return domain("alpha_tilde", alpha_tilde.to_f64_lossy(), "flux must be finite");
    }
    check_open_angle(chi)?;
    let n = alpha_tilde.floor();
    let frac = alpha_tilde - n;
    let prefactor = (T::TAU()).sqrt().recip() * (T::PI() * frac).sin() / (chi * T::lit(0.5)).cos();
    let phase = -T::lit(0.75) * T::PI() - (n + T::lit(0.5)) * chi;
    Ok(unit(phase) * prefactor)
}

/// `σ_AB = sin²(πα̃) / (2π cos²(χ/2))`.
pub fn ab_cross_section<T: Real>(alpha_tilde: T, chi: T) -> Result<T> {
    if !alpha_tilde.is_finite() {
        return domain("alpha_tilde", alpha_tilde.to_f64_lossy(), "flux must be finite");
    }
    check_open_angle(chi)?;
    let frac = alpha_tilde - alpha_tilde.floor();
    let s = (T::PI() * frac).sin();
    let c = (chi * T::lit(0.5)).cos();
    Ok(s * s / (T::TAU() * c * c))
}

/// Partial-wave coefficients `(-i)^{ν(m)} J_{ν(m)}(kr)` for `|m| <= M` at a
/// fixed radius, ready to be summed against `e^{imχ}` for any angle.
///
/// Coefficients are stored in the order `m = 0, 1, -1, 2, -2, ...`, which is
/// also the summation order.
#[derive(Debug, Clone)]
pub struct PartialWaves<T> {
    alpha_tilde: T,
    kr: T,
    order_max: usize,
    coefficients: Vec<(i64, Complex<T>)>,
    bessel_error: T,
}

impl<T: Real> PartialWaves<T> {
    pub fn new(alpha_tilde: T, tan2eps: T, kr: T, order_max: usize, tol: T) -> Result<Self> {
        if !kr.is_finite() || kr <= T::zero() {
            return domain("kr", kr.to_f64_lossy(), "radius must be positive");
        }
        let mut coefficients = Vec::with_capacity(2 * order_max + 1);
        let mut bessel_error = T::zero();
        let mut push = |m: i64| -> Result<()> {
            let nu = partial_wave_index(m, alpha_tilde, tan2eps)?;
            let j = bessel_j(nu, kr, tol)?;
            bessel_error = bessel_error + j.abs_error_estimate;
            coefficients.push((m, phase_minus_i_pow(nu)? * j.value));
            Ok(())
        };
        push(0)?;
        for m in 1..=order_max as i64 {
            push(m)?;
            push(-m)?;
        }

        let edge = order_max as i64;
        let edge_bound = tail_bound(partial_wave_index(edge, alpha_tilde, tan2eps)?, kr)?
            .max(tail_bound(partial_wave_index(-edge, alpha_tilde, tan2eps)?, kr)?);
        if edge_bound > tol {
            log::warn!(
                "truncation at M = {order_max} leaves edge terms up to {edge_bound:e} at kr = {kr} (tol {tol:e})"
            );
        }
        Ok(Self {
            alpha_tilde,
            kr,
            order_max,
            coefficients,
            bessel_error,
        })
    }

    pub fn for_setup(setup: &ScatteringSetup<T>) -> Result<Self> {
        setup.validate()?;
        Self::new(setup.alpha_tilde, setup.tan2eps, setup.kh, setup.order_max, setup.tol)
    }

    pub fn order_max(&self) -> usize {
        self.order_max
    }

    pub fn kr(&self) -> T {
        self.kr
    }

    /// Sum of the Bessel error estimates of all coefficients; bounds the
    /// error of [`Self::sum`] up to summation roundoff.
    pub fn bessel_error(&self) -> T {
        self.bessel_error
    }

    /// `Σ_m (-i)^ν J_ν(kr) e^{imχ}` with compensated accumulation.
    pub fn sum(&self, chi: T) -> Complex<T> {
        let mut acc = ComplexCompensatedSum::new();
        for &(m, c) in &self.coefficients {
            acc.add(c * unit(T::from_index(m) * chi));
        }
        acc.value()
    }

    /// Incident wave `exp(-i kr cos χ - i α̃ χ)` at this radius.
    pub fn incident(&self, chi: T) -> Complex<T> {
        unit(-self.kr * chi.cos()) * unit(-self.alpha_tilde * chi)
    }

    /// `F_h = sqrt(kr) e^{-i kr} [Σ_m (-i)^ν J_ν(kr) e^{imχ} - ψ_inc]`.
    pub fn scattering_amplitude(&self, chi: T) -> Result<ComplexAmplitude<T>> {
        check_angle(chi)?;
        let diff = self.sum(chi) - self.incident(chi);
        Ok(unit(-self.kr) * diff * self.kr.sqrt())
    }
}

/// Finite partial-wave amplitude `F_h(χ)` at the screen distance `kh`.
pub fn amplitude_numeric<T: Real>(setup: &ScatteringSetup<T>, chi: T) -> Result<ComplexAmplitude<T>> {
    check_angle(chi)?;
    PartialWaves::for_setup(setup)?.scattering_amplitude(chi)
}

/// `σ_h = |F_h|²`.
pub fn cross_section_numeric<T: Real>(setup: &ScatteringSetup<T>, chi: T) -> Result<T> {
    Ok(amplitude_numeric(setup, chi)?.norm_sqr())
}

/// Far-field amplitude built from the exact partial-wave phase shifts:
///
/// `F = F_AB - sqrt(2i/π) Σ_m sin{(π/2)(ν - |m+α̃|)} exp{imχ - i(π/2)(ν + |m+α̃|)}`
///
/// truncated at `|m| <= M`. Diagnostic only; `kh` does not enter.
pub fn amplitude_asymptotic<T: Real>(setup: &ScatteringSetup<T>, chi: T) -> Result<ComplexAmplitude<T>> {
    setup.validate()?;
    let ab = ab_amplitude(setup.alpha_tilde, chi)?;
    let a = setup.alpha_tilde;
    let g = a * setup.tan2eps;
    let g2 = g * g;
    let half_pi = T::FRAC_PI_2();
    let mut acc = ComplexCompensatedSum::new();
    let mut add = |m: i64| -> Result<()> {
        let bare = (T::from_index(m) + a).abs();
        let nu = partial_wave_index(m, a, setup.tan2eps)?;
        // ν - |m+α̃| without cancellation
        let shift = if g2 == T::zero() { T::zero() } else { g2 / (nu + bare) };
        if shift != T::zero() {
            let w = (half_pi * shift).sin();
            acc.add(phase_minus_i_pow(nu + bare)? * unit(T::from_index(m) * chi) * w);
        }
        Ok(())
    };
    add(0)?;
    for m in 1..=setup.order_max as i64 {
        add(m)?;
        add(-m)?;
    }
    // sqrt(2i/π) = sqrt(2/π) e^{iπ/4}
    let pref = unit(T::FRAC_PI_4()) * (T::lit(2.0) / T::PI()).sqrt();
    Ok(ab - pref * acc.value())
}

/// `Σ_{|m|<=M} (-i)^ν J_ν(kr) e^{imχ}`, the total wave function at `(kr, χ)`
/// without its time factor.
pub fn total_wavefunction<T: Real>(setup: &ScatteringSetup<T>, kr: T, chi: T) -> Result<Complex<T>> {
    setup.validate()?;
    check_angle(chi)?;
    Ok(PartialWaves::new(setup.alpha_tilde, setup.tan2eps, kr, setup.order_max, setup.tol)?.sum(chi))
}
