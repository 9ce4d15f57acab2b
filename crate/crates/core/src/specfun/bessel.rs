//! Bessel functions of the first kind for real order `ν >= 0` and real
//! argument `x >= 0`.
//!
//! [`bessel_j`] picks one of four evaluation routes:
//!
//! * ascending power series, for `(x/2)^2 <= 4(ν+1)`, accepted only when its
//!   measured cancellation leaves the requested accuracy;
//! * Hankel's large-argument expansion, for `x >= 25`, `x >= 2ν`, accepted
//!   when the truncated expansion converges to the tolerance;
//! * the steepest-descent contour integral for `ν > x`, whose integrand is
//!   positive, so exponentially small values keep full relative accuracy;
//! * Schläfli's integral for `ν <= x`, where the integrand is O(1) and so is
//!   the result.
//!
//! [`bessel_j_oracle`] evaluates Schläfli's integral with an independent
//! adaptive Gauss–Legendre rule and is only meant for verification.

use serde::{Deserialize, Serialize};

use super::gamma::log_gamma_unchecked;
use super::quadrature::{gauss_legendre_nodes, integrate_kronrod, integrate_legendre, AdaptiveOptions};
use crate::error::{domain, Error, Result};
use crate::real::Real;

pub const MAX_ORDER: f64 = 5000.0;
pub const MAX_ARGUMENT: f64 = 10_000.0;
pub const ORACLE_MAX_ORDER: f64 = 2000.0;
pub const ORACLE_MAX_ARGUMENT: f64 = 1000.0;

/// Series is attempted while `(x/2)^2 <= SERIES_REACH * (ν + 1)`.
const SERIES_REACH: f64 = 4.0;
const HANKEL_MIN_ARGUMENT: f64 = 25.0;
const HANKEL_MAX_TERMS: usize = 400;
const SERIES_MAX_TERMS: usize = 600;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BesselMethod {
    Series,
    Asymptotic,
    Quadrature,
}

impl BesselMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            BesselMethod::Series => "series",
            BesselMethod::Asymptotic => "asymptotic",
            BesselMethod::Quadrature => "quadrature",
        }
    }
}

impl std::fmt::Display for BesselMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A value of `J_ν(x)` together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselEval<T> {
    pub value: T,
    pub method: BesselMethod,
    pub abs_error_estimate: T,
}

impl<T: Real> BesselEval<T> {
    fn new(value: T, method: BesselMethod, abs_error_estimate: T) -> Self {
        Self {
            value,
            method,
            abs_error_estimate: abs_error_estimate.abs(),
        }
    }
}

fn check_domain<T: Real>(nu: T, x: T, max_nu: f64, max_x: f64) -> Result<()> {
    if !nu.is_finite() || nu < T::zero() || nu > T::lit(max_nu) {
        return domain("nu", nu.to_f64_lossy(), "order must lie in [0, max order]");
    }
    if !x.is_finite() || x < T::zero() || x > T::lit(max_x) {
        return domain("x", x.to_f64_lossy(), "argument must lie in [0, max argument]");
    }
    Ok(())
}

/// `ln((x/2)^ν / Γ(ν+1))` for `x > 0`.
fn log_tail_bound<T: Real>(nu: T, x: T) -> T {
    let lead = if nu == T::zero() {
        T::zero()
    } else {
        nu * (x * T::lit(0.5)).ln()
    };
    lead - log_gamma_unchecked(nu + T::one())
}

/// Rigorous bound `(x/2)^ν / Γ(ν+1) >= |J_ν(x)|`, evaluated in log space.
pub fn tail_bound<T: Real>(nu: T, x: T) -> Result<T> {
    check_domain(nu, x, MAX_ORDER, MAX_ARGUMENT)?;
    if x == T::zero() {
        return Ok(if nu == T::zero() { T::one() } else { T::zero() });
    }
    Ok(log_tail_bound(nu, x).exp())
}

/// `J_ν(x)` to relative tolerance `tol`.
///
/// Values whose bound lies below [`Real::UNDERFLOW_FLOOR`] come back as an
/// exact zero. Near a zero of `J_ν` the relative target is unattainable; the
/// result then carries an absolute error at the roundoff level of the route
/// used, reported in `abs_error_estimate`.
pub fn bessel_j<T: Real>(nu: T, x: T, tol: T) -> Result<BesselEval<T>> {
    check_domain(nu, x, MAX_ORDER, MAX_ARGUMENT)?;
    if !tol.is_finite() || tol <= T::zero() {
        return domain("tol", tol.to_f64_lossy(), "tolerance must be positive");
    }
    if x == T::zero() {
        let v = if nu == T::zero() { T::one() } else { T::zero() };
        return Ok(BesselEval::new(v, BesselMethod::Series, T::zero()));
    }
    let log_bound = log_tail_bound(nu, x);
    if log_bound < T::UNDERFLOW_FLOOR.ln() {
        return Ok(BesselEval::new(T::zero(), BesselMethod::Series, log_bound.exp()));
    }

    let half_x = x * T::lit(0.5);
    if half_x * half_x <= T::lit(SERIES_REACH) * (nu + T::one()) {
        if let Some(eval) = series(nu, x, log_bound, tol) {
            return Ok(eval);
        }
    }
    if x >= T::lit(HANKEL_MIN_ARGUMENT) && x >= nu + nu {
        if let Some(eval) = hankel(nu, x, tol) {
            return Ok(eval);
        }
    }
    if nu > x {
        steepest_descent(nu, x, tol)
    } else {
        schlafli(nu, x, tol)
    }
}

/// Power series `Σ (-1)^j (x/2)^{2j+ν} / (j! Γ(ν+j+1))`, scaled by its first
/// term. `None` when cancellation or truncation misses `tol`.
fn series<T: Real>(nu: T, x: T, log_t0: T, tol: T) -> Option<BesselEval<T>> {
    let eps = T::epsilon();
    let q = -(x * x) * T::lit(0.25);
    let mut sum = T::one();
    let mut abs_sum = T::one();
    let mut term = T::one();
    let mut j = 0usize;
    loop {
        j += 1;
        let jf = T::from_index(j as i64);
        term = term * q / (jf * (nu + jf));
        sum = sum + term;
        abs_sum = abs_sum + term.abs();
        // Terms shrink monotonically once j(ν+j) > (x/2)^2; after that the
        // alternating tail is bounded by the next term.
        let shrinking = jf * (nu + jf) > -q;
        if shrinking && term.abs() <= eps * sum.abs() {
            break;
        }
        if j >= SERIES_MAX_TERMS {
            return None;
        }
    }
    if sum == T::zero() {
        return None;
    }
    let magnitude = (log_t0 + sum.abs().ln()).exp();
    let value = if sum < T::zero() { -magnitude } else { magnitude };
    let t0 = log_t0.exp();
    // roundoff in the running sum + truncation + error of the log-space prefactor
    let rounding = T::from_index(j as i64 + 2) * eps * abs_sum * t0;
    let prefactor =
        magnitude * eps * (log_t0.abs() + T::lit(2.0) * log_gamma_unchecked(nu + T::one()).abs() + T::one());
    let err = rounding + term.abs() * t0 + prefactor;
    if err <= tol * magnitude {
        Some(BesselEval::new(value, BesselMethod::Series, err))
    } else {
        None
    }
}

/// Hankel's expansion `J = sqrt(2/(πx)) (P cos ω - Q sin ω)`,
/// `ω = x - (ν/2 + 1/4)π`.
fn hankel<T: Real>(nu: T, x: T, tol: T) -> Option<BesselEval<T>> {
    let eps = T::epsilon();
    let mu = T::lit(4.0) * nu * nu;
    let eight_x = T::lit(8.0) * x;
    let mut p = T::one();
    let mut q = T::zero();
    let mut term = T::one();
    let mut max_term = T::one();
    let mut prev = T::one();
    let mut truncation = T::zero();
    let mut converged = false;
    for k in 1..=HANKEL_MAX_TERMS {
        let kf = T::from_index(k as i64);
        let odd = T::from_index(2 * k as i64 - 1);
        term = term * (mu - odd * odd) / (kf * eight_x);
        let a = term.abs();
        if a == T::zero() {
            // half-integer order: the expansion terminates
            converged = true;
            break;
        }
        // Past k > ν - 1/2 the remainder is bounded by the first omitted term;
        // growth there means the expansion has reached its best accuracy.
        if kf > nu && a > prev {
            truncation = a;
            break;
        }
        let sign = if (k / 2) % 2 == 0 { T::one() } else { -T::one() };
        if k % 2 == 0 {
            p = p + sign * term;
        } else {
            q = q + sign * term;
        }
        max_term = max_term.max(a);
        prev = a;
        if a <= eps * T::lit(0.25) {
            truncation = a;
            converged = true;
            break;
        }
    }
    if !converged && truncation == T::zero() {
        // ran out of terms
        truncation = term.abs();
    }
    let envelope_err = truncation + T::lit(4.0) * eps * max_term;
    if envelope_err > tol {
        return None;
    }

    // ω = x - π(ν/2 + 1/4), expanded so that x is never shifted in floating point.
    let (sc, cc) = sin_cos_pi(nu * T::lit(0.5) + T::lit(0.25));
    let (sx, cx) = x.sin_cos();
    let cos_w = cx * cc + sx * sc;
    let sin_w = sx * cc - cx * sc;
    let scale = (T::lit(2.0) / (T::PI() * x)).sqrt();
    let value = scale * (p * cos_w - q * sin_w);
    let err = scale * (envelope_err * T::lit(2.0) + T::lit(4.0) * eps * (p.abs() + q.abs()));
    Some(BesselEval::new(value, BesselMethod::Asymptotic, err))
}

/// `J_ν(x) = (1/π) ∫_0^π exp(φ(θ)) dθ` along the steepest-descent path,
/// valid for `ν > x > 0`. On the path `cosh t = νθ / (x sin θ)` and
/// `φ = x sinh t cos θ - ν t`.
fn steepest_descent<T: Real>(nu: T, x: T, tol: T) -> Result<BesselEval<T>> {
    let eps = T::epsilon();
    let delta = (nu - x) / x;
    let alpha = (delta + (delta * (delta + T::lit(2.0))).sqrt()).ln_1p();
    let phi0 = ((nu - x) * (nu + x)).sqrt() - nu * alpha;

    let phi = |theta: T| -> T {
        let s = if theta == T::zero() {
            nu
        } else {
            nu * theta / theta.sin()
        };
        let ratio = s / x;
        let t = if ratio <= T::one() { T::zero() } else { ratio.acosh() };
        let x_sinh_t = ((s - x) * (s + x)).max(T::zero()).sqrt();
        theta.cos() * x_sinh_t - nu * t
    };
    let integrand = |theta: T| {
        let v = (phi(theta) - phi0).exp();
        if v.is_nan() {
            T::zero()
        } else {
            v
        }
    };
    let opts = AdaptiveOptions::new(T::zero(), tol * T::lit(0.25)).panels(16);
    let quad = integrate_kronrod(integrand, T::zero(), T::PI(), &opts);
    let log_value = phi0 + (quad.value / T::PI()).ln();
    let value = if log_value < T::UNDERFLOW_FLOOR.ln() {
        T::zero()
    } else {
        log_value.exp()
    };
    let exponent_err = eps * (phi0.abs() + nu * alpha + T::lit(8.0));
    let err = value * (quad.abs_error / quad.value + exponent_err);
    if !(err <= tol * value || (value == T::zero() && quad.converged)) {
        return Err(Error::Accuracy {
            what: "Bessel steepest-descent quadrature",
            best_estimate: value.to_f64_lossy(),
            error_estimate: err.to_f64_lossy(),
        });
    }
    Ok(BesselEval::new(value, BesselMethod::Quadrature, err))
}

/// `(sin πr, cos πr)` with `r` reduced modulo 2 first; multiples of 1/2 are exact.
fn sin_cos_pi<T: Real>(r: T) -> (T, T) {
    let two = T::lit(2.0);
    let r = r - two * (r / two).floor();
    let twice = r * two;
    if twice == twice.floor() {
        let (z, o) = (T::zero(), T::one());
        return match twice.to_i32().unwrap_or(0) {
            0 => (z, o),
            1 => (o, z),
            2 => (z, -o),
            _ => (-o, z),
        };
    }
    (T::PI() * r).sin_cos()
}

fn sin_pi<T: Real>(nu: T) -> T {
    sin_cos_pi(nu).0
}

/// Upper limit of the exponential Schläfli integral: beyond it the integrand
/// is below `e^{-100}`.
fn schlafli_tail_limit<T: Real>(nu: T, x: T) -> T {
    let hundred = T::lit(100.0);
    let by_order = if nu > T::zero() { hundred / nu } else { T::infinity() };
    let by_arg = (hundred / x).asinh();
    by_order.min(by_arg)
}

fn schlafli_panels<T: Real>(nu: T, x: T) -> usize {
    ((nu + x) * T::lit(0.5)).ceil().to_usize().unwrap_or(1) + 2
}

/// Absolute error, in units of machine epsilon, at which the Schläfli
/// integrals are considered converged regardless of the relative target.
const SCHLAFLI_ROUNDOFF: f64 = 1000.0;

/// Schläfli's integral with the Gauss–Kronrod driver, used for `ν <= x`.
///
/// The two integrals are first driven to `tol` relative to their own size.
/// When they cancel (near a zero of `J_ν`) a second pass tightens both
/// targets relative to the difference, down to the roundoff floor.
fn schlafli<T: Real>(nu: T, x: T, tol: T) -> Result<BesselEval<T>> {
    let pi = T::PI();
    let abs_tol = T::lit(0.5 * SCHLAFLI_ROUNDOFF) * T::epsilon();
    let s = sin_pi(nu);
    let pass = |rel_tol: T| {
        let oscillatory = integrate_kronrod(
            |th: T| (nu * th - x * th.sin()).cos(),
            T::zero(),
            pi,
            &AdaptiveOptions::new(abs_tol, rel_tol).panels(schlafli_panels(nu, x)),
        );
        let tail = (s != T::zero()).then(|| {
            integrate_kronrod(
                |t: T| (-nu * t - x * t.sinh()).exp(),
                T::zero(),
                schlafli_tail_limit(nu, x),
                &AdaptiveOptions::new(abs_tol, rel_tol).panels(4),
            )
        });
        let (tail_value, tail_err, tail_l1, tail_ok) = tail.map_or((T::zero(), T::zero(), T::zero(), true), |q| {
            (q.value * s, q.abs_error * s.abs(), q.l1_norm * s.abs(), q.converged)
        });
        let value = (oscillatory.value - tail_value) / pi;
        let err = (oscillatory.abs_error + tail_err) / pi;
        let scale = oscillatory.value.abs().max(tail_value.abs()) / pi;
        let floor = (T::lit(SCHLAFLI_ROUNDOFF) * T::epsilon())
            .max(T::lit(200.0) * T::epsilon() * (oscillatory.l1_norm + tail_l1))
            / pi;
        (value, err, scale, floor, oscillatory.converged && tail_ok)
    };

    let rel_tol = tol * T::lit(0.25);
    let mut result = pass(rel_tol);
    let (value, _, scale, _, _) = result;
    if scale > T::zero() && value.abs() < scale {
        result = pass(rel_tol * value.abs() / scale);
    }
    let (value, err, _, floor, converged) = result;
    if !converged || err > (tol * value.abs()).max(floor) {
        return Err(Error::Accuracy {
            what: "Bessel Schläfli quadrature",
            best_estimate: value.to_f64_lossy(),
            error_estimate: err.to_f64_lossy(),
        });
    }
    Ok(BesselEval::new(value, BesselMethod::Quadrature, err))
}

const ORACLE_NODES: usize = 20;
const ORACLE_ABS_TOL: f64 = 2e-13;
const ORACLE_REL_TOL: f64 = 1e-11;

/// Independent reference value of `J_ν(x)` from Schläfli's integral
///
/// `J_ν(x) = (1/π)∫_0^π cos(νθ - x sin θ) dθ - (sin νπ/π)∫_0^∞ e^{-νt - x sinh t} dt`,
///
/// integrated with adaptive Gauss–Legendre panels. Shares no code with the
/// series, asymptotic or Gauss–Kronrod routes of [`bessel_j`].
pub fn bessel_j_oracle<T: Real>(nu: T, x: T) -> Result<T> {
    check_domain(nu, x, ORACLE_MAX_ORDER, ORACLE_MAX_ARGUMENT)?;
    if x == T::zero() {
        return Ok(if nu == T::zero() { T::one() } else { T::zero() });
    }
    let nodes = gauss_legendre_nodes::<T>(ORACLE_NODES);
    let pi = T::PI();
    let abs_tol = T::lit(ORACLE_ABS_TOL) * pi * T::lit(0.5);
    let rel_tol = T::lit(ORACLE_REL_TOL) * T::lit(0.5);
    let opts = AdaptiveOptions::new(abs_tol, rel_tol).panels(schlafli_panels(nu, x));
    let first = integrate_legendre(|th: T| (nu * th - x * th.sin()).cos(), T::zero(), pi, &nodes, &opts);
    let s = sin_pi(nu);
    let (second, second_err, second_ok) = if s == T::zero() {
        (T::zero(), T::zero(), true)
    } else {
        let q = integrate_legendre(
            |t: T| (-nu * t - x * t.sinh()).exp(),
            T::zero(),
            schlafli_tail_limit(nu, x),
            &nodes,
            &AdaptiveOptions::new(abs_tol, rel_tol).panels(4),
        );
        (q.value * s, q.abs_error * s.abs(), q.converged)
    };
    let value = (first.value - second) / pi;
    if !(first.converged && second_ok) {
        return Err(Error::Accuracy {
            what: "Bessel oracle quadrature",
            best_estimate: value.to_f64_lossy(),
            error_estimate: ((first.abs_error + second_err) / pi).to_f64_lossy(),
        });
    }
    Ok(value)
}
