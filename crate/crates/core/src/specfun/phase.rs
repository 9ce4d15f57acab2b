use num_complex::Complex;

use crate::error::{domain, Result};
use crate::real::Real;

/// `(-i)^ν` on the principal branch, `exp(-iπν/2)`.
///
/// The order is reduced modulo 4 before any trigonometry, so integer orders
/// give exact `±1, ±i`.
pub fn phase_minus_i_pow<T: Real>(nu: T) -> Result<Complex<T>> {
    if !nu.is_finite() {
        return domain("nu", nu.to_f64_lossy(), "phase needs a finite order");
    }
    let four = T::lit(4.0);
    let mut r = nu - four * (nu / four).floor();
    if r >= four {
        r = r - four;
    }
    let quarter_turns = r.floor();
    let frac = r - quarter_turns;
    let (s, c) = (-T::FRAC_PI_2() * frac).sin_cos();
    let base = Complex::new(c, s);
    // multiply by (-i)^k, k in 0..4
    let z = match quarter_turns.to_i32().unwrap_or(0) {
        0 => base,
        1 => Complex::new(base.im, -base.re),
        2 => Complex::new(-base.re, -base.im),
        _ => Complex::new(-base.im, base.re),
    };
    Ok(z)
}
