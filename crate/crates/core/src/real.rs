//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar the library computes in: `f32` or `f64`.
///
/// Besides the arithmetic traits, each implementation pins the numerical
/// thresholds that depend on the precision of the type.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Default + Send + Sync + 'static
{
    /// Bessel values whose rigorous bound falls below this are flushed to zero.
    const UNDERFLOW_FLOOR: Self;
    /// Default relative tolerance for a single Bessel evaluation.
    const BESSEL_TOL: Self;
    /// Default tolerance for partial-wave sums and truncation selection.
    const SUM_TOL: Self;

    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("literal representable in scalar type")
    }

    /// Converts an integer index into the scalar type.
    #[inline]
    fn from_index(m: i64) -> Self {
        <Self as FromPrimitive>::from_i64(m).expect("index representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const UNDERFLOW_FLOOR: Self = 1e-280;
    const BESSEL_TOL: Self = 1e-12;
    const SUM_TOL: Self = 1e-10;
}

impl Real for f32 {
    const UNDERFLOW_FLOOR: Self = 1e-35;
    const BESSEL_TOL: Self = 5e-4;
    const SUM_TOL: Self = 1e-3;
}
