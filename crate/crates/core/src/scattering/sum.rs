//! Neumaier-compensated accumulation for long oscillatory sums.

use std::ops::AddAssign;

use num_complex::Complex;

use crate::real::Real;

/// Running sum with a separate compensation term (Kahan–Babuška–Neumaier).
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: T::zero(),
            carry: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry = self.carry + ((self.sum - t) + x);
        } else {
            self.carry = self.carry + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> T {
        self.sum + self.carry
    }
}

impl<T: Real> AddAssign<T> for CompensatedSum<T> {
    fn add_assign(&mut self, rhs: T) {
        self.add(rhs);
    }
}

/// Compensated sum over real and imaginary parts independently.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexCompensatedSum<T> {
    re: CompensatedSum<T>,
    im: CompensatedSum<T>,
}

impl<T: Real> ComplexCompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            re: CompensatedSum::new(),
            im: CompensatedSum::new(),
        }
    }

    #[inline]
    pub fn add(&mut self, z: Complex<T>) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex<T> {
        Complex::new(self.re.value(), self.im.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_small_terms() {
        let mut s = CompensatedSum::<f64>::new();
        s += 1.0;
        for _ in 0..10_000 {
            s += 1e-16;
        }
        s += -1.0;
        assert!((s.value() - 1e-12).abs() < 1e-24);
    }

    #[test]
    fn large_term_after_small() {
        let mut s = CompensatedSum::<f64>::new();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s += x;
        }
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn complex_parts_independent() {
        let mut s = ComplexCompensatedSum::<f64>::new();
        s.add(Complex::new(1.0, -1e20));
        s.add(Complex::new(1e-17, 3.0));
        s.add(Complex::new(-1.0, 1e20));
        assert_eq!(s.value(), Complex::new(1e-17, 3.0));
    }
}
