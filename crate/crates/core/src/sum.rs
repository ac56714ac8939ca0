//! Neumaier compensated summation with a running record of the largest
//! term magnitude, used to estimate cancellation in alternating series.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
    max_abs: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, term: f64) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.comp += (self.sum - t) + term;
        } else {
            self.comp += (term - t) + self.sum;
        }
        self.sum = t;
        self.max_abs = self.max_abs.max(term.abs());
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Largest magnitude among the terms added so far.
    #[inline]
    pub fn max_term(&self) -> f64 {
        self.max_abs
    }

    /// Rough relative rounding error of `value()`: the largest term times a
    /// few ulps, over the result.
    pub fn relative_error(&self) -> f64 {
        let v = self.value().abs();
        if v == 0.0 {
            if self.max_abs == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            4.0 * f64::EPSILON * self.max_abs / v
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexCompensatedSum {
    re: CompensatedSum,
    im: CompensatedSum,
    max_abs: f64,
}

impl ComplexCompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, term: Complex64) {
        self.re.add(term.re);
        self.im.add(term.im);
        self.max_abs = self.max_abs.max(term.norm());
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }

    pub fn relative_error(&self) -> f64 {
        let v = self.value().norm();
        if v == 0.0 {
            if self.max_abs == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            4.0 * f64::EPSILON * self.max_abs / v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_lost_low_order_bits() {
        let mut s = CompensatedSum::new();
        s.add(1.0);
        s.add(1e-16);
        s.add(-1.0);
        assert_eq!(s.value(), 1e-16);
        assert!(s.relative_error() > 1.0);
    }
}
