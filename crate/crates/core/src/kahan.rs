//! Compensated (Kahan–Neumaier) summation.
//!
//! All series evaluations accumulate through these types in the stored term
//! order, so results are deterministic across runs and thread counts.

use crate::scalar::Real;
use num_complex::Complex;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy)]
pub struct KahanSum<R: Real> {
    sum: R,
    compensation: R,
}

impl<R: Real> Default for KahanSum<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Real> KahanSum<R> {
    pub fn new() -> Self {
        Self {
            sum: R::zero(),
            compensation: R::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, value: R) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> R {
        self.sum + self.compensation
    }

    pub fn sum_iter<I: IntoIterator<Item = R>>(iter: I) -> R {
        let mut acc = Self::new();
        for v in iter {
            acc.add(v);
        }
        acc.value()
    }
}

/// Componentwise compensated sum for complex terms.
#[derive(Debug, Clone, Copy)]
pub struct ComplexKahanSum<R: Real> {
    re: KahanSum<R>,
    im: KahanSum<R>,
}

impl<R: Real> Default for ComplexKahanSum<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Real> ComplexKahanSum<R> {
    pub fn new() -> Self {
        Self {
            re: KahanSum::new(),
            im: KahanSum::new(),
        }
    }

    #[inline]
    pub fn add(&mut self, value: Complex<R>) {
        self.re.add(value.re);
        self.im.add(value.im);
    }

    #[inline]
    pub fn value(&self) -> Complex<R> {
        Complex::new(self.re.value(), self.im.value())
    }
}
