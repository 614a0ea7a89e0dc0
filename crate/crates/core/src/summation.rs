//! Compensated accumulation for long complex series.

use num_complex::Complex;

use crate::scalar::Scalar;

/// Neumaier-compensated running sum of complex terms (real and imaginary
/// parts compensated independently).
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum<T> {
    sum: Complex<T>,
    compensation: Complex<T>,
}

impl<T: Scalar> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: Complex::new(T::zero(), T::zero()),
            compensation: Complex::new(T::zero(), T::zero()),
        }
    }

    #[inline]
    pub fn add(&mut self, value: Complex<T>) {
        let (re, c_re) = neumaier_step(self.sum.re, value.re);
        let (im, c_im) = neumaier_step(self.sum.im, value.im);
        self.sum = Complex::new(re, im);
        self.compensation = self.compensation + Complex::new(c_re, c_im);
    }

    #[inline]
    pub fn value(&self) -> Complex<T> {
        self.sum + self.compensation
    }
}

impl<T: Scalar> Extend<Complex<T>> for CompensatedSum<T> {
    fn extend<I: IntoIterator<Item = Complex<T>>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

impl<T: Scalar> FromIterator<Complex<T>> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = Complex<T>>>(iter: I) -> Self {
        let mut acc = Self::new();
        acc.extend(iter);
        acc
    }
}

#[inline]
fn neumaier_step<T: Scalar>(sum: T, value: T) -> (T, T) {
    let t = sum + value;
    let lost = if sum.abs() >= value.abs() {
        (sum - t) + value
    } else {
        (value - t) + sum
    };
    (t, lost)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_small_terms_lost_by_naive_sum() {
        let terms = [
            Complex::new(1.0, -1.0),
            Complex::new(1e100, 1e100),
            Complex::new(1.0, 1.0),
            Complex::new(-1e100, -1e100),
        ];
        let naive: Complex<f64> = terms.iter().sum();
        let acc: CompensatedSum<f64> = terms.iter().copied().collect();
        assert_eq!(naive, Complex::new(0.0, 0.0));
        assert_eq!(acc.value(), Complex::new(2.0, 0.0));
    }

    #[test]
    fn harmonic_tail_in_single_precision() {
        let mut acc = CompensatedSum::<f32>::new();
        let mut naive = 0.0f32;
        let mut exact = 0.0f64;
        for n in 1..=200_000u32 {
            let v = 1.0 / (n as f32);
            acc.add(Complex::new(v, 0.0));
            naive += v;
            exact += v as f64;
        }
        let err_acc = (acc.value().re as f64 - exact).abs();
        let err_naive = (naive as f64 - exact).abs();
        assert!(err_acc < 1e-5, "{err_acc}");
        assert!(err_acc < err_naive);
    }
}
