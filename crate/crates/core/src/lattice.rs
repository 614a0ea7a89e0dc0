//! Closed forms for the parity-restricted lattice sums
//! `sum 1/(n^2 + x^2)` and `sum 1/(n^2 + x^2)^2` over positive integers.
//!
//! They carry the slowly decaying `1/n^2` part of the impedance mode sums
//! analytically. Near `x = 0` the hyperbolic forms cancel, so a Taylor
//! series in `x^2` with zeta coefficients is used there instead.

use crate::scalar::Scalar;

/// `zeta(2), zeta(4), ..., zeta(24)`.
const ZETA_EVEN: [f64; 12] = [
    1.644_934_066_848_226_4,
    1.082_323_233_711_138_2,
    1.017_343_061_984_449,
    1.004_077_356_197_944_3,
    1.000_994_575_127_818_1,
    1.000_246_086_553_308,
    1.000_061_248_135_058_7,
    1.000_015_282_259_408_7,
    1.000_003_817_293_265,
    1.000_000_953_962_033_9,
    1.000_000_238_450_502_7,
    1.000_000_059_608_189,
];

const SERIES_BELOW: f64 = 0.125;

/// Dirichlet lambda function `(1 - 2^-s) zeta(s)` at `s = 2i + 2`.
fn lambda_even(i: usize) -> f64 {
    (1.0 - 0.25f64.powi(i as i32 + 1)) * ZETA_EVEN[i]
}

/// `sum_k (-1)^k c(2k+2) x^(2k)`.
fn series_square<T: Scalar>(x: T, c: impl Fn(usize) -> f64) -> T {
    let x2 = x * x;
    let mut acc = T::zero();
    for i in (0..ZETA_EVEN.len()).rev() {
        let coeff = if i % 2 == 0 { c(i) } else { -c(i) };
        acc = acc * x2 + T::lit(coeff);
    }
    acc
}

/// `sum_j (-1)^j (j+1) c(2j+4) x^(2j)`.
fn series_fourth<T: Scalar>(x: T, c: impl Fn(usize) -> f64) -> T {
    let x2 = x * x;
    let mut acc = T::zero();
    for j in (0..ZETA_EVEN.len() - 1).rev() {
        let coeff = (j + 1) as f64 * c(j + 1);
        let coeff = if j % 2 == 0 { coeff } else { -coeff };
        acc = acc * x2 + T::lit(coeff);
    }
    acc
}

/// `sum_{n = 1, 3, 5, ...} 1/(n^2 + x^2)`.
pub fn odd_inverse_square<T: Scalar>(x: T) -> T {
    let x = x.abs();
    if x < T::lit(SERIES_BELOW) {
        return series_square(x, lambda_even);
    }
    let y = T::FRAC_PI_2() * x;
    T::PI() * y.tanh() / (T::lit(4.0) * x)
}

/// `sum_{n = 1, 3, 5, ...} 1/(n^2 + x^2)^2`.
pub fn odd_inverse_fourth<T: Scalar>(x: T) -> T {
    let x = x.abs();
    if x < T::lit(SERIES_BELOW) {
        return series_fourth(x, lambda_even);
    }
    let y = T::FRAC_PI_2() * x;
    let sech = T::one() / y.cosh();
    let pi2 = T::PI() * T::PI();
    pi2 * pi2 / (T::lit(64.0) * y * y * y) * (y.tanh() - y * sech * sech)
}

/// `sum_{m >= 1} 1/(m^2 + z^2)`.
pub fn positive_inverse_square<T: Scalar>(z: T) -> T {
    let z = z.abs();
    if z < T::lit(SERIES_BELOW) {
        return series_square(z, |i| ZETA_EVEN[i]);
    }
    let u = T::PI() * z;
    (u / u.tanh() - T::one()) / (T::lit(2.0) * z * z)
}

/// `sum_{m >= 1} 1/(m^2 + z^2)^2`.
pub fn positive_inverse_fourth<T: Scalar>(z: T) -> T {
    let z = z.abs();
    if z < T::lit(SERIES_BELOW) {
        return series_fourth(z, |i| ZETA_EVEN[i]);
    }
    let u = T::PI() * z;
    let csch = T::one() / u.sinh();
    let pi2 = T::PI() * T::PI();
    let u2 = u * u;
    pi2 * pi2 / (T::lit(4.0) * u2 * u2) * (u / u.tanh() + u2 * csch * csch - T::lit(2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Direct partial sum over `n = start, start+step, ...` up to `n_last`,
    /// accumulated smallest-first, plus the Euler-Maclaurin tail of `n^-p`.
    fn brute(start: u64, step: u64, n_last: u64, x: f64, power: i32) -> f64 {
        let mut terms = Vec::new();
        let mut n = start;
        while n <= n_last {
            terms.push(1.0 / ((n * n) as f64 + x * x).powi(power / 2));
            n += step;
        }
        let head: f64 = terms.iter().rev().sum();
        let m = n as f64; // first omitted index
        let s = step as f64;
        let p = power as f64;
        // sum_{k>=0} (m + k s)^-p ~ m^-p/2 + m^(1-p)/(s (p-1)) + p s m^(-p-1)/12
        let tail =
            m.powf(-p) / 2.0 + m.powf(1.0 - p) / (s * (p - 1.0)) + p * s * m.powf(-p - 1.0) / 12.0;
        head + tail
    }

    #[test]
    fn zero_argument_values() {
        assert!((odd_inverse_square(0.0) - PI * PI / 8.0).abs() < 1e-15);
        assert!((odd_inverse_fourth(0.0) - PI.powi(4) / 96.0).abs() < 1e-15);
        assert!((positive_inverse_square(0.0) - PI * PI / 6.0).abs() < 1e-15);
        assert!((positive_inverse_fourth(0.0) - PI.powi(4) / 90.0).abs() < 1e-15);
    }

    #[test]
    fn agree_with_direct_summation() {
        for &x in &[0.01, 0.1, 0.124, 0.126, 0.5, 1.7, 10.0] {
            let cases: [(f64, f64); 4] = [
                (odd_inverse_square(x), brute(1, 2, 200_001, x, 2)),
                (odd_inverse_fourth(x), brute(1, 2, 20_001, x, 4)),
                (positive_inverse_square(x), brute(1, 1, 200_000, x, 2)),
                (positive_inverse_fourth(x), brute(1, 1, 20_000, x, 4)),
            ];
            for (i, (closed, direct)) in cases.iter().enumerate() {
                assert!(
                    ((closed - direct) / direct).abs() < 1e-12,
                    "case {i} x = {x}: {closed} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn continuous_across_series_switch() {
        let lo = SERIES_BELOW * (1.0 - 1e-13);
        let hi = SERIES_BELOW * (1.0 + 1e-13);
        for f in [
            odd_inverse_square::<f64>,
            odd_inverse_fourth::<f64>,
            positive_inverse_square::<f64>,
            positive_inverse_fourth::<f64>,
        ] {
            let (a, b) = (f(lo), f(hi));
            assert!(((a - b) / a).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn large_arguments_stay_finite() {
        for f in [
            odd_inverse_square::<f64>,
            odd_inverse_fourth::<f64>,
            positive_inverse_square::<f64>,
            positive_inverse_fourth::<f64>,
        ] {
            let v = f(1e4);
            assert!(v.is_finite() && v > 0.0);
        }
        // asymptotics: pi/(4x), pi/(2z) - 1/(2 z^2)
        let x = 1e3;
        assert!((odd_inverse_square(x) - PI / (4.0 * x)).abs() < 1e-15);
        assert!((positive_inverse_square(x) - (PI / (2.0 * x) - 0.5 / (x * x))).abs() < 1e-15);
    }
}
