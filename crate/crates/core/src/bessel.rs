//! Bessel functions J0, J1 by their ascending power series, and the first
//! positive zero of J0.
//!
//! The series converge rapidly for the small arguments needed here (the zero
//! lies in [2, 3]); the root is isolated by bisection and polished by Newton
//! steps using `J0' = -J1`.

use std::sync::OnceLock;

use crate::Scalar;

/// `J0(x)` from the ascending series `sum_m (-1)^m (x^2/4)^m / (m!)^2`.
pub fn j0<F: Scalar>(x: F) -> F {
    let q = x * x / F::from(4.0).unwrap();
    let mut term = F::one();
    let mut sum = term;
    for m in 1..200 {
        let m = F::from(m).unwrap();
        term = -term * q / (m * m);
        sum = sum + term;
        if term.abs() <= sum.abs() * F::epsilon() {
            break;
        }
    }
    sum
}

/// `J1(x)` from the ascending series
/// `(x/2) sum_m (-1)^m (x^2/4)^m / (m! (m+1)!)`.
pub fn j1<F: Scalar>(x: F) -> F {
    let q = x * x / F::from(4.0).unwrap();
    let mut term = x / F::from(2.0).unwrap();
    let mut sum = term;
    for m in 1..200 {
        let mf = F::from(m).unwrap();
        term = -term * q / (mf * (mf + F::one()));
        sum = sum + term;
        if term.abs() <= sum.abs() * F::epsilon() {
            break;
        }
    }
    sum
}

/// Smallest positive root of J0, computed from scratch.
pub fn j0_first_zero<F: Scalar>() -> F {
    // J0(2) > 0 > J0(3) brackets the root.
    let mut lo = F::from(2.0).unwrap();
    let mut hi = F::from(3.0).unwrap();
    let two = F::from(2.0).unwrap();
    for _ in 0..20 {
        let mid = (lo + hi) / two;
        if j0(mid) > F::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Newton: x <- x - J0(x)/J0'(x) = x + J0(x)/J1(x).
    let mut x = (lo + hi) / two;
    for _ in 0..30 {
        let step = j0(x) / j1(x);
        x = x + step;
        if step.abs() <= x * F::epsilon() * two {
            break;
        }
    }
    x
}

/// Cached `f64` first zero of J0 (initialization-safe under concurrent first
/// calls).
pub fn bessel_j0_first_zero() -> f64 {
    static ZERO: OnceLock<f64> = OnceLock::new();
    *ZERO.get_or_init(j0_first_zero::<f64>)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_zero_matches_printed_value() {
        assert!((bessel_j0_first_zero() - 2.404826).abs() < 5e-7);
    }

    #[test]
    fn first_zero_high_precision() {
        assert!((bessel_j0_first_zero() - 2.4048255577).abs() < 1e-9);
    }

    #[test]
    fn j0_vanishes_at_its_root() {
        assert!(j0(bessel_j0_first_zero()).abs() < 1e-12);
    }

    #[test]
    fn cached_and_generic_paths_agree() {
        assert_eq!(bessel_j0_first_zero(), j0_first_zero::<f64>());
        let z32 = j0_first_zero::<f32>();
        assert!((f64::from(z32) - 2.404826).abs() < 1e-5);
    }

    #[test]
    fn series_values_at_small_arguments() {
        // J0(0) = 1, J1(0) = 0, and the small-x expansions.
        assert_eq!(j0(0.0f64), 1.0);
        assert_eq!(j1(0.0f64), 0.0);
        assert!((j0(0.5f64) - 0.938469807240813).abs() < 1e-14);
        assert!((j1(0.5f64) - 0.242268457674874).abs() < 1e-14);
    }
}
