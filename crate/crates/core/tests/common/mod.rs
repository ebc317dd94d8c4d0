//! Exact-rational evaluation oracle, independent of the floating-point
//! evaluators: formulas are evaluated with arbitrary-precision rationals and
//! the n-th root is taken by Newton iteration on rationals, so differences
//! far below f64 resolution remain meaningful.

use bloch_siegert::series::{derive_formula, pt_series, ratio, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `r^(1/n)` as a rational approximation with error below `10^-digits`,
/// by Newton iteration `x <- ((n-1) x + r / x^(n-1)) / n`.
pub fn nth_root(r: &Rational, n: u32, digits: u32) -> Rational {
    assert!(r.is_positive() && n > 0);
    let tol = Rational::new(BigInt::one(), BigInt::from(10u8).pow(digits));
    let nr = ratio(i64::from(n), 1);
    let nm1 = ratio(i64::from(n) - 1, 1);

    let mut x =
        Rational::from_float(r.to_f64().unwrap().powf(1.0 / f64::from(n))).expect("finite seed");
    if x.is_zero() || x.is_negative() {
        x = Rational::one();
    }
    for _ in 0..64 {
        let x_pow = power(&x, n - 1);
        let next = (&nm1 * &x + r / &x_pow) / &nr;
        let step = (&next - &x).abs();
        x = truncate_digits(&next, digits + 10);
        if step < tol {
            break;
        }
    }
    x
}

fn power(x: &Rational, n: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..n {
        out *= x;
    }
    out
}

/// Round toward zero to `digits` decimal digits to keep numerators from
/// exploding across Newton iterations.
fn truncate_digits(x: &Rational, digits: u32) -> Rational {
    let scale = BigInt::from(10u8).pow(digits);
    let scaled = (x * Rational::from(scale.clone())).trunc();
    scaled / Rational::from(scale)
}

/// Dimensionless extrapolated shift `(1 + sum d_k x^{2k})^{1/n} - 1` at an
/// exact rational drive ratio.
pub fn exact_extrap_shift(order: u32, x: &Rational, digits: u32) -> Rational {
    let formula = derive_formula(order).unwrap();
    let x2 = x * x;
    let mut radicand = Rational::one();
    let mut xp = Rational::one();
    for d in formula.coefficients() {
        xp *= &x2;
        radicand += d * &xp;
    }
    nth_root(&radicand, order, digits) - Rational::one()
}

/// Dimensionless truncated perturbation shift at an exact rational ratio.
pub fn exact_pt_shift(order: u32, x: &Rational) -> Rational {
    pt_series(order).unwrap().eval(x) - Rational::one()
}

#[allow(dead_code)]
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap()
}
