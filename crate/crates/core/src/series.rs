//! Exact rational arithmetic on even truncated power series.
//!
//! Everything here is closed over arbitrary-precision rationals; no floating
//! point enters. The series live in the dimensionless squared drive ratio
//! `x = A / omega0`: a series holds the coefficients of `x^{2k}` for
//! `k = 0..=truncation_order`.
//!
//! The extrapolation formulas are obtained by raising the resonance-frequency
//! perturbation series to its own order, truncating consistently, and keeping
//! the radicand coefficients. The matching n-th root then removes the
//! spurious divergence of the raw series at `omega0 -> 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result, Scalar};

/// Exact arbitrary-precision fraction, always in canonical form
/// (positive denominator, gcd(numerator, denominator) = 1).
pub type Rational = BigRational;

/// Shorthand for a `Rational` from machine integers.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Truncated power series in `x^2` with exact rational coefficients.
///
/// `coeffs()[k]` multiplies `x^{2k}`; the highest retained power of `x` is
/// `2 * truncation_order()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenSeries {
    coeffs: Vec<Rational>,
}

impl EvenSeries {
    /// Series from its coefficient list (constant term first). Must be
    /// non-empty.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least a constant term");
        Self { coeffs }
    }

    /// The constant series 1 at the given truncation order.
    pub fn one(truncation_order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); truncation_order + 1];
        coeffs[0] = Rational::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Cauchy product truncated to the common truncation order.
    ///
    /// Both operands must carry the same truncation order; cross terms beyond
    /// it are discarded.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.truncation_order(),
            other.truncation_order(),
            "series products require equal truncation orders"
        );
        let m = self.coeffs.len();
        let mut out = vec![Rational::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(m - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// Evaluate at an exact rational argument `x` (substituting `x^2`).
    pub fn eval(&self, x: &Rational) -> Rational {
        let x2 = x * x;
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x2 + c;
        }
        acc
    }
}

/// Perturbation series for `omega_res / omega0` truncated at `x^{max_order}`.
///
/// The coefficient of `x^{2k}` is `c_k / 16^k` with
/// `(c_1, c_2, c_3, c_4) = (1, 1/4, -35/32, 103/128)`.
pub fn pt_series(max_order: u32) -> Result<EvenSeries> {
    let half = check_order(max_order)?;
    let c = [ratio(1, 1), ratio(1, 4), ratio(-35, 32), ratio(103, 128)];
    let mut coeffs = Vec::with_capacity(half + 1);
    coeffs.push(Rational::one());
    let sixteenth = ratio(1, 16);
    let mut scale = Rational::one();
    for ck in c.iter().take(half) {
        scale *= &sixteenth;
        coeffs.push(ck * &scale);
    }
    Ok(EvenSeries::from_coeffs(coeffs))
}

/// `s^n` by repeated truncated multiplication.
///
/// `s` must be normalized (constant term 1); `n = 0` yields the identity
/// series at the same truncation order.
pub fn series_pow(s: &EvenSeries, n: u32) -> EvenSeries {
    assert!(
        s.coeffs[0].is_one(),
        "series_pow expects a normalized series (constant term 1)"
    );
    let mut out = EvenSeries::one(s.truncation_order());
    for _ in 0..n {
        out = out.mul(s);
    }
    out
}

/// Radicand coefficient set of one extrapolation formula.
///
/// Defines the shift
/// `omega0 * ((1 + sum_k d_k (A/omega0)^{2k})^{1/order} - 1)`
/// with `k = 1..=order/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtrapolationFormula {
    order: u32,
    d: Vec<Rational>,
}

impl ExtrapolationFormula {
    /// Root degree `n` of the formula.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// The `n/2` radicand coefficients `d_1..d_{n/2}` (constant 1 excluded).
    pub fn coefficients(&self) -> &[Rational] {
        &self.d
    }

    /// Radicand coefficients converted to the requested float type,
    /// `d_1` first.
    pub fn float_coefficients<F: Scalar>(&self) -> Vec<F> {
        self.d
            .iter()
            .map(|c| F::from(c.to_f64().expect("radicand coefficient fits f64")).unwrap())
            .collect()
    }

    /// The constant `D` such that the shift tends to `A / D` as
    /// `A / omega0 -> infinity`, i.e. `(1 / d_{n/2})^{1/n}`.
    pub fn asymptotic_divisor(&self) -> Result<f64> {
        let leading = self.d.last().expect("formula has coefficients");
        if !leading.is_positive() {
            return Err(Error::NonPositiveLeading);
        }
        let inv = leading.recip().to_f64().expect("coefficient fits f64");
        Ok(inv.powf(1.0 / f64::from(self.order)))
    }

    /// Exact radicand as JSON: `{"order": n, "radicand": ["1", "1/8", ...]}`
    /// with fractions rendered as `p/q` strings.
    pub fn to_json(&self) -> serde_json::Value {
        let mut radicand = vec!["1".to_string()];
        radicand.extend(self.d.iter().map(|c| c.to_string()));
        serde_json::json!({
            "order": self.order,
            "radicand": radicand,
        })
    }

    /// Formula from explicit coefficients (for tests and round-tripping).
    pub fn from_parts(order: u32, d: Vec<Rational>) -> Result<Self> {
        let half = check_order(order)?;
        if d.len() != half {
            return Err(Error::InvalidParams(format!(
                "order-{order} formula needs {half} coefficients, got {}",
                d.len()
            )));
        }
        Ok(Self { order, d })
    }
}

/// Derive the order-`n` extrapolation formula from the perturbation series:
/// raise `pt_series(n)` to the `n`-th power, truncate, drop the constant 1.
pub fn derive_formula(order: u32) -> Result<ExtrapolationFormula> {
    check_order(order)?;
    let series = pt_series(order)?;
    let powered = series_pow(&series, order);
    let d = powered.coeffs()[1..].to_vec();
    Ok(ExtrapolationFormula { order, d })
}

/// Validates an extrapolation order and returns `order / 2`.
pub(crate) fn check_order(order: u32) -> Result<usize> {
    match order {
        2 | 4 | 6 | 8 => Ok(order as usize / 2),
        other => Err(Error::InvalidOrder(other)),
    }
}
