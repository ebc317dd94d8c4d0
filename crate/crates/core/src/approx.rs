//! Floating-point shift evaluators: the extrapolation formulas, the raw
//! perturbation series, the rotating-wave baseline and the strong-driving
//! asymptote.

use crate::bessel::j0_first_zero;
use crate::series::{derive_formula, pt_series};
use crate::{Method, RabiParams, Result, Scalar, ShiftReport};

/// Closed-form extrapolated shift of the given order:
/// `omega0 * ((1 + sum_k d_k x^{2k})^{1/order} - 1)` with `x = A / omega0`.
///
/// For `x > 1` the leading radicand term is factored out so the evaluation
/// stays usable far into the strong-driving regime.
pub fn extrapolated_shift<F: Scalar>(params: &RabiParams<F>, order: u32) -> Result<ShiftReport<F>> {
    let formula = derive_formula(order)?;
    let d = formula.float_coefficients::<F>();
    let x = params.drive_ratio();
    let n = F::from(order).unwrap();

    let shift = if x <= F::one() {
        // radicand = 1 + u with u assembled by Horner in x^2; the
        // ln_1p/exp_m1 pair keeps precision at small drive.
        let t = x * x;
        let mut u = F::zero();
        for dk in d.iter().rev() {
            u = (u + *dk) * t;
        }
        params.omega0() * (u.ln_1p() / n).exp_m1()
    } else {
        // radicand = x^n * (d_m + d_{m-1} y + ... + y^m) with y = 1/x^2.
        let y = (x * x).recip();
        let mut poly = F::one();
        for dk in &d {
            poly = poly * y + *dk;
        }
        params.amplitude() * poly.powf(n.recip()) - params.omega0()
    };

    Ok(ShiftReport::new(Method::extrap(order)?, *params, shift).with_diagnostic("order", order))
}

/// Raw truncated perturbation series
/// `sum_k c_k (A/4)^{2k} / omega0^{2k-1}`, divergent as `omega0 -> 0`.
pub fn pt_shift<F: Scalar>(params: &RabiParams<F>, order: u32) -> Result<ShiftReport<F>> {
    let series = pt_series(order)?;
    let coeffs: Vec<F> = series
        .coeffs()
        .iter()
        .map(|c| F::from(num_traits::ToPrimitive::to_f64(c).unwrap()).unwrap())
        .collect();
    let t = {
        let x = params.drive_ratio();
        x * x
    };
    let mut acc = F::zero();
    for c in coeffs[1..].iter().rev() {
        acc = (acc + *c) * t;
    }
    let shift = params.omega0() * acc;
    Ok(ShiftReport::new(Method::pt(order)?, *params, shift)
        .with_diagnostic("order", order)
        .with_diagnostic("terms", coeffs.len() - 1))
}

/// Rotating-wave baseline: the counterrotating terms are dropped, so the
/// predicted shift is identically zero.
pub fn rwa_shift<F: Scalar>(params: &RabiParams<F>) -> Result<ShiftReport<F>> {
    Ok(ShiftReport::new(Method::Rwa, *params, F::zero()))
}

/// Strong-driving asymptote `A / j01` with `j01` the first zero of J0.
///
/// Meaningful for `A >> omega0`; the diagnostics flag marks calls outside
/// that regime.
pub fn asymptotic_shift<F: Scalar>(params: &RabiParams<F>) -> Result<ShiftReport<F>> {
    let divisor = j0_first_zero::<F>();
    let shift = params.amplitude() / divisor;
    Ok(ShiftReport::new(Method::Asymptotic, *params, shift)
        .with_diagnostic("divisor", num_traits::ToPrimitive::to_f64(&divisor))
        .with_diagnostic(
            "asymptotic_valid",
            params.drive_ratio() >= F::from(10.0).unwrap(),
        ))
}
