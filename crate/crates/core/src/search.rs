//! Derivative-free scalar maximization by golden-section bracketing.

use crate::Scalar;

/// Outcome of a golden-section search.
#[derive(Debug, Clone, Copy)]
pub struct SearchResult<F> {
    /// Abscissa of the located maximum.
    pub x: F,
    /// Objective value there.
    pub value: F,
    /// Number of objective evaluations spent.
    pub evals: usize,
}

/// Maximizes a unimodal function on `[a, b]` to abscissa tolerance `xtol`.
///
/// The objective may fail; its error is propagated unchanged.
pub fn golden_section_max<F: Scalar, E>(
    mut f: impl FnMut(F) -> Result<F, E>,
    mut a: F,
    mut b: F,
    xtol: F,
) -> Result<SearchResult<F>, E> {
    debug_assert!(a < b);
    // 1/phi and 1/phi^2.
    let inv_phi = F::from(0.618_033_988_749_894_8).unwrap();
    let inv_phi2 = F::from(0.381_966_011_250_105_2).unwrap();

    let mut x1 = a + inv_phi2 * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut evals = 2;

    while b - a > xtol {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + inv_phi2 * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2)?;
        }
        evals += 1;
    }

    let (x, value) = if f1 > f2 { (x1, f1) } else { (x2, f2) };
    Ok(SearchResult { x, value, evals })
}
