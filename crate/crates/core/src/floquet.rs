//! Numerically exact resonance location via Floquet theory.
//!
//! The time-periodic two-level Hamiltonian maps to a time-independent
//! eigenproblem on an extended space indexed by spin and photon (Fourier)
//! number. Truncating the photon ladder at `|k| <= n_photon` gives a real
//! symmetric matrix whose eigenvalues are the quasienergies. The resonance is
//! the drive frequency that maximizes the time-averaged lower-to-upper
//! transition probability; the search bracket is seeded from the order-8
//! extrapolation formula and the photon truncation is enlarged until the
//! located frequency settles.

use crate::approx::extrapolated_shift;
use crate::linalg::{eigh, Eigen, SymMatrix};
use crate::search::golden_section_max;
use crate::{Error, Method, RabiParams, Result, Scalar, ShiftReport};

/// Hard cap on the extended-space dimension.
pub const MAX_DIM: usize = 2048;

/// Spin component of an extended-space basis state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Down,
    Up,
}

/// Flat index of the basis state `|spin, k>`, `k in -n_photon..=n_photon`.
pub fn basis_index(spin: Spin, k: i64, n_photon: usize) -> usize {
    let offset = (k + n_photon as i64) as usize;
    2 * offset + usize::from(spin == Spin::Up)
}

/// Truncation and search controls for [`find_resonance`].
#[derive(Debug, Clone, Copy)]
pub struct FloquetConfig<F> {
    /// Initial photon blocks kept on each side of `k = 0`. The solver raises
    /// this to `ceil(A / omega_guess) + 10` when that is larger.
    pub n_photon: usize,
    /// Absolute convergence tolerance on the resonance frequency.
    pub omega_tol: F,
    /// Relative change of the located resonance under `n_photon -> n_photon
    /// + 5` required for acceptance.
    pub truncation_rtol: F,
    /// Hard cap on the photon truncation.
    pub max_n_photon: usize,
    /// Relative half-width of the initial frequency bracket.
    pub bracket_width: F,
}

impl<F: Scalar> FloquetConfig<F> {
    /// Defaults scaled to a level splitting `omega0`.
    pub fn for_omega0(omega0: F) -> Self {
        Self {
            n_photon: 1,
            omega_tol: F::from(1e-6).unwrap() * omega0,
            truncation_rtol: F::from(1e-5).unwrap(),
            max_n_photon: 200,
            bracket_width: F::from(0.1).unwrap(),
        }
    }
}

impl<F: Scalar> Default for FloquetConfig<F> {
    fn default() -> Self {
        Self::for_omega0(F::one())
    }
}

/// Quasienergies and eigenvectors of one truncated Floquet matrix.
#[derive(Debug, Clone)]
pub struct FloquetSpectrum<F> {
    n_photon: usize,
    eigen: Eigen<F>,
}

impl<F: Scalar> FloquetSpectrum<F> {
    pub fn n_photon(&self) -> usize {
        self.n_photon
    }

    /// Quasienergies in ascending order.
    pub fn quasienergies(&self) -> &[F] {
        self.eigen.values()
    }

    /// Amplitude `<spin, k | eigenvector g>`.
    pub fn amplitude(&self, g: usize, spin: Spin, k: i64) -> F {
        self.eigen.vector(g)[basis_index(spin, k, self.n_photon)]
    }

    pub fn eigen(&self) -> &Eigen<F> {
        &self.eigen
    }
}

/// Extended-space Hamiltonian of the driven two-level system.
///
/// Diagonal blocks carry `-omega0/2 + k*omega` (down) and
/// `+omega0/2 + k*omega` (up); the drive couples opposite spins in adjacent
/// photon sectors with strength `A/4` (one counterrotating and one
/// corotating half of the cosine).
pub fn build_floquet_matrix<F: Scalar>(
    params: &RabiParams<F>,
    omega: F,
    n_photon: usize,
) -> Result<SymMatrix<F>> {
    if !omega.is_finite() || omega <= F::zero() {
        return Err(Error::InvalidParams(format!(
            "drive frequency must be finite and positive (got {omega})"
        )));
    }
    if n_photon < 1 {
        return Err(Error::InvalidParams(
            "need at least one photon block".to_string(),
        ));
    }
    let dim = 2 * (2 * n_photon + 1);
    if dim > MAX_DIM {
        return Err(Error::DimensionCap { dim, cap: MAX_DIM });
    }

    let half = F::from(0.5).unwrap();
    let quarter = F::from(0.25).unwrap();
    let coupling = quarter * params.amplitude();
    let mut m = SymMatrix::zeros(dim);
    for k in -(n_photon as i64)..=(n_photon as i64) {
        let kf = F::from(k).unwrap();
        let down = basis_index(Spin::Down, k, n_photon);
        let up = basis_index(Spin::Up, k, n_photon);
        m.set_sym(down, down, -half * params.omega0() + kf * omega);
        m.set_sym(up, up, half * params.omega0() + kf * omega);
        if k < n_photon as i64 {
            let down_next = basis_index(Spin::Down, k + 1, n_photon);
            let up_next = basis_index(Spin::Up, k + 1, n_photon);
            m.set_sym(down, up_next, coupling);
            m.set_sym(up, down_next, coupling);
        }
    }
    Ok(m)
}

/// Full symmetric eigendecomposition of a Floquet matrix.
pub fn quasienergy_spectrum<F: Scalar>(matrix: &SymMatrix<F>) -> Result<FloquetSpectrum<F>> {
    let dim = matrix.dim();
    assert!(
        dim.is_multiple_of(2) && (dim / 2) % 2 == 1,
        "dimension {dim} is not 2 * (2 n + 1)"
    );
    let n_photon = (dim / 2 - 1) / 2;
    Ok(FloquetSpectrum {
        n_photon,
        eigen: eigh(matrix)?,
    })
}

/// Time- and drive-phase-averaged occupations `(stay_down, to_up)` for a
/// system prepared in the lower state.
///
/// This is the Floquet-side observable: for eigenpairs `g` of the truncated
/// matrix, `P(down -> s) = sum_g sum_k |<s, k|g>|^2 |<g|down, 0>|^2`. It is
/// cross-validated against [`crate::propagate::direct_evolution_prob`].
pub fn time_avg_spin_probabilities<F: Scalar>(
    params: &RabiParams<F>,
    omega: F,
    n_photon: usize,
) -> Result<(F, F)> {
    let matrix = build_floquet_matrix(params, omega, n_photon)?;
    let spectrum = quasienergy_spectrum(&matrix)?;
    let origin = basis_index(Spin::Down, 0, n_photon);

    let mut down = F::zero();
    let mut up = F::zero();
    for g in 0..spectrum.eigen.len() {
        let vector = spectrum.eigen.vector(g);
        let weight = vector[origin] * vector[origin];
        if weight == F::zero() {
            continue;
        }
        let mut down_mass = F::zero();
        let mut up_mass = F::zero();
        for pair in vector.chunks_exact(2) {
            down_mass = down_mass + pair[0] * pair[0];
            up_mass = up_mass + pair[1] * pair[1];
        }
        down = down + weight * down_mass;
        up = up + weight * up_mass;
    }
    Ok((down, up))
}

/// Time-averaged lower-to-upper transition probability.
pub fn time_avg_transition_prob<F: Scalar>(
    params: &RabiParams<F>,
    omega: F,
    n_photon: usize,
) -> Result<F> {
    time_avg_spin_probabilities(params, omega, n_photon).map(|(_, up)| up)
}

/// Locates the resonance frequency as the argmax of the transition
/// probability and reports `shift = omega_res - omega0`.
///
/// The bracket is centered on the order-8 extrapolation estimate; the photon
/// truncation grows in steps of 5 until the located frequency is stable to
/// `truncation_rtol`.
pub fn find_resonance<F: Scalar>(
    params: &RabiParams<F>,
    cfg: &FloquetConfig<F>,
) -> Result<ShiftReport<F>> {
    if params.amplitude() == F::zero() {
        // No drive, no peak: the shift vanishes identically.
        return Ok(ShiftReport::new(Method::Floquet, *params, F::zero())
            .with_diagnostic("n_photon_final", 0)
            .with_diagnostic("evals", 0));
    }

    let seed = extrapolated_shift(params, 8)?;
    let center = params.omega0() + seed.shift;
    let heuristic = (params.amplitude() / center).ceil();
    let mut n_photon = cfg
        .n_photon
        .max(num_traits::ToPrimitive::to_usize(&heuristic).unwrap_or(0) + 10);

    let mut previous: Option<F> = None;
    let mut total_evals = 0usize;
    loop {
        let peak = locate_peak(params, center, n_photon, cfg)?;
        total_evals += peak.evals;
        let change = previous.map(|prev| (peak.omega - prev).abs());
        if let Some(change) = change {
            if change <= cfg.truncation_rtol * peak.omega {
                let shift = peak.omega - params.omega0();
                return Ok(ShiftReport::new(Method::Floquet, *params, shift)
                    .with_diagnostic("n_photon_final", n_photon)
                    .with_diagnostic("peak_prob", num_traits::ToPrimitive::to_f64(&peak.prob))
                    .with_diagnostic(
                        "bracket",
                        vec![
                            num_traits::ToPrimitive::to_f64(&peak.lo),
                            num_traits::ToPrimitive::to_f64(&peak.hi),
                        ],
                    )
                    .with_diagnostic("evals", total_evals));
            }
        }
        previous = Some(peak.omega);
        n_photon += 5;
        if n_photon > cfg.max_n_photon {
            return Err(Error::TruncationNoConvergence {
                n_photon,
                last_change: change
                    .and_then(|c| num_traits::ToPrimitive::to_f64(&c))
                    .unwrap_or(f64::NAN),
            });
        }
    }
}

struct Peak<F> {
    omega: F,
    prob: F,
    lo: F,
    hi: F,
    evals: usize,
}

fn locate_peak<F: Scalar>(
    params: &RabiParams<F>,
    center: F,
    n_photon: usize,
    cfg: &FloquetConfig<F>,
) -> Result<Peak<F>> {
    let mut width = cfg.bracket_width;
    let mut evals = 0usize;
    // Retry once with a doubled bracket if the peak sits on the boundary.
    for attempt in 0..2 {
        let lo = center * (F::one() - width);
        let hi = center * (F::one() + width);
        let result = golden_section_max(
            |w| time_avg_transition_prob(params, w, n_photon),
            lo,
            hi,
            cfg.omega_tol,
        )?;
        evals += result.evals;
        let edge = F::from(2.0).unwrap() * cfg.omega_tol;
        if result.x - lo > edge && hi - result.x > edge {
            return Ok(Peak {
                omega: result.x,
                prob: result.value,
                lo,
                hi,
                evals,
            });
        }
        if attempt == 0 {
            width = width + width;
        } else {
            return Err(Error::BracketFailure {
                lo: num_traits::ToPrimitive::to_f64(&lo).unwrap_or(f64::NAN),
                hi: num_traits::ToPrimitive::to_f64(&hi).unwrap_or(f64::NAN),
            });
        }
    }
    unreachable!("bracket loop returns or fails");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(omega0: f64, amplitude: f64) -> RabiParams<f64> {
        RabiParams::new(omega0, amplitude).unwrap()
    }

    #[test]
    fn undriven_matrix_is_diagonal() {
        let m = build_floquet_matrix(&p(1.0, 0.0), 0.7, 2).unwrap();
        let spectrum = quasienergy_spectrum(&m).unwrap();
        let mut expected: Vec<f64> = (-2i64..=2)
            .flat_map(|k| [-0.5 + k as f64 * 0.7, 0.5 + k as f64 * 0.7])
            .collect();
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in spectrum.quasienergies().iter().zip(&expected) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn hand_enumerated_six_by_six() {
        // omega0 = 1, omega = 1, A = 1, one photon block on each side.
        let m = build_floquet_matrix(&p(1.0, 1.0), 1.0, 1).unwrap();
        // Basis order: |down,-1>, |up,-1>, |down,0>, |up,0>, |down,+1>, |up,+1>.
        let expected = [
            [-1.5, 0.0, 0.0, 0.25, 0.0, 0.0],
            [0.0, -0.5, 0.25, 0.0, 0.0, 0.0],
            [0.0, 0.25, -0.5, 0.0, 0.0, 0.25],
            [0.25, 0.0, 0.0, 0.5, 0.25, 0.0],
            [0.0, 0.0, 0.0, 0.25, 0.5, 0.0],
            [0.0, 0.0, 0.25, 0.0, 0.0, 1.5],
        ];
        assert_eq!(m.dim(), 6);
        for (i, row) in expected.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                assert_eq!(m.get(i, j), *want, "entry ({i}, {j})");
            }
        }
        // Eigenpairs of the same explicit array must satisfy M v = lambda v.
        let spectrum = quasienergy_spectrum(&m).unwrap();
        for g in 0..6 {
            let v = spectrum.eigen().vector(g);
            let lambda = spectrum.quasienergies()[g];
            for i in 0..6 {
                let mv: f64 = (0..6).map(|j| expected[i][j] * v[j]).sum();
                assert!((mv - lambda * v[i]).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn matrix_is_exactly_symmetric() {
        let m = build_floquet_matrix(&p(1.0, 3.5), 1.7, 12).unwrap();
        assert_eq!(m.max_asymmetry(), 0.0);
    }

    #[test]
    fn brillouin_replication() {
        // Interior quasienergies recur shifted by one drive quantum.
        let omega = 1.0632;
        let m = build_floquet_matrix(&p(1.0, 1.0), omega, 16).unwrap();
        let spectrum = quasienergy_spectrum(&m).unwrap();
        let values = spectrum.quasienergies();
        let interior: Vec<f64> = values
            .iter()
            .copied()
            .filter(|e| e.abs() < 3.0 * omega)
            .collect();
        for e in &interior {
            let target = e + omega;
            let nearest = values
                .iter()
                .map(|v| (v - target).abs())
                .fold(f64::INFINITY, f64::min);
            assert!(
                nearest < 1e-8 * omega,
                "no replica for {e}: gap {nearest:e}"
            );
        }
    }

    #[test]
    fn no_transitions_without_drive() {
        let prob = time_avg_transition_prob(&p(1.0, 0.0), 0.9, 8).unwrap();
        assert_eq!(prob, 0.0);
    }

    #[test]
    fn occupations_are_complete() {
        let (down, up) = time_avg_spin_probabilities(&p(1.0, 1.0), 1.0632, 16).unwrap();
        assert!((down + up - 1.0).abs() < 1e-8, "sum {}", down + up);
        assert!((0.0..=1.0).contains(&up));
    }

    #[test]
    fn resonance_peak_probability_is_one_half() {
        let prob = time_avg_transition_prob(&p(1.0, 1.0), 1.063224, 16).unwrap();
        assert!((prob - 0.5).abs() < 0.01, "peak {prob}");
    }

    #[test]
    fn weak_drive_resonance_matches_leading_order() {
        let params = p(1.0, 0.01);
        let report = find_resonance(&params, &FloquetConfig::default()).unwrap();
        let leading = 0.01f64.powi(2) / 16.0;
        assert!(
            (report.shift - leading).abs() < 0.2 * leading,
            "shift {} vs {leading}",
            report.shift
        );
    }

    #[test]
    fn unit_drive_resonance_matches_reference() {
        let params = p(1.0, 1.0);
        let report = find_resonance(&params, &FloquetConfig::default()).unwrap();
        assert!((report.shift - 0.063224).abs() < 1e-4);
        let peak = report.diagnostics["peak_prob"].as_f64().unwrap();
        assert!((peak - 0.5).abs() < 0.01);
    }

    #[test]
    fn zero_drive_short_circuits() {
        let report = find_resonance(&p(1.0, 0.0), &FloquetConfig::default()).unwrap();
        assert_eq!(report.shift, 0.0);
        assert_eq!(report.diagnostics["evals"], serde_json::json!(0));
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let err = build_floquet_matrix(&p(1.0, 1.0), 1.0, 1000).unwrap_err();
        assert!(matches!(err, Error::DimensionCap { .. }));
    }
}
