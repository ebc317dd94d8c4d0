//! Dense real symmetric matrices and a cyclic Jacobi eigensolver.
//!
//! Jacobi rotations annihilate one off-diagonal element at a time; sweeping
//! cyclically drives the off-diagonal mass to zero for any real symmetric
//! matrix. Dimensions in this crate stay in the low hundreds, where the
//! O(n^3) cost is negligible.

use crate::{Error, Result, Scalar};

/// Dense symmetric matrix, full row-major storage. Symmetry is maintained by
/// construction: writes go through [`SymMatrix::set_sym`].
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<F> {
    n: usize,
    data: Vec<F>,
}

impl<F: Scalar> SymMatrix<F> {
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "matrix dimension must be positive");
        Self {
            n,
            data: vec![F::zero(); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set_sym(&mut self, i: usize, j: usize, value: F) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    /// Largest absolute entry of `M - M^T`; zero by construction.
    pub fn max_asymmetry(&self) -> F {
        let mut worst = F::zero();
        for i in 0..self.n {
            for j in 0..i {
                let diff = (self.get(i, j) - self.get(j, i)).abs();
                if diff > worst {
                    worst = diff;
                }
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> F {
        self.data
            .iter()
            .map(|v| *v * *v)
            .fold(F::zero(), |a, b| a + b)
            .sqrt()
    }
}

/// Eigendecomposition of a symmetric matrix: eigenvalues ascending,
/// matching orthonormal eigenvectors stored as contiguous columns.
#[derive(Debug, Clone)]
pub struct Eigen<F> {
    n: usize,
    values: Vec<F>,
    vectors: Vec<F>,
}

impl<F: Scalar> Eigen<F> {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn values(&self) -> &[F] {
        &self.values
    }

    /// Eigenvector belonging to `values()[g]`.
    pub fn vector(&self, g: usize) -> &[F] {
        &self.vectors[g * self.n..(g + 1) * self.n]
    }

    /// Largest entry of `V^T V - I`.
    pub fn orthonormality_residual(&self) -> F {
        let mut worst = F::zero();
        for a in 0..self.n {
            for b in a..self.n {
                let dot = self
                    .vector(a)
                    .iter()
                    .zip(self.vector(b))
                    .map(|(x, y)| *x * *y)
                    .fold(F::zero(), |s, t| s + t);
                let target = if a == b { F::one() } else { F::zero() };
                let diff = (dot - target).abs();
                if diff > worst {
                    worst = diff;
                }
            }
        }
        worst
    }
}

const MAX_SWEEPS: usize = 60;

/// Full eigendecomposition of a real symmetric matrix by cyclic Jacobi
/// rotations with the standard threshold schedule.
pub fn eigh<F: Scalar>(m: &SymMatrix<F>) -> Result<Eigen<F>> {
    let n = m.dim();
    let mut a = m.data.clone();
    let mut v = vec![F::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = F::one();
    }

    let half = F::from(0.5).unwrap();
    let hundred = F::from(100.0).unwrap();

    for sweep in 0..MAX_SWEEPS {
        let mut off = F::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off + a[p * n + q].abs();
            }
        }
        if off == F::zero() {
            return Ok(sorted(n, a, v));
        }
        // First sweeps rotate only above a shrinking threshold.
        let thresh = if sweep < 3 {
            F::from(0.2).unwrap() * off / F::from(n * n).unwrap()
        } else {
            F::zero()
        };

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let small = hundred * apq.abs();
                // Skip rotations that can no longer change the diagonal.
                if sweep > 3
                    && a[p * n + p].abs() + small == a[p * n + p].abs()
                    && a[q * n + q].abs() + small == a[q * n + q].abs()
                {
                    a[p * n + q] = F::zero();
                    a[q * n + p] = F::zero();
                    continue;
                }
                if apq.abs() <= thresh {
                    continue;
                }

                let diff = a[q * n + q] - a[p * n + p];
                let t = if diff.abs() + small == diff.abs() {
                    apq / diff
                } else {
                    let theta = half * diff / apq;
                    let mut t = (theta.abs() + (theta * theta + F::one()).sqrt()).recip();
                    if theta < F::zero() {
                        t = -t;
                    }
                    t
                };
                let c = (t * t + F::one()).sqrt().recip();
                let s = t * c;
                let tau = s / (F::one() + c);
                let h = t * apq;

                a[p * n + p] = a[p * n + p] - h;
                a[q * n + q] = a[q * n + q] + h;
                a[p * n + q] = F::zero();
                a[q * n + p] = F::zero();

                let rotate = |x: F, y: F| (x - s * (y + tau * x), y + s * (x - tau * y));
                for j in 0..n {
                    if j != p && j != q {
                        let (x, y) = rotate(a[p * n + j], a[q * n + j]);
                        a[p * n + j] = x;
                        a[j * n + p] = x;
                        a[q * n + j] = y;
                        a[j * n + q] = y;
                    }
                }
                for j in 0..n {
                    let (x, y) = rotate(v[p * n + j], v[q * n + j]);
                    v[p * n + j] = x;
                    v[q * n + j] = y;
                }
            }
        }
    }

    let mut off = F::zero();
    for p in 0..n {
        for q in (p + 1)..n {
            off = off + a[p * n + q].abs();
        }
    }
    Err(Error::EigenNoConvergence {
        residual: num_traits::ToPrimitive::to_f64(&off).unwrap_or(f64::NAN),
    })
}

fn sorted<F: Scalar>(n: usize, a: Vec<F>, v: Vec<F>) -> Eigen<F> {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[i * n + i]
            .partial_cmp(&a[j * n + j])
            .expect("eigenvalues are finite")
    });
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    // Rows of the accumulated rotation matrix are the eigenvectors.
    let mut vectors = Vec::with_capacity(n * n);
    for &i in &order {
        vectors.extend_from_slice(&v[i * n..(i + 1) * n]);
    }
    Eigen { n, values, vectors }
}
