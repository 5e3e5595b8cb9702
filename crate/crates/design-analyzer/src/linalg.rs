//! Dense matrices, column centering, covariance, and a symmetric
//! eigenvalue solver.
//!
//! The solver is a classic cyclic Jacobi iteration: sweeps of plane
//! rotations zero each off-diagonal entry in turn until the off-diagonal
//! Frobenius norm falls below 1e-12 of the initial Frobenius norm (or a
//! hard cap of 100 sweeps trips a convergence error). Accumulated
//! rotations give the eigenvectors. Matrices here are small (one row or
//! column per class or measure), so the simple full-matrix update wins
//! over anything clever.

use thiserror::Error;

use crate::scalar::Scalar;

/// Relative off-diagonal threshold for the rotation sweeps.
const CONVERGENCE_REL_TOL: f64 = 1e-12;
/// Hard sweep cap; cyclic Jacobi on these sizes converges in under ten.
const MAX_SWEEPS: usize = 100;
/// Absolute asymmetry tolerated before the input is rejected.
const SYMMETRY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum LinalgError {
    #[error("matrix has no rows or no columns")]
    EmptyMatrix,
    #[error("matrix is not symmetric (max |a[i][j] - a[j][i]| = {max_delta:e})")]
    NonSymmetricInput { max_delta: f64 },
    #[error("eigen iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Build from row vectors. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "ragged rows in matrix construction"
        );
        DenseMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        debug_assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: T) {
        debug_assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[T] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn transposed(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, &v| acc + v * v)
            .sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, &v| acc.max(v.abs()))
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i))
    }
}

/// Symmetric covariance matrix with per-column labels.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix<T> {
    pub values: DenseMatrix<T>,
    pub labels: Vec<String>,
}

/// Subtract each column's mean from that column. Centering is always per
/// column, whatever the matrix orientation encodes.
pub fn mean_center<T: Scalar>(x: &DenseMatrix<T>) -> Result<DenseMatrix<T>, LinalgError> {
    if x.rows() == 0 || x.cols() == 0 {
        return Err(LinalgError::EmptyMatrix);
    }
    let n = T::from_f64(x.rows() as f64);
    let mut out = x.clone();
    for c in 0..x.cols() {
        let mut sum = T::zero();
        for r in 0..x.rows() {
            sum = sum + x.get(r, c);
        }
        let mean = sum / n;
        for r in 0..x.rows() {
            out.set(r, c, x.get(r, c) - mean);
        }
    }
    Ok(out)
}

/// Covariance of a centered matrix: `R = (1/n) X' X` where `X` is the
/// centered input and `n` its row count. The divisor is exactly `n`.
/// The upper triangle is computed and mirrored, so the result is
/// symmetric by construction.
pub fn covariance<T: Scalar>(
    centered: &DenseMatrix<T>,
    labels: Vec<String>,
) -> Result<CovarianceMatrix<T>, LinalgError> {
    if centered.rows() == 0 || centered.cols() == 0 {
        return Err(LinalgError::EmptyMatrix);
    }
    assert_eq!(
        labels.len(),
        centered.cols(),
        "one label per covariance column"
    );
    let n = T::from_f64(centered.rows() as f64);
    let m = centered.cols();
    let mut values = DenseMatrix::zeros(m, m);
    for j in 0..m {
        for k in j..m {
            let mut sum = T::zero();
            for r in 0..centered.rows() {
                sum = sum + centered.get(r, j) * centered.get(r, k);
            }
            let v = sum / n;
            values.set(j, k, v);
            values.set(k, j, v);
        }
    }
    Ok(CovarianceMatrix { values, labels })
}

/// Unsorted eigenpairs; `vectors[i]` belongs to `values[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPairs<T> {
    pub values: Vec<T>,
    pub vectors: Vec<Vec<T>>,
}

fn off_diagonal_norm<T: Scalar>(a: &DenseMatrix<T>) -> T {
    let n = a.rows();
    let mut sum = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let v = a.get(i, j);
                sum = sum + v * v;
            }
        }
    }
    sum.sqrt()
}

/// Eigen decomposition of a symmetric matrix by cyclic Jacobi rotation
/// sweeps. Input asymmetry beyond the tolerance is rejected rather than
/// silently symmetrized.
pub fn eigen_symmetric<T: Scalar>(a: &DenseMatrix<T>) -> Result<EigenPairs<T>, LinalgError> {
    let n = a.rows();
    if n == 0 || a.cols() == 0 {
        return Err(LinalgError::EmptyMatrix);
    }
    if a.cols() != n {
        return Err(LinalgError::NonSymmetricInput {
            max_delta: f64::INFINITY,
        });
    }
    let sym_tol = T::from_f64(SYMMETRY_TOL).max(T::epsilon() * T::from_f64(16.0));
    let mut max_delta = T::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            max_delta = max_delta.max((a.get(i, j) - a.get(j, i)).abs());
        }
    }
    if max_delta > sym_tol {
        return Err(LinalgError::NonSymmetricInput {
            max_delta: max_delta.as_f64(),
        });
    }

    // Work on an exactly symmetric copy (upper triangle mirrored).
    let mut work = a.clone();
    for i in 0..n {
        for j in (i + 1)..n {
            work.set(j, i, work.get(i, j));
        }
    }
    let mut vectors = DenseMatrix::<T>::identity(n);

    let initial_norm = work.frobenius_norm();
    let rel = T::from_f64(CONVERGENCE_REL_TOL).max(T::epsilon() * T::from_f64(32.0));
    let threshold = initial_norm * rel;

    let mut converged = off_diagonal_norm(&work) <= threshold;
    let mut sweeps = 0usize;
    while !converged && sweeps < MAX_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = work.get(p, q);
                if apq == T::zero() {
                    continue;
                }
                let tau = (work.get(q, q) - work.get(p, p)) / (T::from_f64(2.0) * apq);
                let t = {
                    let sign = if tau >= T::zero() { T::one() } else { -T::one() };
                    sign / (tau.abs() + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                // A <- A J, then A <- J' A, for the plane rotation J in
                // (p, q) with cosine c and sine s.
                for k in 0..n {
                    let akp = work.get(k, p);
                    let akq = work.get(k, q);
                    work.set(k, p, c * akp - s * akq);
                    work.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = work.get(p, k);
                    let aqk = work.get(q, k);
                    work.set(p, k, c * apk - s * aqk);
                    work.set(q, k, s * apk + c * aqk);
                }
                for k in 0..n {
                    let vkp = vectors.get(k, p);
                    let vkq = vectors.get(k, q);
                    vectors.set(k, p, c * vkp - s * vkq);
                    vectors.set(k, q, s * vkp + c * vkq);
                }
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&work) <= threshold;
    }
    if !converged {
        return Err(LinalgError::NoConvergence { sweeps });
    }

    let values: Vec<T> = (0..n).map(|i| work.get(i, i)).collect();
    let vecs: Vec<Vec<T>> = (0..n)
        .map(|col| (0..n).map(|row| vectors.get(row, col)).collect())
        .collect();
    Ok(EigenPairs {
        values,
        vectors: vecs,
    })
}
