//! Dense real linear algebra: column-major matrices, symmetric
//! eigendecomposition, random orthogonal factories and orthonormal basis
//! completion.

mod eig;
mod random;

pub use eig::{sym_eig, SymEigen, MAX_EIG_SWEEPS};
pub use random::{complete_orthobasis, matrix_with_spectrum, random_orthogonal, random_orthonormal_columns};

use crate::error::{Error, Result};

/// Relative asymmetry above which a matrix is rejected as non-symmetric.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Dense matrix with column-major `f64` storage.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Build from column-major data, validating length and finiteness.
    pub fn from_column_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimMismatch { expected: rows * cols, actual: data.len() });
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("matrix entries"));
        }
        Ok(Self { rows, cols, data })
    }

    /// Internal constructor for arithmetic results whose inputs were
    /// already validated.
    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[j * self.rows + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[j * self.rows + i] = v;
    }

    /// Column `j` as a contiguous slice.
    #[inline]
    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Two distinct columns borrowed mutably at once.
    pub(crate) fn two_cols_mut(&mut self, p: usize, q: usize) -> (&mut [f64], &mut [f64]) {
        assert!(p < q && q < self.cols);
        let (lo, hi) = self.data.split_at_mut(q * self.rows);
        (&mut lo[p * self.rows..(p + 1) * self.rows], &mut hi[..self.rows])
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows);
        for j in 0..self.cols {
            for i in 0..self.rows {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `self * other`, accumulated column-by-column.
    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimMismatch { expected: self.cols, actual: other.rows });
        }
        let mut out = DenseMatrix::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let bcol = other.col(j);
            let ocol = out.col_mut(j);
            for (k, &bkj) in bcol.iter().enumerate() {
                if bkj == 0.0 {
                    continue;
                }
                let acol = self.col(k);
                for (o, &a) in ocol.iter_mut().zip(acol) {
                    *o += a * bkj;
                }
            }
        }
        Ok(out)
    }

    /// `self * x`.
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.cols {
            return Err(Error::DimMismatch { expected: self.cols, actual: x.len() });
        }
        let mut out = vec![0.0; self.rows];
        for (k, &xk) in x.iter().enumerate() {
            if xk == 0.0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.col(k)) {
                *o += a * xk;
            }
        }
        Ok(out)
    }

    /// `selfᵀ * x` without forming the transpose.
    pub fn tr_matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.rows {
            return Err(Error::DimMismatch { expected: self.rows, actual: x.len() });
        }
        let out = (0..self.cols).map(|j| dot(self.col(j), x)).collect();
        Ok(out)
    }

    /// Gram matrix `selfᵀ * self`, filled so that the result is bitwise
    /// symmetric.
    pub fn gram(&self) -> DenseMatrix {
        let d = self.cols;
        let mut g = DenseMatrix::zeros(d, d);
        for j in 0..d {
            for i in 0..=j {
                let v = dot(self.col(i), self.col(j));
                g.set(i, j, v);
                g.set(j, i, v);
            }
        }
        g
    }

    /// Maximum absolute asymmetry relative to the Frobenius norm.
    pub fn relative_asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let fro = self.frobenius_norm();
        if fro == 0.0 {
            return 0.0;
        }
        let mut worst: f64 = 0.0;
        for j in 0..self.cols {
            for i in 0..j {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst / fro
    }

    pub(crate) fn require_symmetric(&self) -> Result<()> {
        let asym = self.relative_asymmetry();
        if asym > SYMMETRY_TOL {
            return Err(Error::NotSymmetric(asym));
        }
        Ok(())
    }

    /// `‖selfᵀ·self − I‖_F`, the orthonormality defect of the columns.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut acc = 0.0;
        for j in 0..self.cols {
            for i in 0..=j {
                let v = dot(self.col(i), self.col(j)) - if i == j { 1.0 } else { 0.0 };
                acc += if i == j { v * v } else { 2.0 * v * v };
            }
        }
        acc.sqrt()
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_l1(a: &[f64]) -> f64 {
    a.iter().map(|x| x.abs()).sum()
}

pub fn norm_l2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `y += alpha * x`.
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}
