//! Dense complex matrices and the unitary [`GateMatrix`] wrapper.

use std::ops::Index;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ComplexAmp;

/// Tolerance for unitarity and normalization checks.
pub const UNITARY_TOL: f64 = 1e-10;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CMatrix {
    dim: usize,
    data: Vec<ComplexAmp>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![ComplexAmp::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ComplexAmp::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(diag: &[ComplexAmp]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = *d;
        }
        m
    }

    /// Builds a matrix from row-major entries; `data.len()` must be a square.
    pub fn from_rows(data: Vec<ComplexAmp>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim * dim != data.len() || dim == 0 {
            return Err(Error::DimensionMismatch { expected: dim.max(1) * dim.max(1), found: data.len() });
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> ComplexAmp) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[ComplexAmp] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> ComplexAmp {
        self.data[row * self.dim + col]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn conj(&self) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { dim: self.dim, data })
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ComplexAmp::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                for (o, b) in out.data[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[ComplexAmp]) -> Result<Vec<ComplexAmp>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok(self
            .data
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Kronecker product; `(A⊗B)[i·dB + k, j·dB + l] = A[i,j]·B[k,l]`.
    pub fn kron(&self, other: &Self) -> Self {
        let db = other.dim;
        Self::from_fn(self.dim * db, |r, c| self.get(r / db, c / db) * other.get(r % db, c % db))
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_deviation(other) <= tol
    }

    /// Largest entrywise deviation of `M†M` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        match self.adjoint().mul(self) {
            Ok(p) => p.max_deviation(&Self::identity(self.dim)),
            Err(_) => f64::INFINITY,
        }
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = ComplexAmp;

    fn index(&self, (r, c): (usize, usize)) -> &ComplexAmp {
        &self.data[r * self.dim + c]
    }
}

/// A `2^arity × 2^arity` unitary acting on `arity` qubits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateMatrix {
    arity: usize,
    matrix: CMatrix,
}

impl GateMatrix {
    /// Wraps `matrix`, checking that it is a power-of-two square and unitary within [`UNITARY_TOL`].
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let dim = matrix.dim();
        if !dim.is_power_of_two() || dim < 2 {
            return Err(Error::DimensionMismatch { expected: dim.next_power_of_two().max(2), found: dim });
        }
        let deviation = matrix.unitarity_deviation();
        if deviation > UNITARY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { arity: dim.trailing_zeros() as usize, matrix })
    }

    /// Skips the unitarity check. Only for matrices unitary by construction.
    pub(crate) fn from_unitary_unchecked(matrix: CMatrix) -> Self {
        debug_assert!(matrix.dim().is_power_of_two());
        Self { arity: matrix.dim().trailing_zeros() as usize, matrix }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> ComplexAmp {
        self.matrix.get(row, col)
    }

    pub fn adjoint(&self) -> Self {
        Self { arity: self.arity, matrix: self.matrix.adjoint() }
    }

    /// `self · other`, i.e. `other` acts first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self { arity: self.arity, matrix: self.matrix.mul(&other.matrix)? })
    }

    /// Kronecker product; arities add.
    pub fn kron(&self, other: &Self) -> Self {
        Self { arity: self.arity + other.arity, matrix: self.matrix.kron(&other.matrix) }
    }
}

impl Index<(usize, usize)> for GateMatrix {
    type Output = ComplexAmp;

    fn index(&self, idx: (usize, usize)) -> &ComplexAmp {
        &self.matrix[idx]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexAmp {
        ComplexAmp::new(re, im)
    }

    #[test]
    fn rejects_non_unitary() {
        let m = CMatrix::from_rows(vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(matches!(GateMatrix::new(m), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn rejects_non_square_data() {
        assert!(CMatrix::from_rows(vec![c(1.0, 0.0); 3]).is_err());
    }

    #[test]
    fn kron_block_layout() {
        let a = CMatrix::from_rows(vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0)]).unwrap();
        let b = CMatrix::from_rows(vec![c(0.0, 1.0), c(5.0, 0.0), c(6.0, 0.0), c(7.0, 0.0)]).unwrap();
        let k = a.kron(&b);
        assert_eq!(k.dim(), 4);
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..2 {
                    for q in 0..2 {
                        assert_eq!(k[(i * 2 + p, j * 2 + q)], a[(i, j)] * b[(p, q)]);
                    }
                }
            }
        }
    }

    #[test]
    fn identity_times_identity() {
        let i2 = CMatrix::identity(2);
        assert_eq!(i2.kron(&i2), CMatrix::identity(4));
    }
}
