use std::ops::{Index, IndexMut};

use nalgebra::DMatrix;
use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{close, Scalar};

/// A square complex matrix over a generic real scalar.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSquareMatrix<T: Scalar> {
    inner: DMatrix<Complex<T>>,
}

impl<T: Scalar> ComplexSquareMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| Complex::zero())
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { Complex::one() } else { Complex::zero() })
    }

    /// Matrix unit `e_ij`.
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m[(i, j)] = Complex::one();
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        Self { inner: DMatrix::from_fn(dim, dim, |i, j| f(i, j)) }
    }

    pub fn from_real_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        Self::from_fn(dim, |i, j| Complex::new(f(i, j), T::zero()))
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let dim = rows.len();
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != dim) {
            return Err(Error::NotSquare { rows: dim, row, len: r.len() });
        }
        Ok(Self::from_fn(dim, |i, j| rows[i][j]))
    }

    pub fn from_dmatrix(inner: DMatrix<Complex<T>>) -> Result<Self> {
        if inner.nrows() != inner.ncols() {
            return Err(Error::NotSquare { rows: inner.nrows(), row: 0, len: inner.ncols() });
        }
        Ok(Self { inner })
    }

    /// `u v†`
    pub fn outer(u: &[Complex<T>], v: &[Complex<T>]) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch { expected: u.len(), found: v.len() });
        }
        Ok(Self::from_fn(u.len(), |i, j| u[i] * v[j].conj()))
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex<T>> {
        &self.inner
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex<T>> {
        self.inner
    }

    pub fn rows(&self) -> Vec<Vec<Complex<T>>> {
        (0..self.dim()).map(|i| (0..self.dim()).map(|j| self[(i, j)]).collect()).collect()
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found: self.dim() })
        }
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim()).fold(Complex::zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim(), |i, j| self[(j, i)].conj())
    }

    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        other.check_dim(self.dim())?;
        Ok(Self::from_fn(self.dim(), |i, j| self[(i, j)] * other[(i, j)]))
    }

    pub fn scale(&self, c: T) -> Self {
        Self::from_fn(self.dim(), |i, j| self[(i, j)] * c)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        other.check_dim(self.dim())?;
        Ok(Self::from_fn(self.dim(), |i, j| self[(i, j)] - other[(i, j)]))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        other.check_dim(self.dim())?;
        Ok(Self::from_fn(self.dim(), |i, j| self[(i, j)] + other[(i, j)]))
    }

    /// Sum of all entries, `𝟙† M 𝟙`.
    pub fn entry_sum(&self) -> Complex<T> {
        self.inner.iter().fold(Complex::zero(), |acc, z| acc + *z)
    }

    /// `M v`
    pub fn mul_vec(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.len() });
        }
        Ok((0..self.dim()).map(|i| (0..self.dim()).fold(Complex::zero(), |acc, j| acc + self[(i, j)] * v[j])).collect())
    }

    /// `⟨y, M y⟩ = y† M y`
    pub fn quadratic_form(&self, y: &[Complex<T>]) -> Result<Complex<T>> {
        let my = self.mul_vec(y)?;
        Ok(y.iter().zip(&my).fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * *b))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let slack = T::slack(tol);
        let n = self.dim();
        (0..n).all(|i| (i..n).all(|j| close(&self[(i, j)], &self[(j, i)].conj(), slack)))
    }

    /// Determinant by Gaussian elimination. Exact for rational scalars.
    pub fn determinant(&self) -> Complex<T> {
        let n = self.dim();
        let mut a = self.inner.clone();
        let mut det = Complex::<T>::one();
        for col in 0..n {
            let pivot = (col..n).filter(|&r| !a[(r, col)].is_zero()).max_by(|&r, &s| {
                a[(r, col)].norm_sqr().partial_cmp(&a[(s, col)].norm_sqr()).unwrap_or(std::cmp::Ordering::Equal)
            });
            let Some(p) = pivot else {
                return Complex::zero();
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let piv = a[(col, col)];
            det = det * piv;
            for r in col + 1..n {
                let factor = a[(r, col)] / piv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = factor * a[(col, c)];
                    a[(r, c)] = a[(r, c)] - sub;
                }
            }
        }
        det
    }
}

impl ComplexSquareMatrix<f64> {
    pub fn frobenius_norm(&self) -> f64 {
        self.inner.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_hermitian_deviation(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Returns `self` if Hermitian to `tol`, otherwise the deviation as an error.
    pub fn require_hermitian(self, tol: f64) -> Result<Self> {
        let deviation = self.max_hermitian_deviation();
        if deviation <= tol {
            Ok(self)
        } else {
            Err(Error::NotHermitian { deviation })
        }
    }
}

impl<T: Scalar> Index<(usize, usize)> for ComplexSquareMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, idx: (usize, usize)) -> &Complex<T> {
        &self.inner[idx]
    }
}

impl<T: Scalar> IndexMut<(usize, usize)> for ComplexSquareMatrix<T> {
    fn index_mut(&mut self, idx: (usize, usize)) -> &mut Complex<T> {
        &mut self.inner[idx]
    }
}

impl From<&ComplexSquareMatrix<f64>> for DMatrix<Complex64> {
    fn from(m: &ComplexSquareMatrix<f64>) -> Self {
        m.inner.clone()
    }
}

/// Exact positive-semidefiniteness test by symmetric Gaussian elimination
/// (LDL† with zero-pivot handling). A zero pivot must come with a zero row.
pub(crate) fn ldl_is_psd<T: Scalar>(m: &ComplexSquareMatrix<T>) -> bool {
    let n = m.dim();
    if !m.is_hermitian(0.0) {
        return false;
    }
    let mut a = m.inner.clone();
    for col in 0..n {
        let piv = a[(col, col)].re;
        if piv < T::zero() {
            return false;
        }
        if piv.is_zero() {
            if (col + 1..n).any(|r| !a[(r, col)].is_zero()) {
                return false;
            }
            continue;
        }
        for r in col + 1..n {
            let factor = a[(r, col)] / piv;
            for c in col..n {
                let sub = factor * a[(col, c)];
                a[(r, c)] = a[(r, c)] - sub;
            }
        }
    }
    true
}
