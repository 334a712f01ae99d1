use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::map::{choi_of, LinearMap};
use crate::matrix::ComplexSquareMatrix;

/// `⟨y, Φ(x̄ x̄†) y⟩` for unit `x`, `y` (inputs are normalized here).
pub fn form_value<M: LinearMap<f64> + ?Sized>(map: &M, x: &[Complex64], y: &[Complex64]) -> Result<f64> {
    let n = map.dim();
    for v in [x, y] {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
    }
    let xb = linalg::conj(&linalg::normalized(x));
    let y = linalg::normalized(y);
    let image = map.apply(&ComplexSquareMatrix::outer(&xb, &xb)?)?;
    Ok(image.quadratic_form(&y)?.re)
}

/// The biquadratic form `(x, y) ↦ ⟨y, Φ(x̄ x̄†) y⟩` backed by the Choi matrix,
/// so both see-saw half steps are contractions of one precomputed tensor.
#[derive(Debug, Clone)]
pub struct ProductForm {
    n: usize,
    choi: DMatrix<Complex64>,
}

impl ProductForm {
    pub fn new<M: LinearMap<f64> + ?Sized>(map: &M) -> Result<Self> {
        Ok(Self { n: map.dim(), choi: choi_of(map)?.into_dmatrix() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `Φ(x̄ x̄†)`, whose `(a, b)` entry is `Σ_ij x̄_i x_j C[(i,a),(j,b)]`.
    pub fn image(&self, x: &[Complex64]) -> DMatrix<Complex64> {
        let n = self.n;
        DMatrix::from_fn(n, n, |a, b| {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n {
                for j in 0..n {
                    acc += x[i].conj() * x[j] * self.choi[(i * n + a, j * n + b)];
                }
            }
            acc
        })
    }

    /// `Q(y)` with `Q_ij = ⟨y, Φ(e_ij) y⟩`, so that the form equals `x† Q(y) x`.
    pub fn dual(&self, y: &[Complex64]) -> DMatrix<Complex64> {
        let n = self.n;
        DMatrix::from_fn(n, n, |i, j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for a in 0..n {
                for b in 0..n {
                    acc += y[a].conj() * y[b] * self.choi[(i * n + a, j * n + b)];
                }
            }
            acc
        })
    }

    /// Form value at unit `x`, `y`.
    pub fn value(&self, x: &[Complex64], y: &[Complex64]) -> f64 {
        let q = self.dual(y);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.n {
            for j in 0..self.n {
                acc += x[i].conj() * q[(i, j)] * x[j];
            }
        }
        acc.re
    }
}
