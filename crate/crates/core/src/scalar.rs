//! Scalar abstraction shared by the exact and floating-point code paths.
//!
//! Everything that is a polynomial or rational identity in the matrix
//! entries (map application, Choi matrices, the determinant identity, the
//! `f` function, the Hessian construction, circulant determinants) is
//! written against [`Scalar`], so it can run over `f32`, `f64` or exact
//! rationals. Spectral work (eigensolves, SVD, see-saw) is `f64` only.

use nalgebra::DMatrix;
use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

use crate::linalg;
use crate::matrix::ComplexSquareMatrix;

/// Exact rational scalar used for fixture-grade computations.
pub type Rational = Ratio<i64>;

pub trait Scalar: nalgebra::Scalar + Copy + PartialOrd + Signed + FromPrimitive + ToPrimitive + Send + Sync {
    /// Absolute comparison slack for a nominal tolerance. Exact types use zero.
    fn slack(tol: f64) -> Self;

    /// Lossy conversion for reporting.
    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Whether a Hermitian matrix is positive semidefinite, allowing
    /// eigenvalues down to `-tol` for inexact types.
    fn hermitian_is_psd(m: &ComplexSquareMatrix<Self>, tol: f64) -> bool;

    fn from_usize_lossy(v: usize) -> Self {
        Self::from_usize(v).expect("small integer is representable")
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn slack(tol: f64) -> Self {
                tol as $t
            }

            fn hermitian_is_psd(m: &ComplexSquareMatrix<Self>, tol: f64) -> bool {
                let wide = DMatrix::from_fn(m.dim(), m.dim(), |i, j| {
                    let z = m[(i, j)];
                    Complex::new(z.re as f64, z.im as f64)
                });
                linalg::hermitian_eigenvalues(&wide).first().map_or(true, |&lo| lo >= -tol)
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

impl Scalar for Rational {
    fn slack(_tol: f64) -> Self {
        Rational::from_integer(0)
    }

    fn hermitian_is_psd(m: &ComplexSquareMatrix<Self>, _tol: f64) -> bool {
        crate::matrix::ldl_is_psd(m)
    }
}

/// `|a - b| <= slack` for complex values, checked componentwise.
pub(crate) fn close<T: Scalar>(a: &Complex<T>, b: &Complex<T>, slack: T) -> bool {
    (a.re - b.re).abs() <= slack && (a.im - b.im).abs() <= slack
}
