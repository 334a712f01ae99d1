//! Analytic side of the positivity argument, expressed in the squared
//! moduli `X_i = |x_i|²` of the vector fed to `τ_{n,k}(x̄ x̄†)`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::map::MapSpec;
use crate::scalar::Scalar;

/// `X_i` together with `D_i = (n−k) X_i + X_{i+1} + … + X_{i+k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalProfile<T: Scalar> {
    spec: MapSpec,
    weights: Vec<T>,
    sums: Vec<T>,
}

impl<T: Scalar> DiagonalProfile<T> {
    pub fn new(spec: MapSpec, weights: Vec<T>) -> Result<Self> {
        if weights.len() != spec.n() {
            return Err(Error::DimensionMismatch { expected: spec.n(), found: weights.len() });
        }
        if let Some(i) = weights.iter().position(|w| *w < T::zero()) {
            return Err(Error::Domain(format!("profile entry {i} is negative")));
        }
        let own = T::from_usize_lossy(spec.n() - spec.k());
        let sums = (0..spec.n())
            .map(|i| (1..=spec.k()).fold(own * weights[i], |acc, m| acc + weights[spec.wrap(i, m)]))
            .collect();
        Ok(Self { spec, weights, sums })
    }

    pub fn spec(&self) -> MapSpec {
        self.spec
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn sums(&self) -> &[T] {
        &self.sums
    }

    /// Case 1 of the positivity argument: every `D_i > 0`.
    pub fn is_regular(&self) -> bool {
        self.sums.iter().all(|d| *d > T::zero())
    }

    /// Indices with `D_i = 0`.
    pub fn vanishing_rows(&self) -> Vec<usize> {
        (0..self.sums.len()).filter(|&i| self.sums[i].is_zero()).collect()
    }

    /// `Σ X_i / D_i`; requires every `D_i > 0`.
    pub fn f_value(&self) -> Result<T> {
        if let Some(i) = self.sums.iter().position(|d| *d <= T::zero()) {
            return Err(Error::Domain(format!("D_{i} = 0; f is only defined where every D_i > 0")));
        }
        Ok(self.weights.iter().zip(&self.sums).fold(T::zero(), |acc, (x, d)| acc + *x / *d))
    }

    /// `Π D_i − Σ_j X_j Π_{i≠j} D_i`, division free.
    pub fn determinant(&self) -> T {
        let n = self.sums.len();
        let full = self.sums.iter().fold(T::one(), |acc, d| acc * *d);
        let correction = (0..n).fold(T::zero(), |acc, j| {
            let others = (0..n).filter(|&i| i != j).fold(T::one(), |p, i| p * self.sums[i]);
            acc + self.weights[j] * others
        });
        full - correction
    }
}

impl DiagonalProfile<f64> {
    /// Profile of a vector: `X_i = |x_i|²`.
    pub fn of_vector(spec: MapSpec, x: &[Complex64]) -> Result<Self> {
        Self::new(spec, x.iter().map(|z| z.norm_sqr()).collect())
    }
}

pub fn f_value<T: Scalar>(spec: MapSpec, weights: &[T]) -> Result<T> {
    DiagonalProfile::new(spec, weights.to_vec())?.f_value()
}

pub fn analytic_det<T: Scalar>(spec: MapSpec, weights: &[T]) -> Result<T> {
    Ok(DiagonalProfile::new(spec, weights.to_vec())?.determinant())
}

/// How a profile is handled analytically.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileCase<T: Scalar> {
    /// Every `D_i > 0`; the determinant is `Π D_i (1 − f)`.
    Regular { f: T, determinant: T },
    /// Some `D_i = 0`. Each vanishing row `i` has `X_i = … = X_{i+k} = 0`,
    /// so `e_i` is in the kernel of `τ(x̄ x̄†)`; the remaining block stays
    /// nonsingular with determinant factor at least `lower_bound` when `k < n−1`.
    Degenerate { vanishing: Vec<usize>, lower_bound: Option<T> },
}

pub fn classify_profile<T: Scalar>(profile: &DiagonalProfile<T>) -> Result<ProfileCase<T>> {
    if profile.is_regular() {
        return Ok(ProfileCase::Regular { f: profile.f_value()?, determinant: profile.determinant() });
    }
    let spec = profile.spec();
    let lower_bound = if spec.is_reduction() { None } else { Some(case2_lower_bound(spec)?) };
    Ok(ProfileCase::Degenerate { vanishing: profile.vanishing_rows(), lower_bound })
}

/// `S`, its row/column sum `s'`, and `Ŝ = s'(S + Sᵀ) − 2 SᵀS`.
#[derive(Debug, Clone, PartialEq)]
pub struct HessianData<T: Scalar> {
    pub s: DMatrix<T>,
    pub s_prime: T,
    pub s_hat: DMatrix<T>,
}

/// `S = (n−k) I + Σ_{m=1..k} P^m` with `(P X)_i = X_{i+1}`, so `S X = D`.
pub fn profile_matrix<T: Scalar>(spec: MapSpec) -> DMatrix<T> {
    let n = spec.n();
    let own = T::from_usize_lossy(n - spec.k());
    DMatrix::from_fn(n, n, |i, j| {
        let offset = (j + n - i) % n;
        if offset == 0 {
            own
        } else if offset <= spec.k() {
            T::one()
        } else {
            T::zero()
        }
    })
}

pub fn hessian_shat<T: Scalar>(spec: MapSpec) -> HessianData<T> {
    let s = profile_matrix::<T>(spec);
    let s_prime = (0..spec.n()).fold(T::zero(), |acc, j| acc + s[(0, j)]);
    let n = spec.n();
    let s_hat = DMatrix::from_fn(n, n, |i, j| {
        let gram = (0..n).fold(T::zero(), |acc, m| acc + s[(m, i)] * s[(m, j)]);
        s_prime * (s[(i, j)] + s[(j, i)]) - (gram + gram)
    });
    HessianData { s, s_prime, s_hat }
}

/// At the uniform point the Hessian of `f` equals `−Ŝ / n³`.
pub fn hessian_scale(spec: MapSpec) -> f64 {
    (spec.n() as f64).powi(-3)
}

/// Central finite-difference Hessian of `f` at `at`.
pub fn fd_hessian(spec: MapSpec, at: &[f64], h: f64) -> Result<DMatrix<f64>> {
    let n = spec.n();
    let f = |p: &[f64]| f_value(spec, p);
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let eval = |di: f64, dj: f64| -> Result<f64> {
                let mut p = at.to_vec();
                p[i] += di;
                p[j] += dj;
                f(&p)
            };
            let v = (eval(h, h)? - eval(h, -h)? - eval(-h, h)? + eval(-h, -h)?) / (4.0 * h * h);
            out[(i, j)] = v;
            out[(j, i)] = v;
        }
    }
    Ok(out)
}

/// `1 − (n−k−1)/(n−k)`, the Case-2 lower bound on the determinant of the
/// nonsingular block. Undefined for the reduction map.
pub fn case2_lower_bound<T: Scalar>(spec: MapSpec) -> Result<T> {
    if spec.is_reduction() {
        return Err(Error::InvalidSpec("the case-2 bound needs k < n-1 (it vanishes for the reduction map)".into()));
    }
    let m = T::from_usize_lossy(spec.n() - spec.k());
    Ok(T::one() - (m - T::one()) / m)
}
