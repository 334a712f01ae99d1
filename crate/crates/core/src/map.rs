//! The generalized Choi maps `τ_{n,k}`, the reduction map, and Hadamard
//! (Schur) product subtractions `X ↦ τ_{n,k}(X) − L∘X`.
//!
//! All index arithmetic is cyclic modulo `n`.

use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::ComplexSquareMatrix;
use crate::scalar::Scalar;

/// Tolerance for the PSD and zero-sum conditions on a perturbation.
pub const PERTURBATION_TOL: f64 = 1e-10;

/// The pair `(n, k)` naming `τ_{n,k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MapSpec {
    n: usize,
    k: usize,
}

impl MapSpec {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSpec(format!("n must be at least 2, got {n}")));
        }
        if k >= n {
            return Err(Error::InvalidSpec(format!("k out of range: k = {k} but must satisfy 0 <= k <= {}", n - 1)));
        }
        Ok(Self { n, k })
    }

    /// The reduction map `R_n = τ_{n,n−1}`.
    pub fn reduction(n: usize) -> Result<Self> {
        Self::new(n, n.saturating_sub(1))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_reduction(&self) -> bool {
        self.k == self.n - 1
    }

    pub fn is_completely_positive(&self) -> bool {
        self.k == 0
    }

    /// `gcd(n, k)` in exact integer arithmetic.
    pub fn gcd(&self) -> usize {
        self.n.gcd(&self.k)
    }

    /// `(i + offset) mod n`
    pub fn wrap(&self, i: usize, offset: usize) -> usize {
        (i + offset) % self.n
    }
}

impl std::fmt::Display for MapSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "tau({}, {})", self.n, self.k)
    }
}

/// A completely positive subtraction `Λ(X) = L∘X`.
#[derive(Debug, Clone, PartialEq)]
pub enum HadamardPerturbation<T: Scalar> {
    Full(ComplexSquareMatrix<T>),
    /// `L = weight · α α†`
    RankOne {
        alpha: Vec<Complex<T>>,
        weight: T,
    },
}

impl<T: Scalar> HadamardPerturbation<T> {
    pub fn rank_one(alpha: Vec<Complex<T>>, weight: T) -> Self {
        Self::RankOne { alpha, weight }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Full(l) => l.dim(),
            Self::RankOne { alpha, .. } => alpha.len(),
        }
    }

    /// The Schur multiplier `L`.
    pub fn matrix(&self) -> ComplexSquareMatrix<T> {
        match self {
            Self::Full(l) => l.clone(),
            Self::RankOne { alpha, weight } => {
                ComplexSquareMatrix::from_fn(alpha.len(), |i, j| alpha[i] * alpha[j].conj() * *weight)
            }
        }
    }

    /// Checks that `L` is PSD and that its entries sum to zero.
    pub fn validate(&self) -> Result<()> {
        let l = self.matrix();
        let psd = match self {
            Self::Full(l) => l.is_hermitian(1e-12) && T::hermitian_is_psd(l, PERTURBATION_TOL),
            Self::RankOne { weight, .. } => *weight >= T::zero(),
        };
        if !psd {
            return Err(Error::InvalidPerturbation("multiplier L is not positive semidefinite".into()));
        }
        let total = l.entry_sum();
        let slack = T::slack(PERTURBATION_TOL);
        if total.re.abs() > slack || total.im.abs() > slack {
            return Err(Error::InvalidPerturbation(format!(
                "entries of L must sum to zero, got {:e}",
                total.re.approx()
            )));
        }
        Ok(())
    }
}

/// A linear map `M_n → M_n`.
pub trait LinearMap<T: Scalar> {
    fn dim(&self) -> usize;

    fn apply(&self, x: &ComplexSquareMatrix<T>) -> Result<ComplexSquareMatrix<T>>;
}

/// `τ_{n,k}`, optionally with a Hadamard product subtracted.
#[derive(Debug, Clone, PartialEq)]
pub struct TauMap<T: Scalar> {
    spec: MapSpec,
    subtraction: Option<ComplexSquareMatrix<T>>,
    perturbation: Option<HadamardPerturbation<T>>,
}

impl<T: Scalar> TauMap<T> {
    pub fn new(spec: MapSpec) -> Self {
        Self { spec, subtraction: None, perturbation: None }
    }

    /// `τ_{n,k} − L∘·`; the perturbation must satisfy its invariants.
    pub fn perturbed(spec: MapSpec, pert: HadamardPerturbation<T>) -> Result<Self> {
        if pert.dim() != spec.n() {
            return Err(Error::DimensionMismatch { expected: spec.n(), found: pert.dim() });
        }
        pert.validate()?;
        Ok(Self::perturbed_unchecked(spec, pert))
    }

    pub(crate) fn perturbed_unchecked(spec: MapSpec, pert: HadamardPerturbation<T>) -> Self {
        Self { spec, subtraction: Some(pert.matrix()), perturbation: Some(pert) }
    }

    pub fn spec(&self) -> MapSpec {
        self.spec
    }

    pub fn perturbation(&self) -> Option<&HadamardPerturbation<T>> {
        self.perturbation.as_ref()
    }
}

impl<T: Scalar> LinearMap<T> for TauMap<T> {
    fn dim(&self) -> usize {
        self.spec.n()
    }

    fn apply(&self, x: &ComplexSquareMatrix<T>) -> Result<ComplexSquareMatrix<T>> {
        let out = apply_tau(self.spec, x)?;
        match &self.subtraction {
            None => Ok(out),
            Some(l) => out.try_sub(&l.hadamard(x)?),
        }
    }
}

impl<T: Scalar> LinearMap<T> for HadamardPerturbation<T> {
    fn dim(&self) -> usize {
        HadamardPerturbation::dim(self)
    }

    fn apply(&self, x: &ComplexSquareMatrix<T>) -> Result<ComplexSquareMatrix<T>> {
        self.matrix().hadamard(x)
    }
}

/// `[τ(X)]_ii = (n−k−1) x_ii + x_{i+1,i+1} + … + x_{i+k,i+k}`, `[τ(X)]_ij = −x_ij`.
pub fn apply_tau<T: Scalar>(spec: MapSpec, x: &ComplexSquareMatrix<T>) -> Result<ComplexSquareMatrix<T>> {
    let n = spec.n();
    x.check_dim(n)?;
    let own = T::from_usize_lossy(n - spec.k() - 1);
    Ok(ComplexSquareMatrix::from_fn(n, |i, j| {
        if i == j {
            (1..=spec.k()).fold(x[(i, i)] * own, |acc, m| {
                let d = spec.wrap(i, m);
                acc + x[(d, d)]
            })
        } else {
            -x[(i, j)]
        }
    }))
}

/// `R_n(X) = Tr(X)·I − X`.
pub fn apply_reduction<T: Scalar>(n: usize, x: &ComplexSquareMatrix<T>) -> Result<ComplexSquareMatrix<T>> {
    x.check_dim(n)?;
    let tr = x.trace();
    Ok(ComplexSquareMatrix::from_fn(n, |i, j| {
        let id = if i == j { tr } else { Complex::zero() };
        id - x[(i, j)]
    }))
}

/// `τ_{n,k}(X) − L∘X`.
pub fn apply_perturbed<T: Scalar>(
    spec: MapSpec,
    pert: &HadamardPerturbation<T>,
    x: &ComplexSquareMatrix<T>,
) -> Result<ComplexSquareMatrix<T>> {
    TauMap::perturbed(spec, pert.clone())?.apply(x)
}

/// Choi matrix of `map`: the `n² × n²` block matrix whose `(i, j)` block is `Φ(e_ij)`.
pub fn choi_of<T: Scalar, M: LinearMap<T> + ?Sized>(map: &M) -> Result<ComplexSquareMatrix<T>> {
    let n = map.dim();
    let mut c = ComplexSquareMatrix::zeros(n * n);
    for i in 0..n {
        for j in 0..n {
            let block = map.apply(&ComplexSquareMatrix::unit(n, i, j))?;
            for a in 0..n {
                for b in 0..n {
                    c[(i * n + a, j * n + b)] = block[(a, b)];
                }
            }
        }
    }
    Ok(c)
}

/// Choi matrix of `τ_{n,k}` or of its perturbed variant.
pub fn choi_matrix<T: Scalar>(spec: MapSpec, pert: Option<&HadamardPerturbation<T>>) -> Result<ComplexSquareMatrix<T>> {
    match pert {
        None => choi_of(&TauMap::<T>::new(spec)),
        Some(p) => choi_of(&TauMap::perturbed(spec, p.clone())?),
    }
}

/// `scale · (1, −1, 1, −1, …)`; with `scale = n^{-1/2}` this is the kernel vector `v₁` for even `n`.
pub fn alternating<T: Scalar>(n: usize, scale: T) -> Vec<Complex<T>> {
    (0..n)
        .map(|i| {
            let s = if i % 2 == 0 { scale } else { -scale };
            Complex::new(s, T::zero())
        })
        .collect()
}

pub fn ones<T: Scalar>(n: usize) -> Vec<Complex<T>> {
    vec![Complex::one(); n]
}
