use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::map::{HadamardPerturbation, LinearMap, MapSpec, TauMap};
use crate::matrix::ComplexSquareMatrix;
use crate::scalar::Scalar;

/// Evaluation of `τ_{n,k} − t v₁v₁†∘·` on `μ μ†`, `μ = (1,0,1,0,…)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenWitness<T: Scalar> {
    /// Eigenvalue of `N` on `(1,…,1)`, equal to `((n−k) − t)/2`.
    pub value: T,
    /// The even-rows/even-columns block `N = (2p−q) I − (1 + t/n) J`.
    pub block: DMatrix<T>,
    pub mu: Vec<T>,
}

/// Requires even `n = 2p` and `k = 2q`. A negative value refutes positivity
/// of the perturbed map, so positivity forces `t ≤ n − k`.
pub fn pro2_witness_value<T: Scalar>(n: usize, k: usize, t: T) -> Result<EvenWitness<T>> {
    if n % 2 != 0 || k % 2 != 0 {
        return Err(Error::InvalidSpec(format!("the alternating witness needs even n and k, got ({n}, {k})")));
    }
    let spec = MapSpec::new(n, k)?;
    let nn = T::from_usize_lossy(n);
    // t v₁v₁† has entries t(−1)^{i+j}/n; kept rational so exact scalars stay exact.
    let l = ComplexSquareMatrix::from_real_fn(n, |i, j| if (i + j) % 2 == 0 { t / nn } else { -t / nn });
    let map = TauMap::perturbed_unchecked(spec, HadamardPerturbation::Full(l));
    let mu: Vec<T> = (0..n).map(|i| if i % 2 == 0 { T::one() } else { T::zero() }).collect();
    let mu_c: Vec<Complex<T>> = mu.iter().map(|&m| Complex::new(m, T::zero())).collect();
    let image = map.apply(&ComplexSquareMatrix::outer(&mu_c, &mu_c)?)?;
    let p = n / 2;
    let block = DMatrix::from_fn(p, p, |i, j| image[(2 * i, 2 * j)].re);
    let value = (0..p).fold(T::zero(), |acc, j| acc + block[(0, j)]);
    Ok(EvenWitness { value, block, mu })
}
