//! Generalized Choi maps `τ_{n,k}` on `M_n`.
//!
//! * [`map`]: the maps, their Hadamard-product subtractions and Choi matrices.
//! * [`positivity`]: see-saw minimization of `⟨y, Φ(x̄ x̄†) y⟩` plus the
//!   determinant identity, the `f` function and its Hessian.
//! * [`spanning`]: zeros of the form and the rank of their span.
//! * [`optimality`]: the circulant constraint and gcd certificate.
//!
//! Exact computations run over any [`Scalar`]; use [`Rational`] for
//! fixture-grade results and `f64` for everything spectral.

pub mod error;
pub mod linalg;
pub mod map;
pub mod matrix;
pub mod optimality;
pub mod positivity;
pub mod scalar;
pub mod spanning;

pub use error::{Error, Result};
pub use map::{
    apply_perturbed, apply_reduction, apply_tau, choi_matrix, choi_of, HadamardPerturbation, LinearMap, MapSpec, TauMap,
};
pub use matrix::ComplexSquareMatrix;
pub use optimality::{
    admissible_subtraction_check, build_circulant, certify_optimality, circulant_spectrum, conjecture_probe,
    kernel_basis, CirculantConstraint, ConjectureReport, OptimalityCertificate, OptimalityVerdict, ProbeOptions,
    ProbeVerdict,
};
pub use positivity::{form_value, seesaw_minimize, PositivityReport, SeesawOptions, Verdict};
pub use scalar::{Rational, Scalar};
pub use spanning::{sigma_projector, spanning_rank, SpanningAnalysis, SpanningSet};

pub use num_complex::Complex64;

/// Double-precision complex matrix.
pub type Matrix = ComplexSquareMatrix<f64>;
/// Single-precision complex matrix.
pub type Matrix32 = ComplexSquareMatrix<f32>;
/// Exact rational complex matrix.
pub type ExactMatrix = ComplexSquareMatrix<Rational>;
pub type Perturbation = HadamardPerturbation<f64>;
pub type ExactPerturbation = HadamardPerturbation<Rational>;
pub type Map = TauMap<f64>;
pub type ExactMap = TauMap<Rational>;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
