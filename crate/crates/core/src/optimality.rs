//! Optimality certificates for `τ_{n,k}`.
//!
//! A CP map that can be subtracted from `τ_{n,k}` while keeping it positive
//! must be a Schur multiplier `αα†∘X` with `M α = 0`, where `M` is the 0/1
//! circulant whose first row starts with `n − k` ones. `M` has
//! `gcd(n, k) − 1` zero eigenvalues, so `gcd(n, k) = 1` certifies optimality.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::map::{HadamardPerturbation, MapSpec, TauMap};
use crate::matrix::ComplexSquareMatrix;
use crate::positivity::{pro2_witness_value, seesaw_minimize, PositivityReport, SeesawOptions};
use crate::scalar::{Rational, Scalar};

/// See-saw values above `-PROBE_TOL` count as evidence of positivity in probes.
pub const PROBE_TOL: f64 = 1e-7;
/// Default step past `n − k` at which the alternating witness is re-evaluated.
pub const DEFAULT_EPSILON: f64 = 0.1;

const ADMISSIBLE_PSD_TOL: f64 = 1e-10;
const ADMISSIBLE_SUM_TOL: f64 = 1e-10;
const ADMISSIBLE_ROW_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CirculantConstraint {
    pub spec: MapSpec,
    /// `m_0 = … = m_{n−k−1} = 1`, the rest 0.
    pub first_row: Vec<u8>,
    pub matrix: DMatrix<f64>,
    pub omega: Complex64,
    /// Closed-form eigenvalues `λ_j = Σ_{m<n−k} ω^{jm}`.
    pub lambda: Vec<Complex64>,
    pub kernel_basis: Vec<Vec<Complex64>>,
}

impl CirculantConstraint {
    /// Integer determinant, computed exactly.
    pub fn determinant(&self) -> i64 {
        circulant_determinant(self.spec)
    }
}

fn require_shift(spec: MapSpec) -> Result<()> {
    if spec.k() == 0 {
        return Err(Error::InvalidSpec(
            "k = 0 gives a completely positive map; the constraint system needs k >= 1".into(),
        ));
    }
    Ok(())
}

/// `M[i][j] = m[(j − i) mod n]`, over any scalar.
pub fn circulant_matrix<T: Scalar>(spec: MapSpec) -> DMatrix<T> {
    let n = spec.n();
    let ones = n - spec.k();
    DMatrix::from_fn(n, n, |i, j| if (j + n - i) % n < ones { T::one() } else { T::zero() })
}

/// Exact determinant of `M`.
pub fn circulant_determinant(spec: MapSpec) -> i64 {
    let m = circulant_matrix::<Rational>(spec);
    let det = ComplexSquareMatrix::from_real_fn(spec.n(), |i, j| m[(i, j)]).determinant();
    debug_assert!(det.im == Rational::from_integer(0) && det.re.is_integer());
    det.re.to_integer()
}

fn omega(n: usize) -> Complex64 {
    Complex64::from_polar(1.0, TAU / n as f64)
}

/// `ω^e` reduced modulo `n` before evaluation.
fn omega_pow(n: usize, e: usize) -> Complex64 {
    Complex64::from_polar(1.0, TAU * (e % n) as f64 / n as f64)
}

pub fn build_circulant(spec: MapSpec) -> Result<CirculantConstraint> {
    require_shift(spec)?;
    let n = spec.n();
    let first_row = (0..n).map(|j| u8::from(j < n - spec.k())).collect();
    let lambda = (0..n).map(|j| (0..n - spec.k()).map(|m| omega_pow(n, j * m)).sum()).collect();
    Ok(CirculantConstraint {
        spec,
        first_row,
        matrix: circulant_matrix(spec),
        omega: omega(n),
        lambda,
        kernel_basis: kernel_basis(spec)?,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CirculantSpectrum {
    pub lambda: Vec<Complex64>,
    /// `j ≠ 0` with `k·j ≡ 0 (mod n)`, i.e. `j = r·n/d`; these are exactly
    /// the zero eigenvalues.
    pub zero_indices: Vec<usize>,
}

pub fn circulant_spectrum(c: &CirculantConstraint) -> CirculantSpectrum {
    let (n, k) = (c.spec.n(), c.spec.k());
    let zero_indices = (1..n).filter(|j| (k * j) % n == 0).collect();
    CirculantSpectrum { lambda: c.lambda.clone(), zero_indices }
}

/// Eigenvalues of `M` from a general (Schur) eigensolve.
pub fn numeric_spectrum(c: &CirculantConstraint) -> Vec<Complex64> {
    linalg::real_eigenvalues(&c.matrix)
}

/// Largest distance in a greedy nearest-neighbour matching of two multisets.
pub fn spectral_mismatch(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut free: Vec<Complex64> = b.to_vec();
    let mut worst = 0.0f64;
    for z in a {
        let (idx, d) = free
            .iter()
            .enumerate()
            .map(|(i, w)| (i, (z - w).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("same length");
        worst = worst.max(d);
        free.swap_remove(idx);
    }
    worst
}

/// Kernel dimension of `M` from its singular values (relative threshold 1e−8).
pub fn numeric_kernel_dim(c: &CirculantConstraint) -> usize {
    let sv: Vec<f64> = c.matrix.clone().singular_values().iter().copied().collect();
    let top = sv.iter().copied().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s <= 1e-8 * top).count()
}

/// Orthonormal kernel vectors `v_r = n^{-1/2} (ω^{j_r m})_m`, `j_r = r·n/d`,
/// `r = 1, …, d−1`. Empty when `gcd(n, k) = 1`.
pub fn kernel_basis(spec: MapSpec) -> Result<Vec<Vec<Complex64>>> {
    require_shift(spec)?;
    let n = spec.n();
    let d = spec.gcd();
    let scale = 1.0 / (n as f64).sqrt();
    Ok((1..d)
        .map(|r| {
            let j = r * n / d;
            (0..n).map(|m| omega_pow(n, j * m) * scale).collect()
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OptimalityVerdict {
    OptimalCertified,
    NotCertified,
}

impl OptimalityVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            OptimalityVerdict::OptimalCertified => "optimal-certified",
            OptimalityVerdict::NotCertified => "not-certified",
        }
    }
}

#[derive(Debug, Clone)]
pub struct OptimalityCertificate {
    pub spec: MapSpec,
    pub gcd: usize,
    pub kernel_dim: usize,
    pub verdict: OptimalityVerdict,
    pub constraint: CirculantConstraint,
    pub spectrum: CirculantSpectrum,
    /// Rank-one subtractions along each kernel vector, weight 0.
    pub candidate_subtractions: Vec<HadamardPerturbation<f64>>,
    pub evidence: Option<PositivityReport>,
}

/// The verdict depends only on the integer `gcd(n, k)`.
pub fn certify_optimality(spec: MapSpec) -> Result<OptimalityCertificate> {
    let constraint = build_circulant(spec)?;
    let spectrum = circulant_spectrum(&constraint);
    let gcd = spec.gcd();
    let verdict = if gcd == 1 { OptimalityVerdict::OptimalCertified } else { OptimalityVerdict::NotCertified };
    let candidate_subtractions =
        constraint.kernel_basis.iter().map(|v| HadamardPerturbation::rank_one(v.clone(), 0.0)).collect();
    Ok(OptimalityCertificate {
        spec,
        gcd,
        kernel_dim: gcd - 1,
        verdict,
        constraint,
        spectrum,
        candidate_subtractions,
        evidence: None,
    })
}

/// Whether `X ↦ L∘X` is a CP map vanishing on every `x ⊗ x̄ ∈ Σ_n`:
/// `L` PSD, `Σ L_kl = 0`, and hence `L𝟙 = 0`.
pub fn admissible_subtraction_check(pert: &HadamardPerturbation<f64>, n: usize) -> Result<bool> {
    if pert.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: pert.dim() });
    }
    let l = pert.matrix();
    if !l.is_hermitian(1e-12) {
        return Ok(false);
    }
    let lowest = linalg::hermitian_eigenvalues(l.as_dmatrix())[0];
    let total = l.entry_sum();
    let row = linalg::norm(&l.mul_vec(&crate::map::ones(n))?);
    Ok(lowest >= -ADMISSIBLE_PSD_TOL
        && total.re <= ADMISSIBLE_SUM_TOL
        && total.im.abs() <= ADMISSIBLE_SUM_TOL
        && row <= ADMISSIBLE_ROW_TOL)
}

#[derive(Debug, Clone)]
pub struct ProbeOptions {
    pub seesaw: SeesawOptions,
    /// Subtraction weight; defaults to `n − k`.
    pub t: Option<f64>,
    pub epsilon: f64,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        Self { seesaw: SeesawOptions::default(), t: None, epsilon: DEFAULT_EPSILON }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeVerdict {
    EvidencePositive,
    CounterexampleFound,
}

impl ProbeVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProbeVerdict::EvidencePositive => "evidence-positive",
            ProbeVerdict::CounterexampleFound => "counterexample-found",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ConjectureReport {
    pub spec: MapSpec,
    pub t: f64,
    /// Largest weight the alternating witness allows, `n − k`.
    pub t_max_witnessed: f64,
    pub epsilon: f64,
    pub witness_at_t: f64,
    pub witness_at_bound: f64,
    pub witness_above_bound: f64,
    pub seesaw: PositivityReport,
    pub verdict: ProbeVerdict,
    /// `μ = (1,0,1,0,…)` when the witness itself refutes positivity.
    pub witness_mu: Option<Vec<f64>>,
}

/// Probes `τ_{n,k} − t v₁v₁†∘X` for `gcd(n, k) = 2`. Never claims a proof:
/// the result is either evidence or an explicit counterexample.
pub fn conjecture_probe(spec: MapSpec, opts: &ProbeOptions) -> Result<ConjectureReport> {
    if spec.k() == 0 || spec.gcd() != 2 {
        return Err(Error::InvalidSpec(format!("the conjecture probe needs gcd(n, k) = 2, got {}", spec.gcd())));
    }
    let (n, k) = (spec.n(), spec.k());
    let bound = (n - k) as f64;
    let t = opts.t.unwrap_or(bound);
    if !(t >= 0.0) {
        return Err(Error::InvalidPerturbation(format!("weight t must be non-negative, got {t}")));
    }
    let v1 = kernel_basis(spec)?.remove(0);
    let map = TauMap::perturbed(spec, HadamardPerturbation::rank_one(v1, t))?;
    let seesaw = seesaw_minimize(&map, &opts.seesaw)?;
    let witness_at_t = pro2_witness_value(n, k, t)?.value;
    let witness_at_bound = pro2_witness_value(n, k, bound)?.value;
    let witness_above_bound = pro2_witness_value(n, k, bound + opts.epsilon)?.value;
    let witness_refutes = witness_at_t < -1e-12;
    let verdict = if witness_refutes || seesaw.min_value < -PROBE_TOL {
        ProbeVerdict::CounterexampleFound
    } else {
        ProbeVerdict::EvidencePositive
    };
    let witness_mu = witness_refutes.then(|| (0..n).map(|i| if i % 2 == 0 { 1.0 } else { 0.0 }).collect());
    Ok(ConjectureReport {
        spec,
        t,
        t_max_witnessed: bound,
        epsilon: opts.epsilon,
        witness_at_t,
        witness_at_bound,
        witness_above_bound,
        seesaw,
        verdict,
        witness_mu,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub weights: Vec<f64>,
    pub min_value: f64,
}

/// Experimental: see-saw minimum of `τ − Σ_r a_r v_r v_r†∘X` for every
/// weight vector in the Cartesian grid `grid^(d−1)`. Nothing is certified.
pub fn kernel_weight_sweep(spec: MapSpec, grid: &[f64], opts: &SeesawOptions) -> Result<Vec<SweepPoint>> {
    let basis = kernel_basis(spec)?;
    if basis.is_empty() {
        return Err(Error::InvalidSpec("gcd(n, k) = 1: the constraint kernel is trivial".into()));
    }
    if grid.is_empty() || grid.iter().any(|a| !(*a >= 0.0)) {
        return Err(Error::InvalidPerturbation("grid weights must be non-empty and non-negative".into()));
    }
    let n = spec.n();
    let axes = basis.len();
    let total = grid.len().pow(axes as u32);
    (0..total)
        .map(|mut idx| {
            let weights: Vec<f64> = (0..axes)
                .map(|_| {
                    let w = grid[idx % grid.len()];
                    idx /= grid.len();
                    w
                })
                .collect();
            let l = basis.iter().zip(&weights).fold(ComplexSquareMatrix::zeros(n), |acc, (v, a)| {
                acc.try_add(&ComplexSquareMatrix::outer(v, v).expect("same length").scale(*a)).expect("same dim")
            });
            let map = TauMap::perturbed(spec, HadamardPerturbation::Full(l))?;
            Ok(SweepPoint { weights, min_value: seesaw_minimize(&map, opts)?.min_value })
        })
        .collect()
}
