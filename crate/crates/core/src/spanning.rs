//! Product vectors `x ⊗ y` on which the form `⟨y, τ(x̄ x̄†) y⟩` vanishes,
//! and the dimension of their span.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::map::{LinearMap, MapSpec, TauMap};
use crate::positivity::{form_value, polish, seesaw_starts, ProductForm, SeesawOptions};

/// Admission threshold on the form residual.
pub const ADMISSION_TOL: f64 = 1e-9;
/// Singular values above this fraction of the largest count toward the rank.
pub const RANK_REL_TOL: f64 = 1e-8;
/// Distance from `Σ_n` beyond which an admitted pair is an anomaly.
pub const SIGMA_TOL: f64 = 1e-9;

const POLISH_STEPS: usize = 500;
const POLISH_MOVE_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSource {
    Unimodular,
    Degenerate,
    Harvested,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProductPair {
    pub x: Vec<Complex64>,
    pub y: Vec<Complex64>,
    /// Form residual at `(x, y)`.
    pub value: f64,
    pub source: PairSource,
}

impl ProductPair {
    /// Unit vectors `x`, `y` with the residual evaluated on `map`.
    pub fn new<M: LinearMap<f64> + ?Sized>(
        map: &M,
        x: &[Complex64],
        y: &[Complex64],
        source: PairSource,
    ) -> Result<Self> {
        let (x, y) = (linalg::normalized(x), linalg::normalized(y));
        let value = form_value(map, &x, &y)?;
        Ok(Self { x, y, value, source })
    }

    pub fn tensor(&self) -> Vec<Complex64> {
        linalg::kron(&self.x, &self.y)
    }
}

#[derive(Debug, Clone)]
pub struct SpanningSet {
    pub pairs: Vec<ProductPair>,
    pub gram_rank: usize,
    pub singular_values: Vec<f64>,
    pub sigma_membership: Vec<bool>,
}

impl SpanningSet {
    /// Re-checks every pair (`|value| ≤ 1e−9`), then computes the rank of the
    /// stacked `x ⊗ y` rows and each pair's membership in `Σ_n`.
    pub fn from_pairs(n: usize, pairs: Vec<ProductPair>) -> Result<Self> {
        if let Some(bad) = pairs.iter().find(|p| p.value.abs() > ADMISSION_TOL) {
            return Err(Error::Domain(format!("pair with residual {:e} is not a zero of the form", bad.value)));
        }
        let rows: Vec<Vec<Complex64>> = pairs.iter().map(ProductPair::tensor).collect();
        let singular_values = linalg::singular_values(&rows);
        let gram_rank = linalg::numeric_rank(&singular_values, RANK_REL_TOL);
        let proj = sigma_projector(n);
        let sigma_membership = rows.iter().map(|r| sigma_distance(&proj, r) <= SIGMA_TOL).collect();
        Ok(Self { pairs, gram_rank, singular_values, sigma_membership })
    }

    pub fn outside_sigma(&self) -> usize {
        self.sigma_membership.iter().filter(|m| !**m).count()
    }
}

/// Orthogonal projector onto `Σ_n`, the span of `x ⊗ x̄` over unimodular `x`.
/// Its complement is `{Σ y_k e_k ⊗ e_k : Σ y_k = 0}`, so
/// `P = I − Π_diag + (1/n) d d†` with `d = Σ e_k ⊗ e_k`.
pub fn sigma_projector(n: usize) -> DMatrix<Complex64> {
    let dim = n * n;
    let on_diag = |r: usize| r / n == r % n;
    DMatrix::from_fn(dim, dim, |r, c| {
        let mut v = if r == c && !on_diag(r) { 1.0 } else { 0.0 };
        if on_diag(r) && on_diag(c) {
            v += 1.0 / n as f64;
        }
        Complex64::new(v, 0.0)
    })
}

/// `‖P v − v‖`
pub fn sigma_distance(proj: &DMatrix<Complex64>, v: &[Complex64]) -> f64 {
    let pv = proj * nalgebra::DVector::from_column_slice(v);
    pv.iter().zip(v).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
}

fn random_phases(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    (0..len).map(|_| Complex64::from_polar(1.0, rng.random_range(0.0..TAU))).collect()
}

/// Pairs `(x, x̄/‖x̄‖)` for random unimodular `x`.
pub fn unimodular_pairs(spec: MapSpec, samples: usize, seed: u64) -> Result<Vec<ProductPair>> {
    let map = TauMap::<f64>::new(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let x = random_phases(&mut rng, spec.n());
            ProductPair::new(&map, &x, &linalg::conj(&x), PairSource::Unimodular)
        })
        .collect()
}

/// For each offset `j`: `x` vanishes on positions `j..=j+k` and carries random
/// phases elsewhere, `y = e_j`. Then `D_j = 0` and `e_j` is in the kernel of
/// `τ(x̄ x̄†)`. Empty for the reduction map, where `x` would vanish.
pub fn degenerate_pairs(spec: MapSpec, seed: u64) -> Result<Vec<ProductPair>> {
    let (n, k) = (spec.n(), spec.k());
    if k + 1 >= n {
        return Ok(Vec::new());
    }
    let map = TauMap::<f64>::new(spec);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    (0..n)
        .map(|j| {
            let phases = random_phases(&mut rng, n - k - 1);
            let mut x = vec![Complex64::new(0.0, 0.0); n];
            for (m, p) in (k + 1..n).zip(phases) {
                x[spec.wrap(j, m)] = p;
            }
            let mut y = vec![Complex64::new(0.0, 0.0); n];
            y[j] = Complex64::new(1.0, 0.0);
            ProductPair::new(&map, &x, &y, PairSource::Degenerate)
        })
        .collect()
}

/// Zero-value see-saw witnesses, polished onto the zero set; at most `cap`.
/// Witnesses whose polish does not reach a fixed point are dropped: they sit
/// near a zero but not on one.
pub fn harvested_pairs(spec: MapSpec, seed: u64, starts: usize, cap: usize) -> Result<Vec<ProductPair>> {
    let map = TauMap::<f64>::new(spec);
    let form = ProductForm::new(&map)?;
    let opts = SeesawOptions { starts, ..SeesawOptions::with_seed(seed) };
    let mut out = Vec::new();
    for o in seesaw_starts(&map, &opts)? {
        if out.len() >= cap {
            break;
        }
        if o.value.abs() > ADMISSION_TOL {
            continue;
        }
        let p = polish(&form, &o.x, POLISH_STEPS, POLISH_MOVE_TOL);
        if !p.converged {
            continue;
        }
        let pair = ProductPair::new(&map, &p.x, &p.y, PairSource::Harvested)?;
        if pair.value.abs() <= ADMISSION_TOL {
            out.push(pair);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct SpanningAnalysis {
    pub spec: MapSpec,
    pub rank: usize,
    pub has_spanning_property: bool,
    pub set: SpanningSet,
    /// Admitted pairs outside `Σ_n` for a map where none should exist (`k < n−1`).
    pub anomalies: usize,
}

impl SpanningAnalysis {
    pub fn count(&self, source: PairSource) -> usize {
        self.set.pairs.iter().filter(|p| p.source == source).count()
    }
}

/// Pools unimodular, degenerate and harvested pairs and reports their rank.
/// `samples` defaults to `4n²`, which is also the harvest size.
pub fn spanning_rank_with(spec: MapSpec, seed: u64, samples: Option<usize>) -> Result<SpanningAnalysis> {
    if spec.k() == 0 {
        return Err(Error::InvalidSpec("spanning analysis needs k >= 1".into()));
    }
    let n = spec.n();
    let budget = 4 * n * n;
    let mut pairs = unimodular_pairs(spec, samples.unwrap_or(budget), seed)?;
    pairs.extend(degenerate_pairs(spec, seed)?);
    pairs.extend(harvested_pairs(spec, seed, budget, budget)?);
    let set = SpanningSet::from_pairs(n, pairs)?;
    let anomalies = if spec.is_reduction() { 0 } else { set.outside_sigma() };
    Ok(SpanningAnalysis { spec, rank: set.gram_rank, has_spanning_property: set.gram_rank == n * n, set, anomalies })
}

pub fn spanning_rank(spec: MapSpec, seed: u64) -> Result<(usize, bool)> {
    let a = spanning_rank_with(spec, seed, None)?;
    Ok((a.rank, a.has_spanning_property))
}
