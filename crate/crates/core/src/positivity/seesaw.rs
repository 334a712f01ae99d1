//! Multistart see-saw minimization of `⟨y, Φ(x̄ x̄†) y⟩` over unit vectors.
//!
//! Each half step is an exact minimization (a smallest eigenvector), so the
//! objective never increases. Start `s` draws its initial `x` from a ChaCha
//! stream keyed by `(seed, s)`, which makes the report independent of how
//! many threads run the starts.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::error::Result;
use crate::linalg;
use crate::map::LinearMap;
use crate::positivity::form::{form_value, ProductForm};

/// Values below `-tol` are reported as a negative certificate.
pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_STARTS: usize = 64;
pub const DEFAULT_MAX_SWEEPS: usize = 500;
pub const DEFAULT_SWEEP_TOL: f64 = 1e-12;

/// Slack allowed when checking monotonicity against eigensolver rounding.
const MONOTONE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SeesawOptions {
    pub starts: usize,
    pub seed: u64,
    pub tol: f64,
    pub max_sweeps: usize,
    pub sweep_tol: f64,
    /// Caps the worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for SeesawOptions {
    fn default() -> Self {
        Self {
            starts: DEFAULT_STARTS,
            seed: 0,
            tol: DEFAULT_TOL,
            max_sweeps: DEFAULT_MAX_SWEEPS,
            sweep_tol: DEFAULT_SWEEP_TOL,
            threads: None,
        }
    }
}

impl SeesawOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    PositiveEvidence,
    NegativeCertificate,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::PositiveEvidence => "positive-evidence",
            Verdict::NegativeCertificate => "negative-certificate",
        }
    }
}

/// Outcome of one start.
#[derive(Debug, Clone)]
pub struct StartOutcome {
    pub start: usize,
    pub value: f64,
    pub x: Vec<Complex64>,
    pub y: Vec<Complex64>,
    pub sweeps: usize,
    /// Objective after every half step, first entry after the first y-step.
    pub trace: Vec<f64>,
}

impl StartOutcome {
    pub fn is_monotone(&self) -> bool {
        self.trace.windows(2).all(|w| w[1] <= w[0] + MONOTONE_SLACK)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PositivityReport {
    pub verdict: Verdict,
    /// Smallest form value found; never a proof of positivity.
    pub min_value: f64,
    pub witness_x: Vec<Complex64>,
    pub witness_y: Vec<Complex64>,
    pub starts_used: usize,
    /// Total sweeps over all starts.
    pub iterations: usize,
    pub seed: u64,
    pub best_start: usize,
}

/// Complex-Gaussian unit vector for start `start`.
pub fn initial_vector(n: usize, seed: u64, start: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(start as u64);
    let v: Vec<Complex64> = (0..n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    linalg::normalized(&v)
}

fn eigvec_step(m: &DMatrix<Complex64>) -> (f64, Vec<Complex64>) {
    linalg::min_eigenpair(m)
}

/// Runs the alternation from `x0` until one full sweep improves the objective
/// by less than `sweep_tol`, or `max_sweeps` is reached.
pub fn run_start(form: &ProductForm, x0: Vec<Complex64>, opts: &SeesawOptions, start: usize) -> StartOutcome {
    let mut x = x0;
    let mut y = Vec::new();
    let mut trace = Vec::with_capacity(2 * opts.max_sweeps.min(64));
    let mut prev = f64::INFINITY;
    let mut sweeps = 0;
    let mut value = f64::INFINITY;
    while sweeps < opts.max_sweeps {
        sweeps += 1;
        let (vy, ny) = eigvec_step(&form.image(&x));
        debug_assert!(vy <= value + MONOTONE_SLACK, "y-step increased objective: {value} -> {vy}");
        trace.push(vy);
        y = ny;
        let (vx, nx) = eigvec_step(&form.dual(&y));
        debug_assert!(vx <= vy + MONOTONE_SLACK, "x-step increased objective: {vy} -> {vx}");
        trace.push(vx);
        x = nx;
        value = vx;
        if prev - value < opts.sweep_tol {
            break;
        }
        prev = value;
    }
    StartOutcome { start, value, x, y, sweeps, trace }
}

fn in_pool<R: Send>(threads: Option<usize>, job: impl FnOnce() -> R + Send) -> R {
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build().expect("thread pool").install(job),
        None => job(),
    }
}

/// Every start's outcome, in start order. Values are re-evaluated through
/// [`form_value`] so they agree with the direct form at the witness.
pub fn seesaw_starts<M: LinearMap<f64> + Sync + ?Sized>(map: &M, opts: &SeesawOptions) -> Result<Vec<StartOutcome>> {
    let form = ProductForm::new(map)?;
    let n = form.dim();
    let outcomes: Vec<StartOutcome> = in_pool(opts.threads, || {
        (0..opts.starts).into_par_iter().map(|s| run_start(&form, initial_vector(n, opts.seed, s), opts, s)).collect()
    });
    outcomes
        .into_iter()
        .map(|mut o| {
            o.value = form_value(map, &o.x, &o.y)?;
            Ok(o)
        })
        .collect()
}

/// Minimizes the product form from `opts.starts` seeded starts and keeps the
/// smallest value (ties go to the lowest start index).
pub fn seesaw_minimize<M: LinearMap<f64> + Sync + ?Sized>(map: &M, opts: &SeesawOptions) -> Result<PositivityReport> {
    let starts = opts.starts.max(1);
    let opts = SeesawOptions { starts, ..opts.clone() };
    let outcomes = seesaw_starts(map, &opts)?;
    let iterations = outcomes.iter().map(|o| o.sweeps).sum();
    let best =
        outcomes.into_iter().reduce(|best, o| if o.value < best.value { o } else { best }).expect("at least one start");
    let verdict = if best.value < -opts.tol { Verdict::NegativeCertificate } else { Verdict::PositiveEvidence };
    Ok(PositivityReport {
        verdict,
        min_value: best.value,
        witness_x: best.x,
        witness_y: best.y,
        starts_used: starts,
        iterations,
        seed: opts.seed,
        best_start: best.start,
    })
}

/// Result of [`polish`].
#[derive(Debug, Clone)]
pub struct Polished {
    pub x: Vec<Complex64>,
    pub y: Vec<Complex64>,
    pub value: f64,
    pub steps: usize,
    /// The last step moved `x` by less than the requested tolerance.
    pub converged: bool,
}

/// Continues the alternation until the iterate itself stops moving
/// (projector distance below `move_tol`). Objective-based stopping leaves
/// witnesses about `sqrt(value)` away from the zero set; this drives them
/// onto it to rounding accuracy. Near degenerate zeros such as `x = e_j`
/// the approach is sublinear and the step cap is hit instead.
pub fn polish(form: &ProductForm, x0: &[Complex64], max_steps: usize, move_tol: f64) -> Polished {
    let mut x = linalg::normalized(x0);
    let (_, mut y) = eigvec_step(&form.image(&x));
    let mut steps = 0;
    let mut converged = false;
    while steps < max_steps {
        let (_, nx) = eigvec_step(&form.dual(&y));
        let (_, ny) = eigvec_step(&form.image(&nx));
        let moved = linalg::projector_distance(&x, &nx);
        x = nx;
        y = ny;
        steps += 1;
        if moved < move_tol {
            converged = true;
            break;
        }
    }
    let value = form.value(&x, &y);
    Polished { x, y, value, steps, converged }
}
