//! One function per subcommand. Each returns the `result` object of the
//! report, plus an anomaly when a numerical invariant failed.

use posmap::optimality::{kernel_weight_sweep, numeric_kernel_dim, numeric_spectrum, spectral_mismatch};
use posmap::spanning::{spanning_rank_with, PairSource};
use posmap::{
    certify_optimality, conjecture_probe, kernel_basis, seesaw_minimize, LinearMap, Map, MapSpec, Perturbation,
    PositivityReport, ProbeOptions,
};
use serde_json::Value;

use crate::config::{CommandKind, PerturbRequest, RunConfig};
use crate::error::{self, CliError};
use crate::matrix_io::{matrix_value, read_matrix};
use crate::report::{complex_vec, real_vec, Obj, Report};

/// Tolerance on `X − X†` for matrices read by `apply`.
pub const HERMITIAN_TOL: f64 = 1e-9;
/// Closed-form vs numeric circulant spectrum.
pub const SPECTRUM_TOL: f64 = 1e-10;

#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    /// Set when the report was produced but an invariant check failed.
    pub anomaly: Option<CliError>,
}

pub fn execute(config: &RunConfig) -> Result<Outcome, CliError> {
    let (result, anomaly) = match config.command {
        CommandKind::Apply => (cmd_apply(config)?, None),
        CommandKind::Positivity => (cmd_positivity(config)?, None),
        CommandKind::Spanning => cmd_spanning(config)?,
        CommandKind::Certify => cmd_certify(config)?,
        CommandKind::Conjecture => (cmd_conjecture(config)?, None),
    };
    Ok(Outcome { report: Report::new(config, result), anomaly })
}

fn build_perturbation(spec: MapSpec, req: &PerturbRequest) -> Result<Perturbation, CliError> {
    match req {
        PerturbRequest::Kernel { index, t } => {
            let basis = kernel_basis(spec).map_err(error::config)?;
            let alpha = basis.get(index - 1).cloned().ok_or_else(|| {
                CliError::Config(format!(
                    "v{index} does not exist: the constraint kernel of {spec} has dimension {}",
                    basis.len()
                ))
            })?;
            Ok(Perturbation::rank_one(alpha, *t))
        }
        PerturbRequest::Matrix { path } => {
            let l = read_matrix(path)?;
            if l.dim() != spec.n() {
                return Err(CliError::Input(format!(
                    "perturbation matrix is {0}x{0}, expected n = {1}",
                    l.dim(),
                    spec.n()
                )));
            }
            Ok(Perturbation::Full(l))
        }
    }
}

fn build_map(config: &RunConfig) -> Result<Map, CliError> {
    match &config.perturb {
        None => Ok(Map::new(config.spec)),
        Some(req) => {
            let pert = build_perturbation(config.spec, req)?;
            let code = match req {
                PerturbRequest::Kernel { .. } => error::config,
                PerturbRequest::Matrix { .. } => error::input,
            };
            Map::perturbed(config.spec, pert).map_err(code)
        }
    }
}

fn map_value(map: &Map) -> Value {
    let spec = map.spec();
    let pert = match map.perturbation() {
        None => Value::Null,
        Some(Perturbation::RankOne { alpha, weight }) => {
            Obj::new().set("kind", "rank-one").num("t", *weight).set("alpha", complex_vec(alpha)).into()
        }
        Some(Perturbation::Full(l)) => Obj::new().set("kind", "matrix").set("l", matrix_value(l)).into(),
    };
    Obj::new().set("n", spec.n()).set("k", spec.k()).set("perturbation", pert).into()
}

fn reject_perturbation(config: &RunConfig) -> Result<(), CliError> {
    if config.perturb.is_some() {
        return Err(CliError::Config(format!("{} does not take a perturbation", config.command.as_str())));
    }
    Ok(())
}

fn reject_experimental(config: &RunConfig) -> Result<(), CliError> {
    if config.experimental || config.grid.is_some() {
        return Err(CliError::Config(format!(
            "--experimental/--grid apply only to conjecture, not {}",
            config.command.as_str()
        )));
    }
    Ok(())
}

pub fn cmd_apply(config: &RunConfig) -> Result<Value, CliError> {
    reject_experimental(config)?;
    let path = config.input.as_ref().ok_or_else(|| CliError::Config("apply needs --input <matrix.json>".into()))?;
    let x = read_matrix(path)?;
    if x.dim() != config.spec.n() {
        return Err(CliError::Input(format!("input matrix is {0}x{0}, expected n = {1}", x.dim(), config.spec.n())));
    }
    let x = x.require_hermitian(HERMITIAN_TOL).map_err(error::input)?;
    let map = build_map(config)?;
    let out = map.apply(&x).map_err(error::input)?;
    Ok(Obj::new().set("map", map_value(&map)).set("output", matrix_value(&out)).into())
}

pub fn positivity_value(report: &PositivityReport) -> Value {
    Obj::new()
        .set("verdict", report.verdict.as_str())
        .num("min_value", report.min_value)
        .set("witness_x", complex_vec(&report.witness_x))
        .set("witness_y", complex_vec(&report.witness_y))
        .set("starts_used", report.starts_used)
        .set("iterations", report.iterations)
        .set("seed", report.seed)
        .set("best_start", report.best_start)
        .into()
}

pub fn cmd_positivity(config: &RunConfig) -> Result<Value, CliError> {
    reject_experimental(config)?;
    let map = build_map(config)?;
    let report = seesaw_minimize(&map, &config.seesaw_options()).map_err(error::config)?;
    Ok(Obj::new().set("map", map_value(&map)).set("positivity", positivity_value(&report)).into())
}

pub fn cmd_spanning(config: &RunConfig) -> Result<(Value, Option<CliError>), CliError> {
    reject_perturbation(config)?;
    reject_experimental(config)?;
    let a = spanning_rank_with(config.spec, config.seed, Some(config.samples)).map_err(error::config)?;
    let n = config.spec.n();
    let value = Obj::new()
        .set("rank", a.rank)
        .set("spanning_property", a.has_spanning_property)
        .set("sigma_dimension", n * n - n + 1)
        .set("full_dimension", n * n)
        .set(
            "pairs",
            Obj::new()
                .set("unimodular", a.count(PairSource::Unimodular))
                .set("degenerate", a.count(PairSource::Degenerate))
                .set("harvested", a.count(PairSource::Harvested))
                .set("outside_sigma", a.set.outside_sigma()),
        )
        .set("singular_values", real_vec(&a.set.singular_values))
        .into();
    let anomaly = (a.anomalies > 0)
        .then(|| CliError::Anomaly(format!("{} admitted pairs of {} lie outside Sigma_n", a.anomalies, config.spec)));
    Ok((value, anomaly))
}

pub fn cmd_certify(config: &RunConfig) -> Result<(Value, Option<CliError>), CliError> {
    reject_perturbation(config)?;
    reject_experimental(config)?;
    let cert = certify_optimality(config.spec).map_err(error::config)?;
    let numeric = numeric_spectrum(&cert.constraint);
    let mismatch = spectral_mismatch(&cert.spectrum.lambda, &numeric);
    let numeric_kernel = numeric_kernel_dim(&cert.constraint);
    let c = &cert.constraint;
    let rows: Vec<Value> = (0..c.matrix.nrows())
        .map(|i| Value::Array((0..c.matrix.ncols()).map(|j| Value::from(c.matrix[(i, j)] as u8)).collect()))
        .collect();
    let candidates: Vec<Value> = cert
        .candidate_subtractions
        .iter()
        .enumerate()
        .map(|(r, p)| {
            let alpha = match p {
                Perturbation::RankOne { alpha, .. } => complex_vec(alpha),
                Perturbation::Full(l) => matrix_value(l),
            };
            Obj::new().set("name", format!("v{}", r + 1)).set("alpha", alpha).into()
        })
        .collect();
    let value = Obj::new()
        .set("gcd", cert.gcd)
        .set("kernel_dim", cert.kernel_dim)
        .set("verdict", cert.verdict.as_str())
        .set(
            "constraint",
            Obj::new()
                .set("first_row", c.first_row.iter().map(|&m| Value::from(m)).collect::<Vec<_>>())
                .set("matrix", rows)
                .set("determinant", c.determinant()),
        )
        .set(
            "spectrum",
            Obj::new()
                .set("lambda", complex_vec(&cert.spectrum.lambda))
                .set("zero_indices", cert.spectrum.zero_indices.clone())
                .num("numeric_mismatch", mismatch)
                .set("numeric_kernel_dim", numeric_kernel),
        )
        .set("candidate_subtractions", candidates)
        .into();
    let anomaly = if !(mismatch <= SPECTRUM_TOL) || numeric_kernel != cert.kernel_dim {
        Some(CliError::Anomaly(format!(
            "circulant spectrum of {} disagrees with its closed form (mismatch {mismatch:e}, kernel {numeric_kernel} vs {})",
            config.spec, cert.kernel_dim
        )))
    } else {
        None
    };
    Ok((value, anomaly))
}

pub fn cmd_conjecture(config: &RunConfig) -> Result<Value, CliError> {
    reject_perturbation(config)?;
    if config.experimental {
        let grid = config.grid.as_ref().ok_or_else(|| CliError::Config("--experimental needs --grid".into()))?;
        let points = kernel_weight_sweep(config.spec, grid, &config.seesaw_options()).map_err(error::config)?;
        let sweep: Vec<Value> = points
            .iter()
            .map(|p| Obj::new().set("weights", real_vec(&p.weights)).num("min_value", p.min_value).into())
            .collect();
        return Ok(Obj::new()
            .set("mode", "experimental-sweep")
            .set("gcd", config.spec.gcd())
            .set("sweep", sweep)
            .set("note", "exploratory; no weights are certified")
            .into());
    }
    if config.grid.is_some() {
        return Err(CliError::Config("--grid requires --experimental".into()));
    }
    let opts = ProbeOptions { seesaw: config.seesaw_options(), t: config.t, epsilon: config.epsilon };
    let r = conjecture_probe(config.spec, &opts).map_err(error::config)?;
    Ok(Obj::new()
        .set("mode", "probe")
        .num("t", r.t)
        .num("t_max_witnessed", r.t_max_witnessed)
        .num("epsilon", r.epsilon)
        .num("witness_at_t", r.witness_at_t)
        .num("witness_at_bound", r.witness_at_bound)
        .num("witness_above_bound", r.witness_above_bound)
        .num("seesaw_min", r.seesaw.min_value)
        .set("verdict", r.verdict.as_str())
        .set("witness_mu", r.witness_mu.as_deref().map_or(Value::Null, real_vec))
        .set("positivity", positivity_value(&r.seesaw))
        .into())
}
