use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use posmap::MapSpec;
use serde_json::Value;

use crate::error::{self, CliError};
use crate::report::{num, real_vec, Obj};

#[derive(Debug, Parser)]
#[command(name = "posmap", version, about = "Generalized Choi maps: positivity, spanning rank and optimality")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub output: OutputFormat,

    /// Cap on worker threads for multistart optimization.
    #[arg(long, env = "POSMAP_THREADS", global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply τ_{n,k} (optionally perturbed) to a matrix read from --input.
    Apply(MapArgs),
    /// Search for a negative value of the product form by see-saw.
    Positivity(MapArgs),
    /// Rank of the span of product vectors annihilating the form.
    Spanning(MapArgs),
    /// Circulant constraint, its spectrum, and the gcd optimality verdict.
    Certify(MapArgs),
    /// Probe τ_{n,k} − t v₁v₁†∘X for gcd(n,k) = 2.
    Conjecture(MapArgs),
}

impl Command {
    pub fn kind(&self) -> CommandKind {
        match self {
            Command::Apply(_) => CommandKind::Apply,
            Command::Positivity(_) => CommandKind::Positivity,
            Command::Spanning(_) => CommandKind::Spanning,
            Command::Certify(_) => CommandKind::Certify,
            Command::Conjecture(_) => CommandKind::Conjecture,
        }
    }

    pub fn args(&self) -> &MapArgs {
        match self {
            Command::Apply(a)
            | Command::Positivity(a)
            | Command::Spanning(a)
            | Command::Certify(a)
            | Command::Conjecture(a) => a,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct MapArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Weight of the Hadamard subtraction.
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    /// Subtract t·v_r v_r†∘X along kernel vector `v<r>` of the circulant constraint.
    #[arg(long)]
    pub perturb: Option<String>,
    /// Subtract L∘X with L read from this matrix file.
    #[arg(long)]
    pub perturb_matrix: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = posmap::positivity::seesaw::DEFAULT_STARTS)]
    pub starts: usize,
    #[arg(long, default_value_t = posmap::positivity::seesaw::DEFAULT_TOL)]
    pub tol: f64,
    /// Unimodular samples for the spanning analysis (default 4n²).
    #[arg(long)]
    pub samples: Option<usize>,
    /// Matrix file (JSON rows of [re, im] pairs).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Step past n − k for the alternating witness.
    #[arg(long, default_value_t = posmap::optimality::DEFAULT_EPSILON)]
    pub epsilon: f64,
    /// Allow weight sweeps over the constraint kernel (any gcd ≥ 2).
    #[arg(long)]
    pub experimental: bool,
    /// Comma-separated non-negative weights for each kernel axis.
    #[arg(long, value_delimiter = ',')]
    pub grid: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Apply,
    Positivity,
    Spanning,
    Certify,
    Conjecture,
}

impl CommandKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CommandKind::Apply => "apply",
            CommandKind::Positivity => "positivity",
            CommandKind::Spanning => "spanning",
            CommandKind::Certify => "certify",
            CommandKind::Conjecture => "conjecture",
        }
    }
}

/// Perturbation requested on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum PerturbRequest {
    Kernel { index: usize, t: f64 },
    Matrix { path: PathBuf },
}

/// Validated run configuration. Everything that affects a report lives
/// here and is embedded in it; the thread cap does not affect results and
/// is kept out.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub spec: MapSpec,
    pub t: Option<f64>,
    pub perturb: Option<PerturbRequest>,
    pub seed: u64,
    pub starts: usize,
    pub tol: f64,
    pub samples: usize,
    pub input: Option<PathBuf>,
    pub epsilon: f64,
    pub experimental: bool,
    pub grid: Option<Vec<f64>>,
    pub output: OutputFormat,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let a = cli.command.args();
        let command = cli.command.kind();
        let spec = MapSpec::new(a.n, a.k).map_err(error::config)?;
        if a.starts == 0 {
            return Err(CliError::Config("--starts must be at least 1".into()));
        }
        if !(a.tol >= 0.0) {
            return Err(CliError::Config("--tol must be non-negative".into()));
        }
        if let Some(t) = a.t {
            if !t.is_finite() {
                return Err(CliError::Config("--t must be finite".into()));
            }
        }
        if !(a.epsilon > 0.0) || !a.epsilon.is_finite() {
            return Err(CliError::Config("--epsilon must be positive".into()));
        }
        if cli.threads == Some(0) {
            return Err(CliError::Config("--threads must be at least 1".into()));
        }
        let perturb = match (&a.perturb, &a.perturb_matrix) {
            (Some(_), Some(_)) => {
                return Err(CliError::Config("use either --perturb or --perturb-matrix, not both".into()))
            }
            (Some(name), None) => {
                let index = parse_kernel_name(name)?;
                let t = a.t.ok_or_else(|| CliError::Config("--perturb needs a weight --t".into()))?;
                if t < 0.0 {
                    return Err(CliError::Config("--t must be non-negative for a CP subtraction".into()));
                }
                Some(PerturbRequest::Kernel { index, t })
            }
            (None, Some(path)) => Some(PerturbRequest::Matrix { path: path.clone() }),
            (None, None) => None,
        };
        let samples = a.samples.unwrap_or(4 * a.n * a.n);
        let min_samples = a.n * a.n - a.n + 1;
        if samples < min_samples {
            return Err(CliError::Config(format!("--samples must be at least n^2-n+1 = {min_samples}")));
        }
        if a.experimental && a.grid.as_ref().map_or(true, |g| g.is_empty()) {
            return Err(CliError::Config("--experimental needs grid parameters (--grid a,b,...)".into()));
        }
        if let Some(g) = &a.grid {
            if g.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
                return Err(CliError::Config("--grid weights must be finite and non-negative".into()));
            }
        }
        Ok(Self {
            command,
            spec,
            t: a.t,
            perturb,
            seed: a.seed,
            starts: a.starts,
            tol: a.tol,
            samples,
            input: a.input.clone(),
            epsilon: a.epsilon,
            experimental: a.experimental,
            grid: a.grid.clone(),
            output: cli.output,
            threads: cli.threads,
        })
    }

    pub fn to_json(&self) -> Value {
        let perturb = match &self.perturb {
            None => Value::Null,
            Some(PerturbRequest::Kernel { index, .. }) => Value::String(format!("v{index}")),
            Some(PerturbRequest::Matrix { path }) => Value::String(format!("file:{}", path.display())),
        };
        let path = |p: &Option<PathBuf>| p.as_ref().map_or(Value::Null, |p| Value::String(p.display().to_string()));
        Obj::new()
            .set("n", self.spec.n())
            .set("k", self.spec.k())
            .set("t", self.t.map_or(Value::Null, num))
            .set("perturb", perturb)
            .set("seed", self.seed)
            .set("starts", self.starts)
            .num("tol", self.tol)
            .set("samples", self.samples)
            .set("input", path(&self.input))
            .num("epsilon", self.epsilon)
            .set("experimental", self.experimental)
            .set("grid", self.grid.as_ref().map_or(Value::Null, |g| real_vec(g)))
            .set(
                "output",
                match self.output {
                    OutputFormat::Json => "json",
                    OutputFormat::Text => "text",
                },
            )
            .into()
    }

    /// Command-line arguments reproducing this configuration.
    pub fn to_args(&self) -> Vec<String> {
        let mut args = vec![
            self.command.as_str().to_string(),
            "--n".into(),
            self.spec.n().to_string(),
            "--k".into(),
            self.spec.k().to_string(),
            "--seed".into(),
            self.seed.to_string(),
            "--starts".into(),
            self.starts.to_string(),
            "--tol".into(),
            format!("{:.16e}", self.tol),
            "--samples".into(),
            self.samples.to_string(),
            "--epsilon".into(),
            format!("{:.16e}", self.epsilon),
        ];
        if let Some(t) = self.t {
            args.extend(["--t".into(), format!("{t:.16e}")]);
        }
        match &self.perturb {
            Some(PerturbRequest::Kernel { index, .. }) => args.extend(["--perturb".into(), format!("v{index}")]),
            Some(PerturbRequest::Matrix { path }) => {
                args.extend(["--perturb-matrix".into(), path.display().to_string()])
            }
            None => {}
        }
        if let Some(p) = &self.input {
            args.extend(["--input".into(), p.display().to_string()]);
        }
        if self.experimental {
            args.push("--experimental".into());
        }
        if let Some(g) = &self.grid {
            let joined: Vec<String> = g.iter().map(|w| format!("{w:.16e}")).collect();
            args.extend(["--grid".into(), joined.join(",")]);
        }
        if self.output == OutputFormat::Text {
            args.extend(["--output".into(), "text".into()]);
        }
        args
    }

    pub fn seesaw_options(&self) -> posmap::SeesawOptions {
        posmap::SeesawOptions {
            starts: self.starts,
            seed: self.seed,
            tol: self.tol,
            threads: self.threads,
            ..posmap::SeesawOptions::default()
        }
    }
}

fn parse_kernel_name(name: &str) -> Result<usize, CliError> {
    name.strip_prefix('v')
        .and_then(|r| r.parse::<usize>().ok())
        .filter(|&r| r >= 1)
        .ok_or_else(|| CliError::Config(format!("unknown perturbation '{name}' (expected v1, v2, ...)")))
}

/// Rebuilds a configuration from the `config` object of a report.
pub fn args_from_report_config(command: &str, config: &Value) -> Option<Vec<String>> {
    let mut args = vec![command.to_string()];
    let o = config.as_object()?;
    let mut push = |flag: &str, v: String| {
        args.push(format!("--{flag}"));
        args.push(v);
    };
    push("n", o.get("n")?.to_string());
    push("k", o.get("k")?.to_string());
    push("seed", o.get("seed")?.to_string());
    push("starts", o.get("starts")?.to_string());
    push("tol", o.get("tol")?.to_string());
    push("samples", o.get("samples")?.to_string());
    push("epsilon", o.get("epsilon")?.to_string());
    if let Some(t) = o.get("t").filter(|v| !v.is_null()) {
        push("t", t.to_string());
    }
    if let Some(p) = o.get("perturb").and_then(Value::as_str) {
        match p.strip_prefix("file:") {
            Some(path) => push("perturb-matrix", path.to_string()),
            None => push("perturb", p.to_string()),
        }
    }
    if let Some(p) = o.get("input").and_then(Value::as_str) {
        push("input", p.to_string());
    }
    if let Some(g) = o.get("grid").and_then(Value::as_array) {
        push("grid", g.iter().map(Value::to_string).collect::<Vec<_>>().join(","));
    }
    if let Some(out) = o.get("output").and_then(Value::as_str) {
        push("output", out.to_string());
    }
    if o.get("experimental")?.as_bool()? {
        args.push("--experimental".into());
    }
    Some(args)
}
