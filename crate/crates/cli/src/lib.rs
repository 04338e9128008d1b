//! Command-line front end for the `spectral_nodes` experiments.
//!
//! Every subcommand writes one dataset, as CSV (header row, one record per
//! line) or JSON (scalar metadata plus a `rows` array). Output depends only on
//! the flags, so repeated runs are byte-identical.

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spectral_nodes::diffmat::derivative_error_at_nodes;
use spectral_nodes::interp::{interp_error_curve, lebesgue_constant, uniform_grid, LebesgueFunction};
use spectral_nodes::volterra::solve;
use spectral_nodes::{BuiltinProblem, DiffMatrix, LebesgueReport, NodeFamily, NodeSet, TestFunction};
use thiserror::Error;

pub mod table;

use table::{Cell, Dataset};

/// Condition estimates above this trigger a warning on stderr.
pub const CONDITION_WARNING: f64 = 1e12;

/// Degrees of the Lebesgue-constant table.
pub const TABLE_DEGREES: [usize; 7] = [6, 8, 10, 12, 14, 16, 18];
pub const TABLE_FAMILIES: [NodeFamily; 3] = [NodeFamily::EquiSpaced, NodeFamily::Cgl, NodeFamily::ScaledCheb];

#[derive(Debug, Parser)]
#[command(name = "spectral-nodes", version, about = "Interpolation node experiments on [-1, 1]")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a node set.
    Nodes(Flags),
    /// Lebesgue constant of a node set, or the Lebesgue function on a grid.
    Lebesgue {
        #[command(flatten)]
        flags: Flags,
        /// Emit F(x) on a uniform grid instead of the summary.
        #[arg(long)]
        emit_function: bool,
    },
    /// Lebesgue constants for equi-spaced, CGL and scaled Chebyshev nodes, s = 6..18.
    LebesgueTable(Flags),
    /// Pointwise interpolation error of a builtin function on a uniform grid.
    InterpError(Flags),
    /// Differentiation matrix as i,j,value triples.
    Diffmat(Flags),
    /// Error of the differentiation matrix at the nodes for a builtin function.
    DiffError(Flags),
    /// Solve a builtin first-kind Volterra problem on [0, 1] and report nodal errors.
    Volterra {
        #[command(flatten)]
        flags: Flags,
        #[arg(long, default_value = "expker-cospi")]
        problem: BuiltinProblem,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// equi, cheb-zeros, cgl, scaled-cheb, nd1, nd2 or qscaled.
    #[arg(long)]
    pub family: Option<NodeFamily>,
    /// Degree: the node set has s + 1 points.
    #[arg(long)]
    pub s: Option<usize>,
    /// exp, cos, runge or exp_sq.
    #[arg(long)]
    pub function: Option<TestFunction>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Uniform grid size for sampled output.
    #[arg(long, default_value_t = 2001)]
    pub grid: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Nodes,
    Lebesgue,
    LebesgueTable,
    InterpError,
    Diffmat,
    DiffError,
    Volterra,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Nodes => "nodes",
            Experiment::Lebesgue => "lebesgue",
            Experiment::LebesgueTable => "lebesgue-table",
            Experiment::InterpError => "interp-error",
            Experiment::Diffmat => "diffmat",
            Experiment::DiffError => "diff-error",
            Experiment::Volterra => "volterra",
        }
    }
}

/// A fully parsed invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub family: Option<NodeFamily>,
    pub s: Option<usize>,
    pub function: Option<TestFunction>,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub grid: usize,
    pub emit_function: bool,
    pub problem: BuiltinProblem,
}

impl RunConfig {
    fn with(experiment: Experiment, flags: Flags) -> Self {
        Self {
            experiment,
            family: flags.family,
            s: flags.s,
            function: flags.function,
            format: flags.format,
            output: flags.output,
            grid: flags.grid,
            emit_function: false,
            problem: BuiltinProblem::ExpKernelCosPi,
        }
    }
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        match cli.command {
            Command::Nodes(f) => RunConfig::with(Experiment::Nodes, f),
            Command::Lebesgue { flags, emit_function } => {
                RunConfig { emit_function, ..RunConfig::with(Experiment::Lebesgue, flags) }
            }
            Command::LebesgueTable(f) => RunConfig::with(Experiment::LebesgueTable, f),
            Command::InterpError(f) => RunConfig::with(Experiment::InterpError, f),
            Command::Diffmat(f) => RunConfig::with(Experiment::Diffmat, f),
            Command::DiffError(f) => RunConfig::with(Experiment::DiffError, f),
            Command::Volterra { flags, problem } => {
                RunConfig { problem, ..RunConfig::with(Experiment::Volterra, flags) }
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{subcommand} requires {flag}")]
    Missing { subcommand: &'static str, flag: &'static str },

    #[error("{flag}: {source}")]
    Invalid { flag: &'static str, source: spectral_nodes::Error },

    #[error("{0}")]
    Compute(spectral_nodes::Error),

    #[error("cannot write {path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    /// 2 for bad input, 1 for failures during computation or output.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Missing { .. } | CliError::Invalid { .. } => 2,
            CliError::Compute(_) | CliError::Io { .. } => 1,
        }
    }
}

impl From<spectral_nodes::Error> for CliError {
    fn from(e: spectral_nodes::Error) -> Self {
        use spectral_nodes::Error as E;
        let flag = match e {
            E::Parity { .. } | E::Degree { .. } => "--s",
            E::Grid(_) => "--grid",
            E::UnknownFunction(_) => "--function",
            E::UnknownProblem(_) => "--problem",
            E::UnknownFamily(_) | E::CollocationNodes(_) => "--family",
            _ => return CliError::Compute(e),
        };
        CliError::Invalid { flag, source: e }
    }
}

struct Checked {
    family: NodeFamily,
    s: usize,
}

fn require<T: Copy>(config: &RunConfig, value: Option<T>, flag: &'static str) -> Result<T, CliError> {
    value.ok_or(CliError::Missing { subcommand: config.experiment.name(), flag })
}

fn checked_nodes(config: &RunConfig) -> Result<Checked, CliError> {
    let family = require(config, config.family, "--family")?;
    let s = require(config, config.s, "--s")?;
    family.check(s)?;
    Ok(Checked { family, s })
}

fn checked_grid(config: &RunConfig) -> Result<(), CliError> {
    if config.grid < 2 {
        return Err(spectral_nodes::Error::Grid(config.grid).into());
    }
    Ok(())
}

/// Runs one experiment and writes its output. Returns the process exit code.
pub fn run(config: RunConfig) -> i32 {
    let result = execute(&config).and_then(|data| {
        let text = match config.format {
            Format::Csv => data.to_csv(),
            Format::Json => data.to_json(),
        };
        emit(&config, &text)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn emit(config: &RunConfig, text: &str) -> Result<(), CliError> {
    match &config.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|source| CliError::Io { path: "stdout".to_string(), source })
        }
    }
}

/// Validates the flags, then computes the dataset without writing it.
pub fn execute(config: &RunConfig) -> Result<Dataset, CliError> {
    match config.experiment {
        Experiment::Nodes => {
            let c = checked_nodes(config)?;
            let ns = NodeSet::generate(c.family, c.s)?;
            let mut data = Dataset::new(&["i", "x"]).meta("family", c.family.id()).meta("s", c.s);
            for (i, &x) in ns.nodes().iter().enumerate() {
                data.push(vec![i.into(), x.into()]);
            }
            Ok(data)
        }
        Experiment::Lebesgue => {
            let c = checked_nodes(config)?;
            if config.emit_function {
                checked_grid(config)?;
            }
            let ns = NodeSet::generate(c.family, c.s)?;
            let report = lebesgue_constant(&ns);
            if !config.emit_function {
                let mut data = report_table();
                data.push(report_row(&report));
                return Ok(data);
            }
            let f = LebesgueFunction::new(&ns);
            let mut data = Dataset::new(&["x", "F"])
                .meta("family", c.family.id())
                .meta("s", c.s)
                .meta("lambda_minus_one", report.lambda_minus_one)
                .meta("lambda_conventional", report.lambda_conventional)
                .meta("argmax", report.argmax);
            for x in uniform_grid(-1.0, 1.0, config.grid)? {
                data.push(vec![x.into(), f.eval(x).into()]);
            }
            Ok(data)
        }
        Experiment::LebesgueTable => {
            let mut data = report_table();
            for family in TABLE_FAMILIES {
                for s in TABLE_DEGREES {
                    data.push(report_row(&lebesgue_constant(&NodeSet::generate(family, s)?)));
                }
            }
            Ok(data)
        }
        Experiment::InterpError => {
            let c = checked_nodes(config)?;
            let function = require(config, config.function, "--function")?;
            checked_grid(config)?;
            let ns = NodeSet::generate(c.family, c.s)?;
            let curve = interp_error_curve(&ns, function, config.grid)?;
            let worst = curve.iter().map(|p| p.1).fold(0.0, f64::max);
            let mut data = Dataset::new(&["x", "error"])
                .meta("family", c.family.id())
                .meta("s", c.s)
                .meta("function", function.id())
                .meta("max_error", worst);
            for (x, e) in curve {
                data.push(vec![x.into(), e.into()]);
            }
            Ok(data)
        }
        Experiment::Diffmat => {
            let c = checked_nodes(config)?;
            let d = DiffMatrix::general(&NodeSet::generate(c.family, c.s)?);
            let mut data = Dataset::new(&["i", "j", "value"])
                .meta("family", c.family.id())
                .meta("s", c.s)
                .meta("ordering", "ascending");
            for i in 0..d.dim() {
                for j in 0..d.dim() {
                    data.push(vec![i.into(), j.into(), d.entries()[(i, j)].into()]);
                }
            }
            Ok(data)
        }
        Experiment::DiffError => {
            let c = checked_nodes(config)?;
            let function = require(config, config.function, "--function")?;
            let errors = derivative_error_at_nodes(c.family, c.s, function)?;
            let worst = errors.iter().map(|p| p.1).fold(0.0, f64::max);
            let mut data = Dataset::new(&["i", "x", "error"])
                .meta("family", c.family.id())
                .meta("s", c.s)
                .meta("function", function.id())
                .meta("max_error", worst);
            for (i, (x, e)) in errors.into_iter().enumerate() {
                data.push(vec![i.into(), x.into(), e.into()]);
            }
            Ok(data)
        }
        Experiment::Volterra => {
            let c = checked_nodes(config)?;
            let nodes = NodeSet::generate(c.family, c.s)?.map_to_interval(0.0, 1.0)?;
            let problem = config.problem.problem(nodes)?;
            let sol = solve(&problem)?;
            if sol.condition_estimate > CONDITION_WARNING {
                eprintln!(
                    "warning: collocation matrix condition estimate {:e} exceeds {:e}",
                    sol.condition_estimate, CONDITION_WARNING
                );
            }
            let truth = |t| config.problem.solution(t);
            let mut data = Dataset::new(&["i", "t", "approx", "exact", "error"])
                .meta("problem", config.problem.id())
                .meta("family", c.family.id())
                .meta("s", c.s)
                .meta("max_error", sol.max_error_against(truth))
                .meta("condition_estimate", sol.condition_estimate)
                .meta("residual", sol.residual);
            for (i, (&t, &u)) in sol.nodes.iter().zip(&sol.nodal_values).enumerate() {
                let exact = truth(t);
                data.push(vec![i.into(), t.into(), u.into(), exact.into(), (u - exact).abs().into()]);
            }
            Ok(data)
        }
    }
}

fn report_table() -> Dataset {
    Dataset::new(&["family", "s", "max_f", "argmax", "lambda_minus_one", "lambda_conventional"])
}

fn report_row(r: &LebesgueReport) -> Vec<Cell> {
    vec![
        r.family.id().into(),
        r.s.into(),
        r.max_f.into(),
        r.argmax.into(),
        r.lambda_minus_one.into(),
        r.lambda_conventional.into(),
    ]
}

/// Applies `SPECTRAL_NODES_THREADS` to the global rayon pool.
pub fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("SPECTRAL_NODES_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("SPECTRAL_NODES_THREADS must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}
