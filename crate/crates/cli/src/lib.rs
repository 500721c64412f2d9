//! Front end for the `cubisect` binary: argument parsing, dispatch and the
//! JSON report envelope.
//!
//! Exit codes: 0 when every claim in the report matched, 1 when the
//! computation finished with a mismatch, 2 for usage, input and I/O errors,
//! 3 for an unbound parameter in `chow-eval`, 4 when the input violates a
//! geometric precondition.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

pub mod commands;
pub mod encode;
pub mod input;

pub const SCHEMA: &str = "cubisect.report/1";
pub const BUDGET_VAR: &str = "CUBIC_TOWER_BUDGET";
const DEFAULT_BUDGET: u32 = 6;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Input(String),
    Geometry(cubisect::GeomError),
    ChowSyntax(chow::ChowError),
    ChowUnbound(chow::ChowError),
    Chow(chow::ChowError),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Input(m) => write!(f, "{m}"),
            CliError::Geometry(e) => write!(f, "{e}"),
            CliError::ChowSyntax(e) | CliError::ChowUnbound(e) | CliError::Chow(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ChowUnbound(_) => 3,
            CliError::Geometry(e) if is_precondition(e) => 4,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Input(_) => "input",
            CliError::Geometry(_) => "geometry",
            CliError::ChowSyntax(_) => "parse",
            CliError::ChowUnbound(_) => "unbound",
            CliError::Chow(_) => "chow",
        }
    }
}

fn is_precondition(e: &cubisect::GeomError) -> bool {
    use cubisect::GeomError::*;
    !matches!(e, Alg(_) | Consistency(_) | CostGuard { .. })
}

impl From<cubisect::GeomError> for CliError {
    fn from(e: cubisect::GeomError) -> Self {
        CliError::Geometry(e)
    }
}

impl From<exactalg::AlgError> for CliError {
    fn from(e: exactalg::AlgError) -> Self {
        CliError::Geometry(e.into())
    }
}

impl From<chow::ChowError> for CliError {
    fn from(e: chow::ChowError) -> Self {
        match e {
            chow::ChowError::Syntax { .. } | chow::ChowError::UnknownSymbol { .. } | chow::ChowError::Binding(_) => CliError::ChowSyntax(e),
            chow::ChowError::Unbound(_) => CliError::ChowUnbound(e),
            _ => CliError::Chow(e),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "cubisect", version, about = "Lines and secant lines on cubic hypersurfaces")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Highest tower level (defaults to $CUBIC_TOWER_BUDGET, then 6).
    #[arg(long, global = true)]
    pub budget: Option<u32>,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Probe a cubic for singular points.
    ValidateCubic {
        #[arg(long)]
        cubic: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_level: u32,
        #[arg(long, default_value_t = 20000)]
        samples: u64,
        /// Prime used to certify a rational cubic by reduction.
        #[arg(long, default_value_t = 7)]
        reduce_mod: u32,
    },
    /// Check that a parameterized curve lies on the cubic and is smooth.
    ValidateCurve {
        #[arg(long)]
        cubic: PathBuf,
        #[arg(long)]
        curve: PathBuf,
    },
    /// Secant lines of one rational curve.
    Secants {
        #[arg(long)]
        cubic: PathBuf,
        #[arg(long)]
        curve: PathBuf,
    },
    /// Secant lines of a pair of curves.
    PairSecants {
        #[arg(long)]
        cubic: PathBuf,
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        curve2: PathBuf,
    },
    /// Normalize and evaluate an intersection-calculus expression.
    ChowEval {
        expression: String,
        /// `e=3,g=0`.
        #[arg(long)]
        bind: Option<String>,
        /// A JSON object of bindings.
        #[arg(long)]
        bindings: Option<PathBuf>,
        /// Expected value; recorded as a claim.
        #[arg(long, allow_hyphen_values = true)]
        expect: Option<i64>,
    },
    /// Re-derive secant counts from the second Chern class.
    DeriveCount {
        #[arg(long)]
        e: Option<i64>,
        #[arg(long)]
        g: Option<i64>,
        /// `e1,e2,r` for the pair count.
        #[arg(long)]
        pair: Option<String>,
        /// Every single count with 2 <= e <= 12, 0 <= g <= 10 and every pair count with e1, e2 <= 8, r <= 4.
        #[arg(long)]
        grid: bool,
    },
    /// Degree check of a cycle relation over a parameter range.
    RelationCheck {
        /// `single`, `pair` or `line`.
        #[arg(long)]
        relation: String,
        /// `e1=1..8,e2=1..8,r=0..4`; defaults to the relation's standard range.
        #[arg(long)]
        range: Option<String>,
    },
    /// Exhaustive census of the lines rational over one tower level.
    EnumerateLines {
        #[arg(long)]
        cubic: PathBuf,
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// Lines of the cubic through a point.
    LinesThroughPoint {
        #[arg(long)]
        cubic: PathBuf,
        /// Integer coordinates, `1,-1,0,0,0`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Whether a line is of the second type.
    SecondType {
        #[arg(long)]
        cubic: PathBuf,
        /// Two integer points, `1,0,0,0,0;0,1,0,0,0`.
        #[arg(long, allow_hyphen_values = true)]
        line: String,
    },
    /// Discriminant curve of the projection from a line.
    Discriminant {
        #[arg(long)]
        cubic: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        line: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Correspondence rows for lines meeting a curve once.
    RowSum {
        #[arg(long)]
        cubic: PathBuf,
        #[arg(long)]
        curve: PathBuf,
        /// One line; without it, lines meeting the curve once are taken from the level-1 census.
        #[arg(long, allow_hyphen_values = true)]
        line: Option<String>,
        #[arg(long, default_value_t = 10)]
        sample: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::ValidateCubic { .. } => "validate-cubic",
            Command::ValidateCurve { .. } => "validate-curve",
            Command::Secants { .. } => "secants",
            Command::PairSecants { .. } => "pair-secants",
            Command::ChowEval { .. } => "chow-eval",
            Command::DeriveCount { .. } => "derive-count",
            Command::RelationCheck { .. } => "relation-check",
            Command::EnumerateLines { .. } => "enumerate-lines",
            Command::LinesThroughPoint { .. } => "lines-through-point",
            Command::SecondType { .. } => "second-type",
            Command::Discriminant { .. } => "discriminant",
            Command::RowSum { .. } => "row-sum",
        }
    }
}

/// One numeric or boolean claim with its formula counterpart.
#[derive(Clone, Debug)]
pub struct Claim {
    pub name: String,
    pub value: Value,
    pub formula: Value,
}

impl Claim {
    pub fn new(name: impl Into<String>, value: impl Into<Value>, formula: impl Into<Value>) -> Claim {
        Claim { name: name.into(), value: value.into(), formula: formula.into() }
    }

    pub fn matched(&self) -> bool {
        self.value == self.formula
    }
}

/// What a command hands back to the envelope.
pub struct Outcome {
    pub result: Value,
    pub claims: Vec<Claim>,
    pub tower: Value,
}

/// Resolved configuration echoed in every report.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub budget: u32,
}

pub struct Finished {
    pub code: i32,
    pub report: Value,
}

impl Finished {
    pub fn render(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(&self.report).expect("json")
        } else {
            serde_json::to_string(&self.report).expect("json")
        }
    }
}

fn budget_from_env() -> Result<u32, CliError> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{BUDGET_VAR}=`{v}` is not a positive integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// Runs one parsed command line.
pub fn execute(cli: &Cli) -> Finished {
    let name = cli.command.name();
    let config = match cli.common.budget.map(Ok).unwrap_or_else(budget_from_env) {
        Ok(budget) => RunConfig { seed: cli.common.seed, budget },
        Err(e) => return failure(name, Value::Null, &e),
    };
    let echo = json!({ "command": name, "seed": config.seed, "budget": config.budget, "arguments": format!("{:?}", cli.command) });
    match commands::dispatch(&cli.command, &config) {
        Ok(out) => {
            let all = out.claims.iter().all(Claim::matched);
            let claims: Vec<Value> = out
                .claims
                .iter()
                .map(|c| json!({ "name": c.name, "value": c.value, "formula": c.formula, "matched": c.matched() }))
                .collect();
            Finished {
                code: if all { 0 } else { 1 },
                report: json!({
                    "schema": SCHEMA,
                    "config": echo,
                    "tower": out.tower,
                    "result": out.result,
                    "claims": claims,
                    "status": if all { "ok" } else { "mismatch" },
                }),
            }
        }
        Err(e) => failure(name, echo, &e),
    }
}

fn failure(name: &str, echo: Value, e: &CliError) -> Finished {
    Finished {
        code: e.exit_code(),
        report: json!({
            "schema": SCHEMA,
            "config": if echo.is_null() { json!({ "command": name }) } else { echo },
            "error": { "kind": e.kind(), "message": e.to_string() },
            "status": "error",
        }),
    }
}

/// Parses `argv` (including the program name) and runs it. Clap usage errors
/// come back as exit code 2 with the message in the report.
pub fn run<I, T>(argv: I) -> (Finished, Option<Cli>)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => (execute(&cli), Some(cli)),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let report = json!({ "schema": SCHEMA, "usage": e.to_string(), "status": if code == 0 { "ok" } else { "error" } });
            (Finished { code, report }, None)
        }
    }
}
