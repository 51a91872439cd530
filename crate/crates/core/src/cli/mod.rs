//! Command-line front end: algebra configuration, single computations, graph
//! builds and exports, and verification suites.
//!
//! Exit codes: 0 success, 1 a check failed, 2 configuration or usage error.

pub mod expr;
pub mod suites;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::field::{
    make_field, AnyField, Field, FieldError, FieldSpec, FiniteField, RationalFunctionField,
};
use crate::graphs::{self, OrthGraph, EXACT_LIMIT};
use crate::okubo::{AlgebraError, OkuboAlgebra, Z10};

pub use expr::{parse_element, parse_scalar, ExprError};
pub use suites::{Suite, SuiteResult};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid field: {0}")]
    Field(#[from] FieldError),
    #[error("invalid expression: {0}")]
    Parse(#[from] ExprError),
    #[error("invalid algebra: {0}")]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Graph(#[from] graphs::GraphError),
    #[error("suite {suite} does not apply: {reason}")]
    IncompatibleSuite { suite: &'static str, reason: String },
    #[error("--threads must be at least 1")]
    Threads,
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

#[derive(Debug, Parser)]
#[command(
    name = "okubo",
    version,
    about = "Okubo algebras with isotropic norm: arithmetic, graphs and checks"
)]
pub struct Cli {
    /// Field: `p`, `p^k`, `p^k/c_k,...,c_0`, `p(t)`, or gf2 gf3 gf4 gf5 gf7 gf9 gf13 gf3t.
    #[arg(long, global = true, default_value = "gf3")]
    pub field: String,
    /// Parameter α, a nonzero field element.
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    pub alpha: String,
    /// Parameter β, a nonzero field element.
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    pub beta: String,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; output does not depend on this.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest component whose diameter and geodesics are computed exactly.
    #[arg(long, global = true, default_value_t = EXACT_LIMIT)]
    pub exact_limit: usize,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Fault injection: zeroes the product z10*z10.
    #[arg(long, global = true, hide = true)]
    pub corrupt_table: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Print the coefficient vector of x*y.
    Mult {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Print n(x, y), the polar form of the norm.
    Norm {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Build a graph over a finite field and export it.
    Graph {
        which: GraphKind,
        export: ExportKind,
        /// Restrict a DOT export of the orthogonality graph to one component.
        #[arg(long)]
        component: Option<usize>,
    },
    /// Run a verification suite.
    Verify { suite: Suite },
    /// Describe the configured algebra.
    Info,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    Orth,
    Zdiv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    Report,
    Dot,
}

/// Everything a run depends on. Equal configs give byte-identical output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub field: String,
    pub alpha: String,
    pub beta: String,
    pub command: Command,
    pub seed: u64,
    pub threads: Option<usize>,
    pub exact_limit: usize,
    pub output: Option<PathBuf>,
    pub corrupt_table: bool,
}

impl From<Cli> for RunConfig {
    fn from(c: Cli) -> Self {
        Self {
            field: c.field,
            alpha: c.alpha,
            beta: c.beta,
            command: c.command,
            seed: c.seed,
            threads: c.threads,
            exact_limit: c.exact_limit,
            output: c.out,
            corrupt_table: c.corrupt_table,
        }
    }
}

/// An algebra over one of the supported kinds of field.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)] // built once per run
pub enum AnyAlgebra {
    Finite(OkuboAlgebra<FiniteField>),
    Rational(OkuboAlgebra<RationalFunctionField>),
}

/// Runs `$body` with `$a` bound to the concrete algebra.
#[macro_export]
macro_rules! with_algebra {
    ($alg:expr, $a:ident => $body:expr) => {
        match $alg {
            $crate::cli::AnyAlgebra::Finite($a) => $body,
            $crate::cli::AnyAlgebra::Rational($a) => $body,
        }
    };
}

fn build<F: Field>(
    field: F,
    alpha: &str,
    beta: &str,
    corrupt: bool,
) -> Result<OkuboAlgebra<F>, CliError> {
    let a = parse_scalar(&field, alpha)?;
    let b = parse_scalar(&field, beta)?;
    let alg = OkuboAlgebra::new(field, a, b)?;
    Ok(if corrupt {
        alg.with_patched_product(Z10, Z10, None)
    } else {
        alg
    })
}

impl AnyAlgebra {
    pub fn from_strings(
        field: &str,
        alpha: &str,
        beta: &str,
        corrupt: bool,
    ) -> Result<Self, CliError> {
        let spec: FieldSpec = field.parse()?;
        Ok(match make_field(&spec)? {
            AnyField::Finite(f) => AnyAlgebra::Finite(build(f, alpha, beta, corrupt)?),
            AnyField::Rational(f) => AnyAlgebra::Rational(build(f, alpha, beta, corrupt)?),
        })
    }

    pub fn from_config(cfg: &RunConfig) -> Result<Self, CliError> {
        Self::from_strings(&cfg.field, &cfg.alpha, &cfg.beta, cfg.corrupt_table)
    }

    pub fn finite(&self) -> Option<&OkuboAlgebra<FiniteField>> {
        match self {
            AnyAlgebra::Finite(a) => Some(a),
            AnyAlgebra::Rational(_) => None,
        }
    }

    /// `x*y` as a `{c10, c20, c01, c02, c11, c22, c12, c21}` vector.
    pub fn mult(&self, x: &str, y: &str) -> Result<String, CliError> {
        with_algebra!(self, a => {
            let (x, y) = (parse_element(a, x)?, parse_element(a, y)?);
            Ok(a.format_vector(&a.mul(&x, &y)))
        })
    }

    /// `n(x, y)` printed in the field's syntax.
    pub fn norm(&self, x: &str, y: &str) -> Result<String, CliError> {
        with_algebra!(self, a => {
            let (x, y) = (parse_element(a, x)?, parse_element(a, y)?);
            Ok(a.field().format(&a.bilin(&x, &y)))
        })
    }

    pub fn info(&self) -> String {
        let mut lines = Vec::new();
        with_algebra!(self, a => {
            let f = a.field();
            lines.push(format!("field: {}", f.spec_string()));
            lines.push(format!("characteristic: {}", f.characteristic()));
            lines.push(format!(
                "order: {}",
                f.order().map_or_else(|| "infinite".to_string(), |q| q.to_string())
            ));
            lines.push(format!("alpha: {}", f.format(a.alpha())));
            lines.push(format!("beta: {}", f.format(a.beta())));
            lines.push(format!("split: {}", a.is_split()));
            lines.push(format!(
                "primitive cube root of unity: {}",
                f.omega().map_or_else(|| "none".to_string(), |w| f.format(&w))
            ));
            if let Some(q) = f.order() {
                if q <= 64 {
                    let lines_count = (q.pow(4) - 1) * (q.pow(3) + 1) / (q - 1);
                    lines.push(format!("zero-divisor lines: {lines_count}"));
                }
            }
        });
        lines.join("\n") + "\n"
    }
}

/// Builds the requested graph artifact.
pub fn graph_artifact(
    alg: &AnyAlgebra,
    which: GraphKind,
    export: ExportKind,
    component: Option<usize>,
    exact_limit: usize,
    seed: u64,
) -> Result<String, CliError> {
    let a = alg.finite().ok_or(graphs::GraphError::InfiniteField)?;
    let g = OrthGraph::build(a);
    Ok(match (which, export) {
        (GraphKind::Orth, ExportKind::Report) => {
            graphs::export_report(a, &g, exact_limit, seed).to_json()
        }
        (GraphKind::Orth, ExportKind::Dot) => {
            let comps = g.graph().components();
            match component {
                Some(i) => {
                    let c = comps.get(i).ok_or(graphs::GraphError::NotAVertex)?;
                    graphs::export_dot(a, &g, c)
                }
                None => graphs::export_dot(a, &g, &(0..g.len() as u32).collect::<Vec<_>>()),
            }
        }
        (GraphKind::Zdiv, ExportKind::Report) => {
            let r = graphs::zdiv_digraph_check(a, seed);
            serde_json::to_string_pretty(&r).expect("report serializes") + "\n"
        }
        (GraphKind::Zdiv, ExportKind::Dot) => graphs::export_zdiv_dot(a, &g)?,
    })
}

/// Whether the run's checks passed; configuration errors are `Err`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

/// Runs one command, writing its output to `out`.
pub fn execute(cfg: &RunConfig, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let alg = AnyAlgebra::from_config(cfg)?;
    let (text, outcome) = match &cfg.command {
        Command::Mult { x, y } => (alg.mult(x, y)? + "\n", Outcome::Pass),
        Command::Norm { x, y } => (alg.norm(x, y)? + "\n", Outcome::Pass),
        Command::Info => (alg.info(), Outcome::Pass),
        Command::Graph {
            which,
            export,
            component,
        } => (
            graph_artifact(&alg, *which, *export, *component, cfg.exact_limit, cfg.seed)?,
            Outcome::Pass,
        ),
        Command::Verify { suite } => {
            let opts = suites::SuiteOptions {
                seed: cfg.seed,
                exact_limit: cfg.exact_limit,
            };
            let results = suites::run_suite(&alg, *suite, &opts)?;
            let passed = results.iter().all(|r| r.passed);
            let mut text = String::new();
            for r in &results {
                text.push_str(&r.render());
            }
            text.push_str(&format!(
                "verify {}: {}\n",
                suite.name(),
                if passed { "PASS" } else { "FAIL" }
            ));
            (text, if passed { Outcome::Pass } else { Outcome::Fail })
        }
    };
    match &cfg.output {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(outcome)
}

/// Runs with the configured thread count; returns the process exit code.
pub fn run(cfg: &RunConfig, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32 {
    let result = match cfg.threads {
        Some(0) => Err(CliError::Threads),
        threads => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.unwrap_or(0))
                .build();
            match pool {
                Ok(pool) => pool.install(|| execute(cfg, out)),
                Err(e) => Err(CliError::Io(io::Error::other(e))),
            }
        }
    };
    match result {
        Ok(o) => o.exit_code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Entry point of the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli.into(), &mut io::stdout(), &mut io::stderr()),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}
