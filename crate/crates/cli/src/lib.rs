//! Command-line front end for `traffic-core`: a small graph language and
//! commands that evaluate, test and tabulate traffic distributions.

pub mod dsl;
pub mod error;
pub mod output;
pub mod registry;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use traffic_core::combinatorics::weingarten_classes;
use traffic_core::matrix::{monte_carlo_many, tau_exact, tau_injective_exact};
use traffic_core::traffic::{free_cumulant, gram_matrix, hermitian_defect, min_eigenvalue, Empirical, MomentTable};
use traffic_core::{MatrixFamily, TestGraph, TrafficFunctional};

use crate::dsl::{parse_document, Document};
use crate::error::{CliError, CliResult};
use crate::output::{fmt_f64, to_csv, to_json, Cplx, Num};
use crate::registry::{parse_matrix_arg, EnsembleSpec, Source};

/// Largest `n` accepted by `weingarten`.
pub const WEINGARTEN_CLI_CAP: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "traffic", version, about = "Traffic distributions of random matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FunctionalKind {
    /// `τ_Φ` of the ensemble's limiting moments.
    Limit,
    /// Monte Carlo mean at a single `--n`.
    Empirical,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate τ[t] (or τ⁰[t]) on explicit matrices.
    Eval {
        file: PathBuf,
        graph: String,
        /// LETTER=SOURCE where SOURCE is a JSON file, identity[:N], ones:N or diag:d1,d2,..
        #[arg(long = "matrix")]
        matrices: Vec<String>,
        /// Matrix size when no matrix fixes it.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        injective: bool,
    },
    /// Monte Carlo estimates against the limiting traffic distribution.
    Converge {
        file: PathBuf,
        graph: String,
        /// gue, haar_unitary, conjugated_deterministic, or LETTER=LAW,..
        #[arg(long, default_value = "gue")]
        ensemble: String,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Deterministic matrices for conjugated letters.
        #[arg(long = "matrix")]
        matrices: Vec<String>,
        /// Moment table (a `moments` block of the document or a JSON file).
        #[arg(long)]
        moments: Option<String>,
        /// Compute the limit as a traffic free product over this coloring.
        #[arg(long)]
        coloring: Option<String>,
        /// Largest accepted |z| (default 5).
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Gram matrix [τ(t_i | t_j*)] and its smallest eigenvalue.
    Gram {
        file: PathBuf,
        #[arg(required = true)]
        graphs: Vec<String>,
        #[arg(long, default_value = "gue")]
        ensemble: String,
        #[arg(long, value_enum, default_value = "limit")]
        functional: FunctionalKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long = "matrix")]
        matrices: Vec<String>,
        #[arg(long)]
        moments: Option<String>,
        #[arg(long)]
        coloring: Option<String>,
        /// Smallest eigenvalue allowed is -tolerance (default 1e-8).
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Weingarten function Wg_{n,N} by conjugacy class.
    Weingarten { n: usize, dim: usize },
    /// Free cumulant of a word under a moment table (JSON file).
    Cumulants { file: PathBuf, word: String },
    /// Print a document in normal form.
    Fmt { file: PathBuf },
}

/// Rendered output plus, when a check did not hold, the regression to report
/// after the output is written.
#[derive(Debug)]
pub struct Report {
    pub text: String,
    pub regression: Option<String>,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, regression: None }
    }
}

fn read(path: &std::path::Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn load(path: &std::path::Path) -> CliResult<Document> {
    parse_document(&read(path)?).map_err(|e| match e {
        CliError::Parse { code, line, column, message, .. } => {
            CliError::Parse { code, path: Some(path.display().to_string()), line, column, message }
        }
        other => other,
    })
}

fn matrix_sources(args: &[String]) -> CliResult<BTreeMap<String, Source>> {
    let mut out = BTreeMap::new();
    for a in args {
        let (letter, source) = parse_matrix_arg(a)?;
        if out.insert(letter.clone(), source).is_some() {
            return Err(CliError::usage("invalid_argument", format!("matrix for `{letter}` given twice")));
        }
    }
    Ok(out)
}

fn moment_table(doc: &Document, spec: Option<&str>) -> CliResult<Option<MomentTable>> {
    let Some(spec) = spec else { return Ok(None) };
    if let Some(t) = doc.table(spec) {
        return Ok(Some(t.clone()));
    }
    Ok(Some(MomentTable::from_json(&read(std::path::Path::new(spec))?)?))
}

fn check_samples(samples: usize) -> CliResult<()> {
    if samples < 2 {
        return Err(CliError::usage("invalid_config", "--samples must be at least 2"));
    }
    Ok(())
}

fn check_n(n: usize) -> CliResult<()> {
    if n == 0 {
        return Err(CliError::usage("invalid_config", "--n must be at least 1"));
    }
    Ok(())
}

#[derive(Serialize)]
struct EvalReport<'a> {
    graph: &'a str,
    #[serde(rename = "N")]
    n: usize,
    value: Cplx,
}

fn eval(doc: &Document, name: &str, matrices: &[String], n: Option<usize>, injective: bool, format: Format) -> CliResult<Report> {
    let t = doc.graph(name)?;
    let sources = matrix_sources(matrices)?;
    let dim = match sources.values().find_map(Source::size).or(n) {
        Some(d) => d,
        None => return Err(CliError::usage("invalid_config", "no matrix fixes N; pass --n")),
    };
    check_n(dim)?;
    if let Some(n) = n {
        if n != dim {
            return Err(traffic_core::Error::DimensionMismatch { expected: n, found: dim }.into());
        }
    }
    let mut family = MatrixFamily::new();
    for (letter, source) in &sources {
        family.insert(letter.clone(), source.matrix(dim)?)?;
    }
    let value = if injective { tau_injective_exact(t, &family)? } else { tau_exact(t, &family)? };
    Ok(Report::ok(match format {
        Format::Json => to_json(&EvalReport { graph: name, n: dim, value: value.into() }),
        Format::Csv => to_csv(&["graph", "N", "value_re", "value_im"], &[vec![name.into(), dim.to_string(), fmt_f64(value.re), fmt_f64(value.im)]]),
    }))
}

#[derive(Serialize)]
struct ConvergeRow {
    #[serde(rename = "N")]
    n: usize,
    estimate: Cplx,
    stderr: Num,
    limit: Cplx,
    z: Num,
}

#[derive(Serialize)]
struct ConvergeReport<'a> {
    graph: &'a str,
    ensemble: &'a str,
    samples: usize,
    seed: u64,
    rows: Vec<ConvergeRow>,
}

struct ConvergeArgs<'a> {
    name: &'a str,
    ensemble: &'a str,
    dims: &'a [usize],
    samples: usize,
    seed: u64,
    matrices: &'a [String],
    moments: Option<&'a str>,
    coloring: Option<&'a str>,
    tolerance: f64,
}

fn converge(doc: &Document, a: &ConvergeArgs, format: Format) -> CliResult<Report> {
    let t = doc.graph(a.name)?;
    check_samples(a.samples)?;
    if a.dims.is_empty() {
        return Err(CliError::usage("invalid_config", "--n needs at least one size"));
    }
    a.dims.iter().try_for_each(|&n| check_n(n))?;
    let spec = EnsembleSpec::parse(a.ensemble, &t.letters())?;
    let fixed = matrix_sources(a.matrices)?.into_iter().map(|(l, s)| (l, s.deterministic())).collect();
    let sampler = spec.sampler(&fixed)?;
    let table = moment_table(doc, a.moments)?;
    let coloring = a.coloring.map(|c| doc.coloring(c)).transpose()?;
    let limit = spec.limit(table.as_ref(), coloring)?.tau(t)?;
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for &dim in a.dims {
        let est = monte_carlo_many(&sampler, dim, a.samples, a.seed, |m| Ok(vec![tau_exact(t, m)?]))?[0];
        let z = est.z_score(limit);
        worst = worst.max(z);
        rows.push((dim, est, z));
    }
    let text = match format {
        Format::Csv => to_csv(
            &["N", "estimate_re", "estimate_im", "stderr", "limit_re", "limit_im", "z"],
            &rows
                .iter()
                .map(|(n, e, z)| {
                    vec![n.to_string(), fmt_f64(e.mean.re), fmt_f64(e.mean.im), fmt_f64(e.stderr), fmt_f64(limit.re), fmt_f64(limit.im), fmt_f64(*z)]
                })
                .collect::<Vec<_>>(),
        ),
        Format::Json => to_json(&ConvergeReport {
            graph: a.name,
            ensemble: a.ensemble,
            samples: a.samples,
            seed: a.seed,
            rows: rows
                .iter()
                .map(|(n, e, z)| ConvergeRow { n: *n, estimate: e.mean.into(), stderr: Num::new(e.stderr), limit: limit.into(), z: Num::new(*z) })
                .collect(),
        }),
    };
    let regression = (worst > a.tolerance).then(|| format!("|z| = {} exceeds {}", fmt_f64(worst), a.tolerance));
    Ok(Report { text, regression })
}

#[derive(Serialize)]
struct GramReport<'a> {
    graphs: &'a [String],
    functional: &'static str,
    entries: Vec<Vec<Cplx>>,
    min_eigenvalue: Num,
    hermitian_defect: Num,
    tolerance: Num,
}

struct GramArgs<'a> {
    names: &'a [String],
    ensemble: &'a str,
    functional: FunctionalKind,
    n: Option<usize>,
    samples: usize,
    seed: u64,
    matrices: &'a [String],
    moments: Option<&'a str>,
    coloring: Option<&'a str>,
    tolerance: f64,
}

fn gram(doc: &Document, a: &GramArgs, format: Format) -> CliResult<Report> {
    let graphs: Vec<TestGraph> = a.names.iter().map(|n| doc.graph(n).cloned()).collect::<CliResult<_>>()?;
    let letters = graphs.iter().flat_map(TestGraph::letters).collect();
    let spec = EnsembleSpec::parse(a.ensemble, &letters)?;
    let tau: Arc<dyn TrafficFunctional> = match a.functional {
        FunctionalKind::Limit => {
            let table = moment_table(doc, a.moments)?;
            let coloring = a.coloring.map(|c| doc.coloring(c)).transpose()?;
            spec.limit(table.as_ref(), coloring)?
        }
        FunctionalKind::Empirical => {
            let dim = a.n.ok_or_else(|| CliError::usage("invalid_config", "the empirical functional needs --n"))?;
            check_n(dim)?;
            check_samples(a.samples)?;
            let fixed = matrix_sources(a.matrices)?.into_iter().map(|(l, s)| (l, s.deterministic())).collect();
            Arc::new(Empirical { ensemble: spec.sampler(&fixed)?, dim, samples: a.samples, seed: a.seed })
        }
    };
    let g = gram_matrix(&graphs, tau.as_ref())?;
    let min = min_eigenvalue(&g);
    let text = match format {
        Format::Json => to_json(&GramReport {
            graphs: a.names,
            functional: match a.functional {
                FunctionalKind::Limit => "limit",
                FunctionalKind::Empirical => "empirical",
            },
            entries: g.row_iter().map(|r| r.iter().map(|&z| Cplx::from(z)).collect()).collect(),
            min_eigenvalue: Num::new(min),
            hermitian_defect: Num::new(hermitian_defect(&g)),
            tolerance: Num::new(a.tolerance),
        }),
        Format::Csv => {
            let rows: Vec<Vec<String>> = (0..g.nrows())
                .flat_map(|i| (0..g.ncols()).map(move |j| (i, j)))
                .map(|(i, j)| vec![a.names[i].clone(), a.names[j].clone(), fmt_f64(g[(i, j)].re), fmt_f64(g[(i, j)].im)])
                .collect();
            to_csv(&["row", "col", "re", "im"], &rows)
        }
    };
    let regression = (min < -a.tolerance).then(|| format!("min eigenvalue {} is below -{}", fmt_f64(min), a.tolerance));
    Ok(Report { text, regression })
}

#[derive(Serialize)]
struct ClassValue {
    cycle_type: Vec<usize>,
    value: Num,
}

#[derive(Serialize)]
struct WeingartenReport {
    n: usize,
    #[serde(rename = "N")]
    dim: usize,
    classes: Vec<ClassValue>,
}

fn weingarten(n: usize, dim: usize, format: Format) -> CliResult<Report> {
    if n == 0 || n > WEINGARTEN_CLI_CAP {
        return Err(traffic_core::Error::CapExceeded { size: n, cap: WEINGARTEN_CLI_CAP }.into());
    }
    let table = weingarten_classes(n, dim)?;
    Ok(Report::ok(match format {
        Format::Json => to_json(&WeingartenReport {
            n,
            dim,
            classes: table.classes.iter().map(|(c, v)| ClassValue { cycle_type: c.clone(), value: Num::new(*v) }).collect(),
        }),
        Format::Csv => to_csv(
            &["cycle_type", "value"],
            &table
                .classes
                .iter()
                .map(|(c, v)| vec![c.iter().map(usize::to_string).collect::<Vec<_>>().join(" "), fmt_f64(*v)])
                .collect::<Vec<_>>(),
        ),
    }))
}

#[derive(Serialize)]
struct CumulantReport<'a> {
    word: &'a str,
    kappa: Cplx,
}

fn cumulants(path: &std::path::Path, word: &str, format: Format) -> CliResult<Report> {
    let table = MomentTable::from_json(&read(path)?)?;
    let w = table.parse_word(word)?;
    let kappa: Complex64 = free_cumulant(&table, &w)?;
    Ok(Report::ok(match format {
        Format::Json => to_json(&CumulantReport { word, kappa: kappa.into() }),
        Format::Csv => to_csv(&["word", "kappa_re", "kappa_im"], &[vec![word.into(), fmt_f64(kappa.re), fmt_f64(kappa.im)]]),
    }))
}

pub fn execute(cli: &Cli) -> CliResult<Report> {
    match &cli.command {
        Command::Eval { file, graph, matrices, n, injective } => {
            eval(&load(file)?, graph, matrices, *n, *injective, cli.format.unwrap_or(Format::Json))
        }
        Command::Converge { file, graph, ensemble, n, samples, seed, matrices, moments, coloring, tolerance } => {
            let args = ConvergeArgs {
                name: graph,
                ensemble,
                dims: n,
                samples: *samples,
                seed: *seed,
                matrices,
                moments: moments.as_deref(),
                coloring: coloring.as_deref(),
                tolerance: tolerance.unwrap_or(5.0),
            };
            converge(&load(file)?, &args, cli.format.unwrap_or(Format::Csv))
        }
        Command::Gram { file, graphs, ensemble, functional, n, samples, seed, matrices, moments, coloring, tolerance } => {
            let args = GramArgs {
                names: graphs,
                ensemble,
                functional: *functional,
                n: *n,
                samples: *samples,
                seed: *seed,
                matrices,
                moments: moments.as_deref(),
                coloring: coloring.as_deref(),
                tolerance: tolerance.unwrap_or(1e-8),
            };
            gram(&load(file)?, &args, cli.format.unwrap_or(Format::Json))
        }
        Command::Weingarten { n, dim } => weingarten(*n, *dim, cli.format.unwrap_or(Format::Json)),
        Command::Cumulants { file, word } => cumulants(file, word, cli.format.unwrap_or(Format::Json)),
        Command::Fmt { file } => Ok(Report::ok(load(file)?.to_text())),
    }
}
