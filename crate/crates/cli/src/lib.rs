//! The `peakset` command-line tool.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 input
//! error, 4 resource-limit refusal.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use num_bigint::BigUint;
use thiserror::Error;

use peakset::corpus::{standard_corpus, DEFAULT_SEED};
use peakset::enumerate::{
    admissible_sets_par, count_labelings_par, enumerate_labelings_par, CountCache, EnumerateError,
    EnumerationBatch, DEFAULT_ADMISSIBLE_BOUND,
};
use peakset::family::Family;
use peakset::formulas::{family_formula, path_peak_polynomial, FormulaError};
use peakset::graph::{Graph, VertexSet};
use peakset::graphio::{parse_graph, parse_vertex_set, render_results, Format, Payload};
use peakset::oracle::{
    brute_force_labelings, cross_validate, peak_distribution_par, OracleError, DEFAULT_ORACLE_LIMIT,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "peakset",
    version,
    about = "Enumerate and count graph labelings with a prescribed peak set"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Exactly one graph source.
#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["graph", "inline", "family"])))]
pub struct GraphSource {
    /// Edge-list file (`n <count>` header, `e <u> <v>` lines)
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,
    /// Edge-list text with `;` as line separator, e.g. "n 3; e 1 2; e 2 3"
    #[arg(long, value_name = "TEXT")]
    pub inline: Option<String>,
    /// Named family, e.g. cycle:5, star:8, fan:3,4, join:null:3+path:2
    #[arg(long, value_name = "SPEC")]
    pub family: Option<String>,
}

/// At most one graph source.
#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(false).args(["graph", "inline", "family"])))]
pub struct OptionalGraphSource {
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,
    #[arg(long, value_name = "TEXT")]
    pub inline: Option<String>,
    #[arg(long, value_name = "SPEC")]
    pub family: Option<String>,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format: text, json or csv
    #[arg(long, default_value = "text")]
    pub format: Format,
    /// Worker threads
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=256))]
    pub threads: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count labelings with peak set exactly S
    Count {
        #[command(flatten)]
        source: GraphSource,
        /// Comma-separated peak vertices (empty for no peaks)
        #[arg(long, default_value = "")]
        peaks: String,
        /// Free set L (must contain every vertex of degree < 2); counts labelings
        /// whose peaks lie between S and S ∪ (L \ N(S))
        #[arg(long)]
        free: Option<String>,
        /// Disable the state memo
        #[arg(long)]
        no_memo: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Stream labelings with peak set exactly S
    Enumerate {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value = "")]
        peaks: String,
        #[arg(long)]
        free: Option<String>,
        /// Stop after this many labelings and mark the output truncated
        #[arg(long, default_value_t = 10_000)]
        max_output: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Brute-force count of every realized peak set
    Distribution {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
        oracle_limit: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Every admissible peak set with its count
    Admissible {
        #[command(flatten)]
        source: GraphSource,
        /// Largest vertex count accepted
        #[arg(long, default_value_t = DEFAULT_ADMISSIBLE_BOUND)]
        bound: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Brute-force list of labelings with peak set exactly S
    Oracle {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value = "")]
        peaks: String,
        #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
        oracle_limit: usize,
        #[arg(long, default_value_t = 10_000)]
        max_output: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form count for a named family
    Formula {
        /// Named family spec
        #[arg(long, value_name = "SPEC")]
        family: String,
        #[arg(long, default_value = "")]
        peaks: String,
        /// Also count by enumeration and report agreement
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Peak polynomial of a path peak-position set
    Polynomial {
        /// Comma-separated path positions
        #[arg(long, default_value = "")]
        peaks: String,
        /// Also evaluate the path count at this length
        #[arg(long)]
        at: Option<usize>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Cross-check enumeration and counting against brute force
    Verify {
        #[command(flatten)]
        source: OptionalGraphSource,
        /// Seed for the random graphs of the built-in corpus
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
        oracle_limit: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Resource(_) => EXIT_RESOURCE,
        }
    }
}

impl From<EnumerateError> for CliError {
    fn from(e: EnumerateError) -> Self {
        match e {
            EnumerateError::TooLarge { .. } => CliError::Resource(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooLarge { .. } => CliError::Resource(e.to_string()),
            OracleError::Enumerate(inner) => inner.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> Self {
        match e {
            FormulaError::PolynomialTooLarge(_) => CliError::Resource(e.to_string()),
            FormulaError::Enumerate(inner) => inner.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

fn load(
    graph: &Option<PathBuf>,
    inline: &Option<String>,
    family: &Option<String>,
) -> Result<Option<(String, Graph)>, CliError> {
    if let Some(path) = graph {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let g =
            parse_graph(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        return Ok(Some((path.display().to_string(), g)));
    }
    if let Some(text) = inline {
        let g = parse_graph(&text.replace(';', "\n"))
            .map_err(|e| CliError::Input(format!("inline graph: {e}")))?;
        return Ok(Some(("inline".to_string(), g)));
    }
    if let Some(spec) = family {
        let fam: Family = spec.parse().map_err(|e| CliError::Input(format!("{e}")))?;
        let g = fam.build().map_err(|e| CliError::Input(e.to_string()))?;
        return Ok(Some((fam.to_string(), g)));
    }
    Ok(None)
}

fn require(source: &GraphSource) -> Result<Graph, CliError> {
    Ok(load(&source.graph, &source.inline, &source.family)?
        .expect("clap enforces one source")
        .1)
}

fn vertex_set(text: &str, n: usize) -> Result<VertexSet, CliError> {
    parse_vertex_set(text, n)
        .map_err(|e| CliError::Input(format!("vertex set {text:?}: {}", e.kind)))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn execute(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Count {
            source,
            peaks,
            free,
            no_memo,
            common,
        } => {
            let g = require(&source)?;
            let s = vertex_set(&peaks, g.n())?;
            let free = free.map(|f| vertex_set(&f, g.n())).transpose()?;
            let cache = CountCache::new();
            let memo = (!no_memo).then_some(&cache);
            let count = count_labelings_par(&g, s, free, memo, common.threads as usize)?;
            Ok(Outcome::ok(render_results(
                &Payload::Count {
                    graph: &g,
                    peaks: s,
                    count: &count,
                },
                common.format,
            )))
        }
        Command::Enumerate {
            source,
            peaks,
            free,
            max_output,
            common,
        } => {
            let g = require(&source)?;
            let s = vertex_set(&peaks, g.n())?;
            let free = free.map(|f| vertex_set(&f, g.n())).transpose()?;
            let batch =
                enumerate_labelings_par(&g, s, free, common.threads as usize, Some(max_output))?;
            Ok(Outcome::ok(render_results(
                &Payload::Enumeration {
                    graph: &g,
                    peaks: s,
                    batch: &batch,
                },
                common.format,
            )))
        }
        Command::Distribution {
            source,
            oracle_limit,
            common,
        } => {
            let g = require(&source)?;
            let dist = peak_distribution_par(&g, Some(oracle_limit), common.threads as usize)?;
            let entries: Vec<(VertexSet, BigUint)> =
                dist.iter().map(|(s, c)| (s, c.clone())).collect();
            Ok(Outcome::ok(render_results(
                &Payload::Distribution {
                    graph: &g,
                    entries: &entries,
                },
                common.format,
            )))
        }
        Command::Admissible {
            source,
            bound,
            common,
        } => {
            let g = require(&source)?;
            let entries = admissible_sets_par(&g, Some(bound), common.threads as usize)?;
            Ok(Outcome::ok(render_results(
                &Payload::Distribution {
                    graph: &g,
                    entries: &entries,
                },
                common.format,
            )))
        }
        Command::Oracle {
            source,
            peaks,
            oracle_limit,
            max_output,
            common,
        } => {
            let g = require(&source)?;
            let s = vertex_set(&peaks, g.n())?;
            let mut labelings = brute_force_labelings(&g, s, Some(oracle_limit))?;
            let truncated = labelings.len() > max_output;
            labelings.truncate(max_output);
            let batch = EnumerationBatch {
                labelings,
                truncated,
            };
            Ok(Outcome::ok(render_results(
                &Payload::Enumeration {
                    graph: &g,
                    peaks: s,
                    batch: &batch,
                },
                common.format,
            )))
        }
        Command::Formula {
            family,
            peaks,
            check,
            common,
        } => formula(&family, &peaks, check, &common),
        Command::Polynomial { peaks, at, format } => polynomial(&peaks, at, format),
        Command::Verify {
            source,
            seed,
            oracle_limit,
            common,
        } => {
            let graphs: Vec<(String, Graph)> =
                match load(&source.graph, &source.inline, &source.family)? {
                    Some(one) => vec![one],
                    None => standard_corpus(seed)
                        .into_iter()
                        .map(|c| (c.name, c.graph))
                        .collect(),
                };
            let mut reports = Vec::with_capacity(graphs.len());
            for (name, g) in graphs {
                let report = cross_validate(&g, Some(oracle_limit), common.threads as usize)?;
                reports.push((name, report));
            }
            let ok = reports.iter().all(|(_, r)| r.ok());
            Ok(Outcome {
                code: if ok { EXIT_OK } else { EXIT_MISMATCH },
                stdout: render_results(&Payload::Verification { reports: &reports }, common.format),
                stderr: String::new(),
            })
        }
    }
}

fn json_string(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn formula(spec: &str, peaks: &str, check: bool, common: &Common) -> Result<Outcome, CliError> {
    let fam: Family = spec.parse().map_err(|e| CliError::Input(format!("{e}")))?;
    let g = fam.build().map_err(|e| CliError::Input(e.to_string()))?;
    let s = vertex_set(peaks, g.n())?;
    let result = family_formula(&fam, s)?;
    let enumerated = if check {
        let cache = CountCache::new();
        Some(count_labelings_par(
            &g,
            s,
            None,
            Some(&cache),
            common.threads as usize,
        )?)
    } else {
        None
    };
    let agrees = match (&result.value, &enumerated) {
        (Some(v), Some(e)) => Some(v == e),
        _ => None,
    };
    let value = result.value.as_ref().map(|v| v.to_string());
    let stdout = match common.format {
        Format::Text => {
            let mut out = match &value {
                Some(v) => format!("{v}\n"),
                None => format!("not covered: {}\n", result.rule),
            };
            if let Some(e) = &enumerated {
                let verdict = match agrees {
                    Some(true) => "agree",
                    Some(false) => "DISAGREE",
                    None => "no formula to compare",
                };
                out.push_str(&format!("enumeration: {e} ({verdict})\n"));
            }
            out
        }
        Format::Json => {
            let mut out = format!(
                "{{\"family\":{},\"peaks\":{:?},\"rule\":{},\"count\":{}",
                json_string(&fam.to_string()),
                s.to_vec(),
                json_string(result.rule),
                value
                    .as_deref()
                    .map(json_string)
                    .unwrap_or_else(|| "null".into())
            );
            if let Some(e) = &enumerated {
                out.push_str(&format!(
                    ",\"enumerated\":\"{e}\",\"agrees\":{}",
                    match agrees {
                        Some(a) => a.to_string(),
                        None => "null".into(),
                    }
                ));
            }
            out.push_str("}\n");
            out.replace(", ", ",")
        }
        Format::Csv => {
            let mut out = String::from("family,peaks,count,enumerated\n");
            out.push_str(&format!(
                "{},{},{},{}\n",
                fam,
                s.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
                value.unwrap_or_default(),
                enumerated.map(|e| e.to_string()).unwrap_or_default()
            ));
            out
        }
    };
    Ok(Outcome {
        code: if agrees == Some(false) {
            EXIT_MISMATCH
        } else {
            EXIT_OK
        },
        stdout,
        stderr: String::new(),
    })
}

fn polynomial(peaks: &str, at: Option<usize>, format: Format) -> Result<Outcome, CliError> {
    let s = vertex_set(peaks, peakset::graph::MAX_VERTICES)?;
    let p = path_peak_polynomial(s)?;
    let count = at.map(|n| p.path_count(n));
    let coefficients: Vec<String> = p.coefficients().iter().map(|c| c.to_string()).collect();
    let stdout = match format {
        Format::Text => {
            let mut out = format!("{p}\n");
            if let (Some(n), Some(c)) = (at, &count) {
                match c {
                    Some(c) => out.push_str(&format!("count on path:{n}: {c}\n")),
                    None => out.push_str(&format!(
                        "count on path:{n}: outside the polynomial's range\n"
                    )),
                }
            }
            out
        }
        Format::Json => {
            let mut out = format!(
                "{{\"peaks\":{:?},\"degree\":{},\"coefficients\":[{}]",
                s.to_vec(),
                p.degree()
                    .map(|d| d.to_string())
                    .unwrap_or_else(|| "null".into()),
                coefficients
                    .iter()
                    .map(|c| json_string(c))
                    .collect::<Vec<_>>()
                    .join(",")
            );
            if let (Some(n), Some(c)) = (at, &count) {
                out.push_str(&format!(
                    ",\"at\":{n},\"count\":{}",
                    c.as_ref()
                        .map(|c| json_string(&c.to_string()))
                        .unwrap_or_else(|| "null".into())
                ));
            }
            out.push_str("}\n");
            out.replace(", ", ",")
        }
        Format::Csv => {
            let mut out = String::from("power,coefficient\n");
            for (k, c) in coefficients.iter().enumerate() {
                out.push_str(&format!("{k},{c}\n"));
            }
            out
        }
    };
    Ok(Outcome::ok(stdout))
}
