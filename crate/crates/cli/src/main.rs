//! `pcf`: solve, verify, search, audit and generate from the command line.
//!
//! Exit codes: 0 success or valid, 1 invalid or infeasible, 2 input or
//! usage error, 3 internal invariant failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pcf_core::discharging::{audit, render_table};
use pcf_core::generator::{corpus, generate, CorpusName, GenMode, GenSpec};
use pcf_core::graph::{square, Embedding, Graph};
use pcf_core::io::{graph_to_dot, parse_coloring, parse_graph, ColoringDoc, GraphDoc};
use pcf_core::oracle::{exists_h_pcf_k, min_k, OracleError, OracleOptions, SearchStats};
use pcf_core::pcf::{is_h_pcf, PcfError};
use pcf_core::reduction::{solve, trace_to_dot, ReductionError};

#[derive(Parser)]
#[command(name = "pcf", version, about = "Proper conflict-free colorings of planar graphs with maximum degree 4")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// 2-PCF coloring with at most nine colors
    Solve {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the reduction trace as JSON
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the reduction trace as DOT
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check a coloring for the h-PCF property
    Verify {
        graph: PathBuf,
        coloring: PathBuf,
        #[arg(long)]
        h: usize,
    },
    /// Exact search for h-PCF colorings
    Oracle {
        graph: PathBuf,
        #[arg(long)]
        h: usize,
        #[command(flatten)]
        target: OracleTarget,
        /// Maximum number of search nodes
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Discharging audit of an embedded graph
    Discharge {
        graph: PathBuf,
        /// Print a text table instead of JSON
        #[arg(long)]
        table: bool,
    },
    /// Generate a random planar graph or a named corpus graph
    Gen {
        #[command(flatten)]
        source: GenSource,
        #[arg(long, value_parser = parse_mode, default_value = "tree-plus-edges")]
        mode: GenMode,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Square of a graph
    Square {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct OracleTarget {
    /// Decide whether k colors suffice
    #[arg(long)]
    k: Option<usize>,
    /// Find the smallest palette
    #[arg(long)]
    min: bool,
}

#[derive(Args)]
struct GenSource {
    #[arg(long, requires = "n", required_unless_present = "corpus")]
    seed: Option<u64>,
    #[arg(long, requires = "seed")]
    n: Option<usize>,
    #[arg(long, conflicts_with_all = ["seed", "n"])]
    corpus: Option<String>,
}

fn parse_mode(s: &str) -> Result<GenMode, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Error carrying its exit code.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

fn input(err: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 2, err: err.into() }
}

fn internal(err: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 3, err: err.into() }
}

type Run = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            // clap's report spans several lines; keep the part before usage
            let msg = e.to_string();
            let parts: Vec<&str> = msg
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:"))
                .filter(|l| !l.is_empty())
                .collect();
            eprintln!("{}", parts.join(" "));
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> Run {
    match cmd {
        Command::Solve { graph, out, trace, dot } => cmd_solve(&graph, out, trace, dot),
        Command::Verify { graph, coloring, h } => cmd_verify(&graph, &coloring, h),
        Command::Oracle { graph, h, target, budget, jobs } => cmd_oracle(&graph, h, target, budget, jobs),
        Command::Discharge { graph, table } => cmd_discharge(&graph, table),
        Command::Gen { source, mode, out, dot } => cmd_gen(source, mode, out, dot),
        Command::Square { graph, out } => {
            let (g, _) = load_graph(&graph)?;
            emit(&json(&GraphDoc::from_graph(&square(&g), None))?, out.as_deref())?;
            Ok(0)
        }
    }
}

fn load_graph(path: &Path) -> Result<(Graph, Option<Embedding>), Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(input)?;
    let doc = parse_graph(&text).with_context(|| format!("parsing {}", path.display())).map_err(input)?;
    doc.to_graph().with_context(|| format!("invalid graph {}", path.display())).map_err(input)
}

fn json(value: &impl Serialize) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(internal)?;
    s.push('\n');
    Ok(s)
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())).map_err(input),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_solve(path: &Path, out: Option<PathBuf>, trace: Option<PathBuf>, dot: Option<PathBuf>) -> Run {
    let (g, _) = load_graph(path)?;
    let sol = solve(&g).map_err(|e| match e {
        ReductionError::InvalidInput(_) => input(e),
        _ => internal(e),
    })?;
    let report = is_h_pcf(&g, &sol.coloring, 2).map_err(internal)?;
    if !report.valid || sol.coloring.max_color() > 9 {
        return Err(internal(anyhow::anyhow!("solver output failed verification")));
    }
    emit(&json(&ColoringDoc::from_coloring(&sol.coloring))?, out.as_deref())?;
    if let Some(p) = trace {
        emit(&json(&sol.trace)?, Some(&p))?;
    }
    if let Some(p) = dot {
        emit(&trace_to_dot(&sol.trace), Some(&p))?;
    }
    Ok(0)
}

fn cmd_verify(graph: &Path, coloring: &Path, h: usize) -> Run {
    let (g, _) = load_graph(graph)?;
    let text = fs::read_to_string(coloring)
        .with_context(|| format!("reading {}", coloring.display()))
        .map_err(input)?;
    let phi = parse_coloring(&text)
        .and_then(|d| d.to_coloring(g.n()))
        .with_context(|| format!("parsing {}", coloring.display()))
        .map_err(input)?;
    match is_h_pcf(&g, &phi, h) {
        Ok(report) => {
            emit(&json(&report)?, None)?;
            Ok(if report.valid { 0 } else { 1 })
        }
        Err(e @ (PcfError::PartialColoring(_) | PcfError::UnassignedNeighbor { .. })) => {
            eprintln!("invalid: {e}");
            Ok(1)
        }
        Err(e) => Err(input(e)),
    }
}

#[derive(Serialize)]
struct OracleOut {
    h: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exists: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_k: Option<usize>,
    coloring: Option<ColoringDoc>,
    stats: SearchStats,
}

fn cmd_oracle(path: &Path, h: usize, target: OracleTarget, budget: Option<u64>, jobs: usize) -> Run {
    let (g, _) = load_graph(path)?;
    let mut opts = OracleOptions { jobs: jobs.max(1), ..OracleOptions::default() };
    if let Some(b) = budget {
        opts.budget = b;
    }
    let oracle_err = |e: OracleError| input(e);
    let out = match target.k {
        Some(k) => {
            let (found, stats) = exists_h_pcf_k(&g, h, k, &opts).map_err(oracle_err)?;
            OracleOut {
                h,
                k: Some(k),
                exists: Some(found.is_some()),
                min_k: None,
                coloring: found.as_ref().map(ColoringDoc::from_coloring),
                stats,
            }
        }
        None => {
            let (k, c, stats) = min_k(&g, h, &opts).map_err(oracle_err)?;
            OracleOut { h, k: None, exists: None, min_k: Some(k), coloring: Some(ColoringDoc::from_coloring(&c)), stats }
        }
    };
    emit(&json(&out)?, None)?;
    Ok(if out.exists == Some(false) { 1 } else { 0 })
}

fn cmd_discharge(path: &Path, table: bool) -> Run {
    let (g, emb) = load_graph(path)?;
    let emb = emb.ok_or_else(|| input(anyhow::anyhow!("{} has no rotations", path.display())))?;
    let report = audit(&g, &emb).map_err(input)?;
    if table {
        emit(&render_table(&report), None)?;
    } else {
        emit(&json(&report)?, None)?;
    }
    Ok(0)
}

fn cmd_gen(source: GenSource, mode: GenMode, out: Option<PathBuf>, dot: Option<PathBuf>) -> Run {
    let (g, emb, meta) = match (source.corpus, source.seed, source.n) {
        (Some(name), _, _) => {
            let name: CorpusName = name.parse().map_err(input)?;
            let (g, emb) = corpus(&name).map_err(input)?;
            (g, emb, serde_json::json!({ "corpus": name.to_string() }))
        }
        (None, Some(seed), Some(n)) => {
            let spec = GenSpec::new(seed, n).with_mode(mode);
            let (g, emb) = generate(&spec).map_err(input)?;
            (g, Some(emb), spec.meta())
        }
        _ => return Err(input(anyhow::anyhow!("gen needs --seed and --n, or --corpus"))),
    };
    let mut doc = GraphDoc::from_graph(&g, emb.as_ref());
    doc.meta = Some(meta);
    emit(&json(&doc)?, out.as_deref())?;
    if let Some(p) = dot {
        emit(&graph_to_dot(&g), Some(&p))?;
    }
    Ok(0)
}
