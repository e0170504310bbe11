use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cliquecolor::certificate::{Certificate, CertificateError, EngineConfig};
use cliquecolor::constructions::by_name;
use cliquecolor::dimacs::parse_dimacs;
use cliquecolor::engine::{run_engine, Mode, Outcome, RVector, Witness};
use cliquecolor::graph::{CliqueCertificate, Graph};
use cliquecolor::list::{f_choosable, ListSizeFunction};
use cliquecolor::oracle::critical_subgraph;
use cliquecolor::par::Parallelism;
use cliquecolor::reduction::{color_or_clique_with, PipelineOptions, ReductionError};
use cliquecolor::suites;

const OK: u8 = 0;
const PARSE: u8 = 1;
const REFUSED: u8 = 2;
const VIOLATION: u8 = 3;
const HASH_MISMATCH: u8 = 4;
const INVALID: u8 = 5;

const EXIT_CODES: &str = "Exit codes:
  0  success
  1  unreadable input, parse error or bad flag
  2  refusal (input beyond the exact oracles' bounds, or no witness)
  3  assumption violation, or a failing suite
  4  certificate graph_hash does not match the graph
  5  certificate does not verify

Inputs are DIMACS files or construction names: k<n>, c<n>, e<n>, p<n>, star<n>, o5, bk8,
moser, lex:<cycle>:<clique>, join:<g>:<h>, and g+h for disjoint union.
CLIQUECOLOR_MAX_EXACT raises the vertex bound of the exact oracles.";

#[derive(Parser)]
#[command(name = "cliquecolor", version, about = "Δ-1 colorings or clique certificates", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Colors with at most Δ-1 colors or certifies a large clique; prints a JSON certificate.
    ColorOrClique(ColorArgs),
    /// Decides f-choosability; prints true or false.
    Choosable(ChooseArgs),
    /// Re-verifies a certificate against a graph.
    Verify {
        input: String,
        certificate: String,
    },
    /// Runs an acceptance suite and prints pass/fail counts with timing.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct ColorArgs {
    input: String,
    /// Run the partition engine directly: theorem1 or theorem2.
    #[arg(long)]
    mode: Option<Mode>,
    /// Clubhouse sizes for the engine, e.g. 4,3,3.
    #[arg(long)]
    r_vector: Option<String>,
    /// Recorded in the certificate; every route is deterministic.
    #[arg(long)]
    seed: Option<u64>,
    /// Skip the heuristic shortcuts and take the exact route.
    #[arg(long)]
    no_fast_paths: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SizeSpec {
    /// f(v) = d(v) - 1
    #[arg(long)]
    d1: bool,
    /// f(v) = d(v)
    #[arg(long)]
    degree: bool,
    /// f(v) = k
    #[arg(long, value_name = "K")]
    uniform: Option<usize>,
}

#[derive(Args)]
struct ChooseArgs {
    #[command(flatten)]
    size: SizeSpec,
    input: String,
}

#[derive(Args)]
struct SuiteArgs {
    /// One of fixtures, classification, smallpot, mixed, mozhan, dichotomy, activation,
    /// transversal, hitting, pipeline.
    name: String,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Instances for the randomized suites.
    #[arg(long)]
    count: Option<usize>,
    /// Run instances one at a time.
    #[arg(long)]
    sequential: bool,
}

struct Failure(u8, String);

impl Failure {
    fn parse(msg: impl Into<String>) -> Self {
        Failure(PARSE, msg.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { PARSE } else { OK });
        }
    };
    let result = match cli.command {
        Command::ColorOrClique(a) => color_or_clique(&a),
        Command::Choosable(a) => choosable(&a),
        Command::Verify { input, certificate } => verify(&input, &certificate),
        Command::Suite(a) => suite(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn load_graph(input: &str) -> Result<Graph, Failure> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::parse(format!("{input}: {e}")))?;
        return parse_dimacs(&text).map_err(|e| Failure::parse(format!("{input}: {e}")));
    }
    by_name(input).map_err(|e| Failure::parse(format!("`{input}` is neither a readable file nor a construction: {e}")))
}

/// Verifies before printing; a certificate that fails its own check is never emitted.
fn emit(g: &Graph, cert: &Certificate, code: u8) -> Result<u8, Failure> {
    cert.verify(g)
        .map_err(|e| Failure(INVALID, format!("internal certificate failed verification: {e}")))?;
    println!("{}", cert.to_json());
    Ok(code)
}

fn outcome_code(o: &Outcome) -> u8 {
    match o {
        Outcome::AssumptionViolation(_) => VIOLATION,
        _ => OK,
    }
}

fn color_or_clique(a: &ColorArgs) -> Result<u8, Failure> {
    let g = load_graph(&a.input)?;
    if a.mode.is_some() || a.r_vector.is_some() {
        return engine_mode(&g, a);
    }
    let mut config = EngineConfig {
        seed: a.seed,
        ..EngineConfig::default()
    };
    let opts = PipelineOptions {
        fast_paths: !a.no_fast_paths,
    };
    match color_or_clique_with(&g, opts) {
        Ok(res) => {
            config.route = Some(res.route);
            config.bound = Some(res.bound);
            let cert = Certificate::from_outcome(&g, &res.outcome, config);
            emit(&g, &cert, outcome_code(&res.outcome))
        }
        Err(e @ (ReductionError::Refused(_) | ReductionError::Oracle(_))) => {
            emit(&g, &Certificate::refusal(&g, e.to_string(), config), REFUSED)
        }
        Err(e) => Err(Failure(VIOLATION, e.to_string())),
    }
}

/// `Δ - 1` as 3s and 4s from `Δ = 7`, as 2s and at most one 1 below.
fn default_r(delta: usize) -> Option<RVector> {
    if delta >= 7 {
        return RVector::mod3(delta).ok();
    }
    let t = delta.checked_sub(1).filter(|&t| t > 0)?;
    let mut parts = vec![2; t / 2];
    if t % 2 == 1 {
        parts.push(1);
    }
    RVector::new(parts).ok()
}

fn engine_mode(g: &Graph, a: &ColorArgs) -> Result<u8, Failure> {
    let delta = g.max_degree();
    let r = match &a.r_vector {
        Some(text) => RVector::parse(text).map_err(|e| Failure::parse(e.to_string()))?,
        None => default_r(delta).ok_or_else(|| Failure(REFUSED, format!("no default r-vector for Δ = {delta}")))?,
    };
    let mode = a.mode.unwrap_or(Mode::Theorem1);
    let mut config = EngineConfig {
        r_vector: Some(r.parts.clone()),
        mode: Some(mode),
        seed: a.seed,
        ..EngineConfig::default()
    };
    let refuse = |config: EngineConfig, reason: String| emit(g, &Certificate::refusal(g, reason, config), REFUSED);

    // a witness on g, else on a vertex-critical subgraph that needs one more color
    let t = r.total();
    let mut pivots: Vec<usize> = (0..g.n()).collect();
    pivots.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut host = None;
    for &v in &pivots {
        match Witness::from_oracle(g, v, t) {
            Ok(Some(w)) => {
                host = Some((g.clone(), (0..g.n()).collect::<Vec<_>>(), w));
                break;
            }
            Ok(None) => {}
            Err(e) => return refuse(config, e.to_string()),
        }
    }
    if host.is_none() && g.n() > 0 {
        let sub = match critical_subgraph(g, t + 1) {
            Ok(s) => s,
            Err(e) => return refuse(config, e.to_string()),
        };
        for v in 0..sub.graph.n() {
            if let Ok(Some(w)) = Witness::from_oracle(&sub.graph, v, t) {
                host = Some((sub.graph.clone(), sub.parent.clone(), w));
                break;
            }
        }
    }
    let Some((h, parent, witness)) = host else {
        return refuse(config, format!("no vertex has a witness coloring with {t} colors"));
    };
    config.pivot = Some(parent[witness.vertex]);
    let run = run_engine(&h, &r, &witness, mode).map_err(|e| Failure(VIOLATION, e.to_string()))?;
    let outcome = match run.outcome {
        Outcome::Clique(c) => {
            let slack = if c.high_only { 5 } else { r.max_part() };
            config.bound = Some(h.max_degree().saturating_sub(slack));
            let vs = c.vertices.iter().map(|&v| parent[v]).collect();
            Outcome::Clique(CliqueCertificate::new(vs, c.high_only && h.max_degree() == delta))
        }
        Outcome::Coloring(c) if h.n() != g.n() => {
            return Err(Failure(
                VIOLATION,
                format!("colored a subgraph that needs {} colors with {}", t + 1, c.colors_used()),
            ));
        }
        other => other,
    };
    let cert = Certificate::from_outcome(g, &outcome, config);
    emit(g, &cert, outcome_code(&outcome))
}

fn choosable(a: &ChooseArgs) -> Result<u8, Failure> {
    let g = load_graph(&a.input)?;
    let f = match (a.size.d1, a.size.degree, a.size.uniform) {
        (true, _, _) => ListSizeFunction::d1(&g),
        (_, true, _) => ListSizeFunction::degree(&g),
        (_, _, Some(k)) => ListSizeFunction::uniform(g.n(), k),
        _ => return Err(Failure::parse("choose one of --d1, --degree, --uniform K")),
    };
    match f_choosable(&g, &f) {
        Ok(b) => {
            println!("{b}");
            Ok(OK)
        }
        Err(e) => Err(Failure(REFUSED, e.to_string())),
    }
}

fn verify(input: &str, certificate: &str) -> Result<u8, Failure> {
    let g = load_graph(input)?;
    let text = std::fs::read_to_string(certificate).map_err(|e| Failure::parse(format!("{certificate}: {e}")))?;
    let cert = Certificate::from_json(&text).map_err(|e| Failure::parse(e.to_string()))?;
    match cert.verify(&g) {
        Ok(()) => {
            println!("ok: {} certificate verifies", cert.kind());
            Ok(OK)
        }
        Err(e @ CertificateError::HashMismatch { .. }) => Err(Failure(HASH_MISMATCH, e.to_string())),
        Err(e) => Err(Failure(INVALID, e.to_string())),
    }
}

fn suite(a: &SuiteArgs) -> Result<u8, Failure> {
    let mode = if a.sequential { Parallelism::Sequential } else { Parallelism::Parallel };
    let reports = suites::run(&a.name, a.seed, a.count, mode).map_err(Failure::parse)?;
    let mut ok = true;
    for r in &reports {
        println!("{}", r.summary());
        for f in r.failures.iter().take(20) {
            println!("  FAIL {f}");
        }
        ok &= r.ok();
    }
    Ok(if ok { OK } else { VIOLATION })
}
