use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use hamlift::family::{self, BlockCase, DEFAULT_BLOCK_ORDER};
use hamlift::io::{parse_blocks, parse_permutation, read_json, CertificateFile, GraphSpec, GroupSpec};
use hamlift::perm::{semiregular_decomposition, PermGroup, ELEMENT_CAP_ENV};
use hamlift::pipeline::{dispatch, DispatchOptions, Producer};
use hamlift::quotient::{lift_cycle, quotient_multigraph};
use hamlift::search::{hamilton_search, HamiltonCertificate, SearchOptions, SearchOutcome, DEFAULT_BUDGET};
use hamlift::SimpleGraph;

const EXIT_EXCEPTION: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "hamlift", version, about = "Certified Hamilton cycles in vertex-transitive graphs")]
struct Cli {
    /// Element cap for group closures.
    #[arg(long, global = true, env = ELEMENT_CAP_ENV)]
    max_elements: Option<usize>,

    /// Write the main output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edges,
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "caseA")]
    CaseA,
    #[value(name = "caseB")]
    CaseB,
    Z10,
    K55,
    Gp,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a graph from a GraphSpec and print it.
    Build {
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "edges")]
        format: Format,
    },
    /// Quotient of a graph by the cycles of a permutation or by explicit blocks.
    Quotient {
        graph: PathBuf,
        #[arg(long, conflicts_with = "blocks", required_unless_present = "blocks")]
        rho: Option<String>,
        #[arg(long)]
        blocks: Option<PathBuf>,
        #[arg(long)]
        dot: bool,
    },
    /// Lift a quotient cycle along a semiregular automorphism of prime order.
    Lift {
        graph: PathBuf,
        #[arg(long)]
        rho: String,
        /// Orbit indices, comma separated.
        #[arg(long, value_delimiter = ',')]
        cycle: Vec<usize>,
    },
    /// Backtracking search for a Hamilton cycle.
    Search {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Check a certificate against a graph.
    Verify {
        cert: PathBuf,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Run the full strategy on a graph.
    Pipeline {
        spec: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long)]
        blocks: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Print the trace as JSON on stderr instead of text.
        #[arg(long)]
        trace_json: bool,
    },
    /// Build a family graph and its explicit Hamilton cycle.
    Demo {
        #[arg(long, value_enum)]
        family: Family,
        /// Comma separated `key=value` pairs, e.g. `p=41,t=36,l=1`.
        #[arg(long, default_value = "")]
        params: String,
        /// Also write the graph as DOT to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = io::stdout().lock();
            let nl = if text.ends_with('\n') { "" } else { "\n" };
            match write!(stdout, "{text}{nl}") {
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
                r => Ok(r?),
            }
        }
    }
}

/// A GraphSpec when the file parses as JSON, else an edge list.
fn load_graph(path: &Path) -> Result<(SimpleGraph, Option<PermGroup>)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.trim_start().starts_with('{') {
        let spec: GraphSpec = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        let built = spec.build()?;
        Ok((built.graph, built.witness))
    } else {
        Ok((SimpleGraph::parse_edge_list(&text, None)?, None))
    }
}

fn cert_json(cert: &HamiltonCertificate, producer: Producer, trace: Vec<String>) -> Result<String> {
    Ok(serde_json::to_string_pretty(&CertificateFile::new(cert, producer, trace))?)
}

fn params(text: &str) -> Result<Vec<(String, u64)>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|kv| {
            let (k, v) = kv.split_once('=').with_context(|| format!("expected key=value, got {kv:?}"))?;
            Ok((k.trim().to_string(), v.trim().parse().with_context(|| format!("value of {k}"))?))
        })
        .collect()
}

fn param(ps: &[(String, u64)], key: &str, default: u64) -> u64 {
    ps.iter().find(|(k, _)| k == key).map_or(default, |(_, v)| *v)
}

type DemoCycle = (SimpleGraph, HamiltonCertificate, Producer, Vec<String>);

/// The family graph with its cycle, or the search outcome when `gp` has none.
fn demo(family: Family, ps: &[(String, u64)]) -> Result<std::result::Result<DemoCycle, SearchOutcome>> {
    Ok(Ok(match family {
        Family::CaseA | Family::CaseB => {
            let case = if matches!(family, Family::CaseA) { BlockCase::A } else { BlockCase::B };
            let bg = family::build_block_graph(param(ps, "r", 7) as usize, case)?;
            let w = family::family_walk(&bg)?;
            let mut trace = w.pieces;
            trace.extend(w.errata);
            (bg.graph, w.certificate, Producer::Walk, trace)
        }
        Family::Z10 => {
            let (p, t, l) = (param(ps, "p", 41), param(ps, "t", 36), param(ps, "l", 1));
            let (g, cert) = family::z10_sign_walk(p, t, l, &DEFAULT_BLOCK_ORDER)?;
            (g, cert, Producer::Walk, vec![format!("sign walk p={p} t={t} l={l}")])
        }
        Family::K55 => {
            let (p, l, lp, iota) = (param(ps, "p", 7), param(ps, "l", 1), param(ps, "lp", 1), param(ps, "iota", 1));
            let (g, cert) = family::k55_case_cycle(p, l, lp, iota)?;
            (g, cert, Producer::Walk, vec![format!("chained block paths p={p} l={l} l'={lp}")])
        }
        Family::Gp => {
            let (p, t) = (param(ps, "p", 13), param(ps, "t", 5));
            let l = family::crt_exponent(t as i64, p)?;
            let g = family::gp_spanning_subgraph(p, l)?;
            let outcome = hamilton_search(&g, &SearchOptions::with_budget(param(ps, "budget", DEFAULT_BUDGET)));
            match outcome.certificate() {
                Some(c) => {
                    let c = c.clone();
                    (g, c, Producer::Search, vec![format!("GP({}, {l}) from p={p} t={t}", 5 * p)])
                }
                None => return Ok(Err(outcome)),
            }
        }
    }))
}

fn run(cli: Cli) -> Result<u8> {
    let out = &cli.output;
    match cli.cmd {
        Cmd::Build { spec, format } => {
            let spec: GraphSpec = read_json(&spec)?;
            let built = spec.build()?;
            if !built.diagnostics.is_null() {
                eprintln!("{}", built.diagnostics);
            }
            let text = match format {
                Format::Edges => built.graph.to_edge_list(),
                Format::Dot => built.graph.to_dot("X"),
                Format::Json => serde_json::to_string_pretty(&serde_json::json!({
                    "order": built.graph.order(),
                    "hash": built.graph.hash(),
                    "edges": built.graph.edges(),
                    "diagnostics": built.diagnostics,
                }))?,
            };
            emit(out, &text)?;
            Ok(0)
        }
        Cmd::Quotient { graph, rho, blocks, dot } => {
            let (x, _) = load_graph(&graph)?;
            let cells = match (rho, blocks) {
                (Some(r), _) => parse_permutation(&r, x.order())?.cycles(),
                (None, Some(b)) => parse_blocks(&fs::read_to_string(&b)?)?,
                (None, None) => bail!("one of --rho or --blocks is required"),
            };
            let q = quotient_multigraph(&x, &cells)?;
            let text = if dot { q.to_dot("quotient") } else { serde_json::to_string_pretty(&q)? };
            emit(out, &text)?;
            Ok(0)
        }
        Cmd::Lift { graph, rho, cycle } => {
            let (x, _) = load_graph(&graph)?;
            let p = parse_permutation(&rho, x.order())?;
            let rho = semiregular_decomposition(&p).context("rho is not semiregular")?;
            let lift = lift_cycle(&x, &rho, &cycle)?;
            match lift.long_cycle() {
                Some(c) if c.len() == x.order() => {
                    let cert = HamiltonCertificate::new(&x, c.to_vec());
                    let trace = vec![format!("quotient cycle {:?}, net voltage {}", lift.source_cycle, lift.net)];
                    emit(out, &cert_json(&cert, Producer::Lift, trace)?)?;
                    Ok(0)
                }
                _ => {
                    emit(out, &serde_json::to_string_pretty(&lift)?)?;
                    Ok(EXIT_INCONCLUSIVE)
                }
            }
        }
        Cmd::Search { graph, budget, workers } => {
            let (x, _) = load_graph(&graph)?;
            let opts = SearchOptions {
                budget,
                workers,
                ..SearchOptions::default()
            };
            let outcome = hamilton_search(&x, &opts);
            eprintln!("{}: {} nodes", outcome.kind(), outcome.stats().nodes);
            match &outcome {
                SearchOutcome::Found { certificate, .. } => {
                    emit(out, &cert_json(certificate, Producer::Search, vec![])?)?;
                    Ok(0)
                }
                SearchOutcome::ExhaustedNone { .. } => {
                    emit(out, &serde_json::to_string_pretty(&outcome)?)?;
                    Ok(EXIT_EXCEPTION)
                }
                SearchOutcome::BudgetExceeded { .. } => {
                    emit(out, &serde_json::to_string_pretty(&outcome)?)?;
                    Ok(EXIT_INCONCLUSIVE)
                }
            }
        }
        Cmd::Verify { cert, graph } => {
            let (x, _) = load_graph(&graph)?;
            let cert: CertificateFile = read_json(&cert)?;
            cert.verify(&x)?;
            emit(out, "ok")?;
            Ok(0)
        }
        Cmd::Pipeline {
            spec,
            witness,
            blocks,
            budget,
            workers,
            trace_json,
        } => {
            let (x, built_witness) = load_graph(&spec)?;
            let witness = match witness {
                Some(w) => Some(read_json::<GroupSpec>(&w)?.to_group()?),
                None => built_witness,
            };
            let blocks = blocks.map(|b| fs::read_to_string(b).map_err(anyhow::Error::from)).transpose()?;
            let opts = DispatchOptions {
                budget,
                workers,
                blocks: blocks.as_deref().map(parse_blocks).transpose()?,
            };
            let mut trace = dispatch(&x, witness.as_ref(), &opts)?;
            trace.input = Some(spec.display().to_string());
            if trace_json {
                eprintln!("{}", serde_json::to_string_pretty(&trace)?);
            } else {
                eprint!("{}", trace.render());
            }
            match (trace.certificate(), trace.producer()) {
                (Some(c), Some(p)) => {
                    let mut lines = vec![format!("case {}", trace.case)];
                    lines.extend(trace.log.iter().cloned());
                    emit(out, &cert_json(c, p, lines)?)?;
                }
                _ => emit(out, &serde_json::to_string_pretty(&trace.deterministic_json())?)?,
            }
            Ok(trace.exit_code() as u8)
        }
        Cmd::Demo { family, params: ps, dot } => {
            let ps = params(&ps)?;
            let (g, cert, producer, trace) = match demo(family, &ps)? {
                Ok(found) => found,
                Err(outcome) => {
                    eprintln!("no cycle: search ended {}", outcome.kind());
                    emit(out, &serde_json::to_string_pretty(&outcome)?)?;
                    return Ok(match outcome {
                        SearchOutcome::ExhaustedNone { .. } => EXIT_EXCEPTION,
                        _ => EXIT_INCONCLUSIVE,
                    });
                }
            };
            if let Some(d) = dot {
                fs::write(&d, g.to_dot("demo")).with_context(|| format!("writing {}", d.display()))?;
            }
            emit(out, &cert_json(&cert, producer, trace)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    if let Some(cap) = cli.max_elements {
        std::env::set_var(ELEMENT_CAP_ENV, cap.to_string());
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
