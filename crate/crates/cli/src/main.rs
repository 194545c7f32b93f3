//! compactgraph CLI: synthesize, analyze, project, verify, iso.
//!
//! Exit codes: 0 ok, 1 usage or I/O error, 2 verification negative,
//! 3 infeasible synthesis, 4 solve budget exceeded
//! (`COMPACTGRAPH_BUDGET_MS`).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use compactgraph::compactness::classify_compactness;
use compactgraph::graph::Graph;
use compactgraph::iso::is_isomorphic;
use compactgraph::oracle::verify_spec;
use compactgraph::projection;
use compactgraph::synthesis::{solve, CompactnessSpec, SolveOptions, SolveOutcome};

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_NEGATIVE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_TIMEOUT: u8 = 4;

#[derive(Parser)]
#[command(name = "compactgraph", version, about = "Compact interconnect topology toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    EdgeList,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProjectFormat {
    Bracket,
    Edges,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize an (n,s,d)-compact graph, optionally with a girth floor
    Synthesize {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        d: usize,
        /// Minimum girth of the synthesized graph
        #[arg(long)]
        g: Option<usize>,
        /// Connected spanning seed graph (edge list or .proj); defaults to
        /// the canonical breadth-first skeleton
        #[arg(long, value_name = "FILE")]
        seed_file: Option<PathBuf>,
        /// Write the solution here instead of stdout
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "edge-list")]
        format: GraphFormat,
        /// Print the step log with combination counts
        #[arg(long)]
        trace: bool,
    },
    /// Print order, size, degrees, diameter, girth and compactness class
    Analyze { input: PathBuf },
    /// Print a projection of the graph from a root vertex
    Project {
        input: PathBuf,
        #[arg(long)]
        root: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value = "bracket")]
        format: ProjectFormat,
    },
    /// Check a graph against an (n,s,d[,g]) target; exit 2 on failure
    Verify {
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        g: Option<usize>,
    },
    /// Test two graphs for isomorphism; exit 2 when they differ
    Iso { first: PathBuf, second: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // keep help/version on stdout with status 0
            if err.use_stderr() {
                eprint!("{}", err);
                return ExitCode::from(EXIT_ERROR);
            }
            print!("{}", err);
            return ExitCode::from(EXIT_OK);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {}", message);
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Synthesize {
            n,
            s,
            d,
            g,
            seed_file,
            out,
            format,
            trace,
        } => synthesize(n, s, d, g, seed_file, out, format, trace),
        Command::Analyze { input } => analyze(&input),
        Command::Project {
            input,
            root,
            depth,
            format,
        } => project(&input, root, depth, format),
        Command::Verify { input, n, s, d, g } => verify(&input, n, s, d, g),
        Command::Iso { first, second } => iso(&first, &second),
    }
}

/// Reads a graph from an edge-list file, or from the union of the
/// projections in a `.proj` file.
fn load_graph(path: &Path) -> Result<Graph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))?;
    if path.extension().is_some_and(|ext| ext == "proj") {
        let projections =
            projection::parse_proj_file(&text).map_err(|e| format!("{}: {}", path.display(), e))?;
        projection::graph_from_projections(&projections)
            .map_err(|e| format!("{}: {}", path.display(), e))
    } else {
        Graph::from_edge_list(&text).map_err(|e| format!("{}: {}", path.display(), e))
    }
}

fn budget_from_env() -> Result<Option<Duration>, String> {
    match std::env::var("COMPACTGRAPH_BUDGET_MS") {
        Err(_) => Ok(None),
        Ok(raw) => raw
            .parse::<u64>()
            .map(|ms| Some(Duration::from_millis(ms)))
            .map_err(|_| format!("COMPACTGRAPH_BUDGET_MS must be an integer, got `{}`", raw)),
    }
}

#[allow(clippy::too_many_arguments)]
fn synthesize(
    n: usize,
    s: usize,
    d: usize,
    g: Option<usize>,
    seed_file: Option<PathBuf>,
    out: Option<PathBuf>,
    format: GraphFormat,
    trace: bool,
) -> Result<u8, String> {
    let spec = CompactnessSpec::new(n, s, d, g).map_err(|e| e.to_string())?;
    let seed = seed_file.as_deref().map(load_graph).transpose()?;
    let opts = SolveOptions {
        budget: budget_from_env()?,
        ..Default::default()
    };
    let outcome = solve(&spec, seed.as_ref(), &opts).map_err(|e| e.to_string())?;
    if trace {
        print!("{}", outcome.trace().to_text());
    }
    match outcome {
        SolveOutcome::Solved { graph, .. } => {
            let rendered = match format {
                GraphFormat::EdgeList => graph.to_edge_list(),
                GraphFormat::Dot => graph.to_dot(),
            };
            match out {
                Some(path) => fs::write(&path, rendered)
                    .map_err(|e| format!("{}: {}", path.display(), e))?,
                None => print!("{}", rendered),
            }
            Ok(EXIT_OK)
        }
        SolveOutcome::Infeasible { .. } => {
            eprintln!("infeasible: no graph satisfies (n={}, s={}, d={}, g={:?})", n, s, d, g);
            Ok(EXIT_INFEASIBLE)
        }
        SolveOutcome::TimedOut { .. } => {
            eprintln!("timeout: solve budget exceeded");
            Ok(EXIT_TIMEOUT)
        }
    }
}

fn analyze(input: &Path) -> Result<u8, String> {
    let g = load_graph(input)?;
    println!("n: {}", g.order());
    println!("m: {}", g.edge_count());
    let degrees = g.degree_sequence();
    let regular = degrees.windows(2).all(|w| w[0] == w[1]);
    if regular && !degrees.is_empty() {
        println!("degrees: {} (regular)", degrees[0]);
    } else {
        println!(
            "degrees: min {} max {}",
            degrees.iter().min().unwrap_or(&0),
            degrees.iter().max().unwrap_or(&0)
        );
    }
    let diameter = g.diameter().ok();
    match diameter {
        Some(d) => println!("diameter: {}", d),
        None => println!("diameter: disconnected"),
    }
    match g.girth() {
        Some(girth) => println!("girth: {}", girth),
        None => println!("girth: acyclic"),
    }
    match (regular, diameter) {
        (true, Some(d)) if !degrees.is_empty() && degrees[0] >= 2 => {
            let class = classify_compactness(g.order(), degrees[0], d)
                .map_err(|e| e.to_string())?;
            println!("compactness: {} for (s={}, d={})", class, degrees[0], d);
        }
        _ => println!("compactness: not applicable"),
    }
    Ok(EXIT_OK)
}

fn project(input: &Path, root: usize, depth: usize, format: ProjectFormat) -> Result<u8, String> {
    let g = load_graph(input)?;
    let p = projection::build(&g, root, depth).map_err(|e| e.to_string())?;
    match format {
        ProjectFormat::Bracket => println!("{}", p.to_bracket()),
        ProjectFormat::Edges => {
            let edges = p.covered_edges();
            let n = 1 + edges
                .iter()
                .map(|&(u, v)| u.max(v))
                .max()
                .unwrap_or(p.root_vertex());
            println!("{} {}", n, edges.len());
            for (u, v) in edges {
                println!("{} {}", u, v);
            }
        }
    }
    Ok(EXIT_OK)
}

fn verify(input: &Path, n: usize, s: usize, d: usize, g: Option<usize>) -> Result<u8, String> {
    let graph = load_graph(input)?;
    let report = verify_spec(&graph, n, s, d, g).map_err(|e| e.to_string())?;
    println!("{}", report);
    Ok(if report.pass { EXIT_OK } else { EXIT_NEGATIVE })
}

fn iso(first: &Path, second: &Path) -> Result<u8, String> {
    let a = load_graph(first)?;
    let b = load_graph(second)?;
    let isomorphic = is_isomorphic(&a, &b).map_err(|e| e.to_string())?;
    println!("{}", if isomorphic { "isomorphic" } else { "not isomorphic" });
    Ok(if isomorphic { EXIT_OK } else { EXIT_NEGATIVE })
}
