mod cache;
mod commands;
mod error;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use obslab_core::drawing::parse_drawing;
use obslab_core::gf2::HistogramFile;
use obslab_core::graph::{CrossingSetFile, GraphFile};
use obslab_core::{CrossingSet, Graph, PairIndex};
use serde::Serialize;

use cache::{content_hash, Cache};
use commands::Report;
use error::CliError;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "obslab", version, about = "Crossing-parity realisability for small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write the report here instead of stdout; a run manifest goes next to it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for parallel sweeps. Results do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Recompute spectra even when a cached result exists.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct GraphArgs {
    /// Built-in graph: K4, K5, K6, K2,3, K3,3, M_k, C_n, P_n.
    #[arg(long)]
    graph: Option<String>,
    /// Graph JSON file: {"n": .., "edges": [[u, v], ..]}.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sizes, planarity and cohomology dimension.
    GraphInfo(GraphArgs),
    /// Cell counts and surface check of the deleted product.
    Complex(GraphArgs),
    /// Graphs up to isomorphism whose deleted product is a closed surface.
    SurfaceScan {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Number of realisable sets of each cardinality.
    Spectrum(GraphArgs),
    /// Decide whether a crossing-parity set is realisable.
    Check {
        #[command(flatten)]
        graph: GraphArgs,
        /// `empty`, `full`, or a JSON file of edge pairs [[[a, b], [c, d]], ..].
        #[arg(long)]
        set: String,
    },
    /// Compare the local parity conditions with the realisable coset.
    Characterise(GraphArgs),
    /// Orbit representatives of k-sets of pairs under the automorphism group.
    Orbits {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        card: usize,
    },
    /// Upper bound on realisable set size for K_n.
    Bound {
        #[arg(long)]
        n: usize,
    },
    /// Validate a drawing and count its crossings.
    VerifyDrawing { file: PathBuf },
}

#[derive(Debug, Serialize)]
struct RunManifest<'a> {
    command: &'a str,
    input_hash: String,
    version: &'a str,
    elapsed_ms: u128,
    workers: usize,
    output: &'a Path,
}

/// A rendered report together with what identifies its input.
struct Outcome {
    command: &'static str,
    input_hash: String,
    body: String,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn load_graph(args: &GraphArgs) -> Result<Graph, CliError> {
    match (&args.graph, &args.file) {
        (Some(name), _) => Ok(Graph::from_name(name)?),
        (None, Some(path)) => {
            let file: GraphFile = serde_json::from_str(&read(path)?)
                .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
            Ok(Graph::from_file(file)?)
        }
        (None, None) => Err(CliError::Argument("one of --graph or --file is required".into())),
    }
}

/// Labels do not affect any result, so they are left out of the hash.
fn canonical_graph(g: &Graph) -> String {
    let mut file = g.to_file();
    file.labels = None;
    serde_json::to_string(&file).expect("graph files serialise")
}

fn load_set(spec: &str, idx: &PairIndex) -> Result<CrossingSet, CliError> {
    match spec {
        "empty" => Ok(CrossingSet::empty(idx)),
        "full" => Ok(CrossingSet::full(idx)),
        path => {
            let path = Path::new(path);
            let file: CrossingSetFile = serde_json::from_str(&read(path)?)
                .map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))?;
            Ok(CrossingSet::from_file(idx, &file)?)
        }
    }
}

fn render(report: &impl Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialise");
            s.push('\n');
            s
        }
        Format::Text => report.text(),
    }
}

fn spectrum(g: &Graph, out: &OutputArgs, workers: usize) -> Result<HistogramFile, CliError> {
    let cache = if out.no_cache { None } else { Cache::from_env() };
    let key = content_hash(&[&canonical_graph(g), "spectrum", VERSION]);
    if let Some(hit) = cache.as_ref().and_then(|c| c.get(&key)) {
        if let Ok(file) = serde_json::from_str(&hit) {
            return Ok(file);
        }
    }
    let file = commands::spectrum(g, workers)?;
    if let Some(c) = &cache {
        // A cache that cannot be written only costs a recomputation later.
        let _ = c.put(&key, &serde_json::to_string(&file).expect("histograms serialise"));
    }
    Ok(file)
}

fn execute(cli: &Cli, workers: usize) -> Result<Outcome, CliError> {
    let fmt = cli.output.format;
    let graph_outcome = |command, args: &GraphArgs, extra: &str, f: &dyn Fn(&Graph) -> Result<String, CliError>| {
        let g = load_graph(args)?;
        let body = f(&g)?;
        Ok(Outcome { command, input_hash: content_hash(&[&canonical_graph(&g), command, extra]), body })
    };
    match &cli.command {
        Command::GraphInfo(a) => graph_outcome("graph-info", a, "", &|g| Ok(render(&commands::graph_info(g)?, fmt))),
        Command::Complex(a) => graph_outcome("complex", a, "", &|g| Ok(render(&commands::complex(g), fmt))),
        Command::Spectrum(a) => {
            graph_outcome("spectrum", a, "", &|g| Ok(render(&spectrum(g, &cli.output, workers)?, fmt)))
        }
        Command::Characterise(a) => {
            graph_outcome("characterise", a, "", &|g| Ok(render(&commands::characterise(g), fmt)))
        }
        Command::Check { graph, set } => {
            let g = load_graph(graph)?;
            let idx = PairIndex::new(&g);
            let a = load_set(set, &idx)?;
            let members: Vec<String> = a.members().map(|i| i.to_string()).collect();
            Ok(Outcome {
                command: "check",
                input_hash: content_hash(&[&canonical_graph(&g), "check", &members.join(",")]),
                body: render(&commands::check(&g, &a)?, fmt),
            })
        }
        Command::Orbits { graph, card } => {
            graph_outcome("orbits", graph, &card.to_string(), &|g| Ok(render(&commands::orbits(g, *card)?, fmt)))
        }
        Command::SurfaceScan { max_n } => Ok(Outcome {
            command: "surface-scan",
            input_hash: content_hash(&["surface-scan", &max_n.to_string()]),
            body: render(&commands::surface_scan(*max_n)?, fmt),
        }),
        Command::Bound { n } => Ok(Outcome {
            command: "bound",
            input_hash: content_hash(&["bound", &n.to_string()]),
            body: render(&commands::bound(*n)?, fmt),
        }),
        Command::VerifyDrawing { file } => {
            let text = read(file)?;
            let d = parse_drawing(&text)?;
            Ok(Outcome {
                command: "verify-drawing",
                input_hash: content_hash(&["verify-drawing", &text]),
                body: render(&commands::verify_drawing(&d), fmt),
            })
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let start = Instant::now();
    let workers = match cli.output.workers {
        Some(0) => return Err(CliError::Argument("--workers must be at least 1".into())),
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let outcome = execute(cli, workers)?;
    let Some(path) = &cli.output.out else {
        print!("{}", outcome.body);
        return Ok(());
    };
    fs::write(path, &outcome.body).map_err(|e| CliError::io(path, e))?;
    let manifest = RunManifest {
        command: outcome.command,
        input_hash: outcome.input_hash,
        version: VERSION,
        elapsed_ms: start.elapsed().as_millis(),
        workers,
        output: path,
    };
    let mut manifest_path = path.clone().into_os_string();
    manifest_path.push(".manifest.json");
    let body = serde_json::to_string_pretty(&manifest).expect("manifests serialise") + "\n";
    fs::write(&manifest_path, body).map_err(|e| CliError::io(manifest_path, e))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(5) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
