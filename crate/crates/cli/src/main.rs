//! Command-line front end: verification runs, minor and colouring queries,
//! enumeration, cockades and random extremal trials.
//!
//! Exit codes: 0 found or passed, 1 definitive negative, 2 usage or parse
//! error, 3 budget or time limit exhausted.

mod cache;
mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

/// Version of the JSON report and cache entry layout.
pub const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "minorforge", version, about = "Exact minor search and exhaustive lemma verification for small graphs")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct RunArgs {
    /// Output format; json unless the command says otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Leave out timing fields so identical runs give identical bytes.
    #[arg(long, global = true)]
    pub stable: bool,
    /// Worker threads for parallel runs (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Search-node budget per minor search.
    #[arg(long, global = true, default_value_t = minorforge::minor::DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
    /// Wall-clock limit in seconds for the whole run.
    #[arg(long, global = true)]
    pub time_limit: Option<f64>,
    /// Answer cache directory for `minor` and `color`.
    #[arg(long, global = true, env = "MINORFORGE_CACHE")]
    pub cache_dir: Option<PathBuf>,
    /// Seed for randomised runs.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Clone, Debug)]
pub enum Command {
    /// Run one of the built-in verifications.
    Verify(VerifyArgs),
    /// Look for a minor of the pattern in the graph.
    Minor(MinorArgs),
    /// A colouring with at most seven colours, or a (8,4) minor.
    Color(ColorArgs),
    /// List graphs on n vertices, one per isomorphism class, as graph6.
    Enumerate(EnumerateArgs),
    /// Build a cockade of K2,2,2,2 copies glued on 4-cliques.
    Cockade(CockadeArgs),
    /// Random graphs with a given edge count, checked for a (8,4) minor.
    Extremal(ExtremalArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    #[value(name = "lemma-h8")]
    LemmaH8,
    #[value(name = "lemma-k64")]
    LemmaK64,
    #[value(name = "family-counts")]
    FamilyCounts,
    Configs,
    #[value(name = "corollary-k84")]
    CorollaryK84,
    Gadgets,
    Jorgensen,
    Cockade,
    Extremal,
}

#[derive(Args, Clone, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub target: Target,
    /// cockade: number of copies.
    #[arg(long, default_value_t = 2)]
    pub copies: usize,
    /// cockade: JSON file with the glue schedule.
    #[arg(long)]
    pub schedule: Option<PathBuf>,
    /// extremal: vertex count.
    #[arg(long = "n", default_value_t = 10)]
    pub n: usize,
    /// extremal: number of random graphs.
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    /// jorgensen: random separations per sampled order.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// jorgensen: orders checked exhaustively, from 7 up to this.
    #[arg(long, default_value_t = 9)]
    pub exhaustive_max_n: usize,
    /// jorgensen: orders that are sampled.
    #[arg(long, value_delimiter = ',', default_values_t = [10, 11])]
    pub sample_orders: Vec<usize>,
    /// corollary-k84: check this complement instead of the built-in list.
    #[arg(long)]
    pub graph: Option<String>,
}

#[derive(Args, Clone, Debug)]
pub struct MinorArgs {
    /// Host graph: graph6, a file, or `-` for stdin.
    #[arg(long)]
    pub graph: String,
    /// `kts:t,s` for K_t minus any s edges, or a graph as for --graph.
    #[arg(long)]
    pub pattern: String,
}

#[derive(Args, Clone, Debug)]
pub struct ColorArgs {
    /// Graph6, a file, or `-` for stdin.
    #[arg(long)]
    pub graph: String,
    /// Decide exactly (exact chromatic number first); fails above the exact limit.
    #[arg(long)]
    pub certify: bool,
    /// Node budget for the exact colouring search.
    #[arg(long, default_value_t = minorforge::coloring::DEFAULT_COLOR_BUDGET)]
    pub color_budget: u64,
}

#[derive(Args, Clone, Debug)]
pub struct EnumerateArgs {
    #[arg(short = 'n')]
    pub n: usize,
    #[arg(long)]
    pub min_degree: Option<usize>,
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[arg(long)]
    pub edges: Option<usize>,
    #[arg(long)]
    pub alpha_at_most: Option<usize>,
    #[arg(long)]
    pub min_connectivity: Option<usize>,
    /// Exclude graphs containing this subgraph (repeatable).
    #[arg(long)]
    pub forbid: Vec<String>,
    /// Print only the number of graphs.
    #[arg(long)]
    pub count: bool,
}

#[derive(Args, Clone, Debug)]
pub struct CockadeArgs {
    #[arg(long)]
    pub copies: usize,
    /// JSON file with the glue schedule; default chains each copy onto the last.
    #[arg(long)]
    pub schedule: Option<PathBuf>,
}

#[derive(Args, Clone, Debug)]
pub struct ExtremalArgs {
    #[arg(long = "n")]
    pub n: usize,
    #[arg(long)]
    pub trials: usize,
    /// Edge count; default is the threshold ceil(4.5n - 12).
    #[arg(long)]
    pub edges: Option<usize>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

/// What a command produced: JSON fields, the text rendering and the exit
/// code.
pub struct Output {
    pub body: Map<String, Value>,
    pub text: String,
    pub code: u8,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Verify(_) => "verify",
            Command::Minor(_) => "minor",
            Command::Color(_) => "color",
            Command::Enumerate(_) => "enumerate",
            Command::Cockade(_) => "cockade",
            Command::Extremal(_) => "extremal",
        }
    }

    fn default_format(&self) -> Format {
        match self {
            Command::Enumerate(_) => Format::Text,
            _ => Format::Json,
        }
    }
}

fn envelope(run: &RunArgs, command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(command));
    m.insert("seed".into(), json!(run.seed));
    m.insert("budgets".into(), json!({ "nodes": run.node_budget, "time_limit_s": run.time_limit }));
    m
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("elapsed_ms");
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn render(run: &RunArgs, command: &Command, out: Output, elapsed: Duration) -> String {
    match run.format.unwrap_or(command.default_format()) {
        Format::Text => out.text,
        Format::Json => {
            let mut body = envelope(run, command.name());
            body.extend(out.body);
            let mut v = Value::Object(body);
            if run.stable {
                strip_timing(&mut v);
            } else {
                v["elapsed_ms"] = json!(elapsed.as_secs_f64() * 1000.0);
            }
            serde_json::to_string_pretty(&v).expect("serialisable") + "\n"
        }
    }
}

fn write_output(run: &RunArgs, text: &str) -> Result<(), CliError> {
    match &run.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Usage(format!("--out {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not an error for a streaming tool
            let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
            Ok(())
        }
    }
}

fn fail(e: CliError) -> ExitCode {
    let (CliError::Usage(msg) | CliError::Budget(msg)) = &e;
    eprintln!("error: {msg}");
    ExitCode::from(e.code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.run.threads {
        if t == 0 {
            return fail(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().expect("pool built once");
    }
    if cli.run.node_budget == 0 || cli.run.time_limit.is_some_and(|s| !(s > 0.0 && s.is_finite())) {
        return fail(CliError::Usage("budgets must be positive".into()));
    }
    let started = Instant::now();
    let (run, command) = (cli.run, cli.command);
    let (tx, rx) = mpsc::channel();
    {
        let (run, command) = (run.clone(), command.clone());
        // the searches recurse, so give the worker a generous stack
        std::thread::Builder::new()
            .stack_size(256 << 20)
            .spawn(move || {
                let _ = tx.send(commands::run(&run, &command));
            })
            .expect("spawn worker");
    }
    let result = match run.time_limit {
        Some(s) => match rx.recv_timeout(Duration::from_secs_f64(s)) {
            Ok(r) => r,
            Err(mpsc::RecvTimeoutError::Timeout) => {
                let mut body = Map::new();
                body.insert("status".into(), json!("timeout"));
                Ok(Output { body, text: "timeout\n".into(), code: 3 })
            }
            Err(mpsc::RecvTimeoutError::Disconnected) => return ExitCode::from(101),
        },
        None => match rx.recv() {
            Ok(r) => r,
            Err(_) => return ExitCode::from(101),
        },
    };
    let out = match result {
        Ok(out) => out,
        Err(e) => return fail(e),
    };
    let code = out.code;
    let text = render(&run, &command, out, started.elapsed());
    if let Err(e) = write_output(&run, &text) {
        return fail(e);
    }
    // a timed-out worker is still running; do not wait for it
    std::process::exit(i32::from(code))
}
