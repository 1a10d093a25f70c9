use std::error::Error;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kegraph::{
    crossing_edges, emit_graph6, is_koenig_egervary, maximum_matching, parse_edge_list,
    parse_graph6, pf_pff_partition_with, sd_ke_partition_with, spectral_summary, Caps, Graph,
    Partition, DEFAULT_MATCHINGS_CAP, DEFAULT_SEARCH_BUDGET,
};
use kegraph_cli::{
    report_for_graph, search, sweep, tool_version, CheckStatus, DecomposeReport, Predicate,
    Report, SearchReport, SpectraReport, SweepReport, SweepSource,
};

#[derive(Parser)]
#[command(
    name = "kegraph",
    version,
    about = "Matching structure, Sachs spectra and verification sweeps for small graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the SD/KE and PF/PFF vertex partitions of one graph.
    Decompose {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Print the determinant, permanent and Sachs subgraph summary of one
    /// graph.
    Spectra {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run every check on one graph and report each outcome.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Run every check across a family of graphs and tally the outcomes.
    Sweep {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        caps: CapArgs,
        /// Worker threads (defaults to one per core).
        #[arg(long)]
        parallel: Option<usize>,
    },
    /// Emit the graphs of a family that satisfy a named predicate.
    Search {
        /// One of: unimodular-pf-full, unimodular-pff-full,
        /// crossing-sachs-without-pm, factorization-violation-non-ke.
        #[arg(long)]
        predicate: String,
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        caps: CapArgs,
        /// Worker threads (defaults to one per core).
        #[arg(long)]
        parallel: Option<usize>,
    },
    /// Generate a graph family as graph6 lines on stdout.
    Gen {
        #[command(flatten)]
        source: SourceArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

#[derive(Args)]
struct InputArgs {
    /// Input file; graph6 files use their first nonblank line.
    #[arg(value_name = "FILE")]
    file: Option<PathBuf>,
    /// How to parse the input file.
    #[arg(long, value_enum, default_value_t = Format::Graph6)]
    format: Format,
    /// Inline graph6 string instead of a file.
    #[arg(long, value_name = "STRING", conflicts_with = "file")]
    graph6: Option<String>,
}

#[derive(Args)]
struct OutputArgs {
    /// Emit JSON instead of text; to stdout when no file is given.
    #[arg(long, value_name = "FILE", num_args = 0..=1, default_missing_value = "-")]
    json: Option<String>,
    /// Record wall-clock milliseconds in the report. Off by default so
    /// repeated runs stay byte-identical.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct CapArgs {
    /// Most maximum matchings enumerated per graph.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_MATCHINGS_CAP)]
    max_matchings_cap: usize,
    /// Node budget for each flower and posy search.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps { max_matchings: self.max_matchings_cap, search_budget: self.budget }
    }
}

#[derive(Args)]
struct SourceArgs {
    /// Number of vertices for generated graphs.
    #[arg(long, value_name = "N")]
    n: Option<usize>,
    /// Every labeled graph on n vertices.
    #[arg(long, conflicts_with_all = ["random", "stream"])]
    exhaustive: bool,
    /// Independent G(n, p) samples.
    #[arg(long, conflicts_with = "stream")]
    random: bool,
    /// Number of random samples.
    #[arg(long, value_name = "COUNT")]
    samples: Option<u64>,
    /// Edge probability for random samples.
    #[arg(long, value_name = "PROB")]
    p: Option<f64>,
    /// Seed for random samples; fixed seed, fixed family.
    #[arg(long, value_name = "SEED")]
    seed: Option<u64>,
    /// File with one graph6 string per line.
    #[arg(long, value_name = "FILE")]
    stream: Option<PathBuf>,
}

impl SourceArgs {
    fn resolve(&self) -> Result<SweepSource, String> {
        if let Some(path) = &self.stream {
            return Ok(SweepSource::Stream { path: path.clone() });
        }
        if self.exhaustive {
            let n = self.n.ok_or("--exhaustive requires --n")?;
            return Ok(SweepSource::Exhaustive { n });
        }
        if self.random {
            let n = self.n.ok_or("--random requires --n")?;
            let samples = self.samples.ok_or("--random requires --samples")?;
            let p = self.p.ok_or("--random requires --p")?;
            let seed = self.seed.ok_or("--random requires --seed")?;
            return Ok(SweepSource::Random { n, samples, p, seed });
        }
        Err("choose a graph source: --exhaustive, --random or --stream".to_string())
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(false) => 0,
        Ok(true) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Executes one subcommand; the returned flag is true when any check
/// failed, which becomes exit code 1.
fn dispatch(cli: Cli) -> Result<bool, Box<dyn Error>> {
    match cli.command {
        Command::Decompose { input, output, caps } => {
            let g = load_graph(&input)?;
            let started = Instant::now();
            let ke = is_koenig_egervary(&g)?;
            let sd = sd_ke_partition_with(&g, &caps.caps())?;
            let pf = pf_pff_partition_with(&g, &caps.caps())?;
            let report = DecomposeReport {
                input: emit_graph6(&g),
                version: tool_version(),
                koenig_egervary: ke,
                sd: sd.block_a().to_vec(),
                ke: sd.block_b().to_vec(),
                pf: pf.block_a().to_vec(),
                pff: pf.block_b().to_vec(),
                crossing_pf_pff: crossing_edges(&pf),
                crossing_sd_ke: crossing_edges(&sd),
                timing_ms: elapsed(&output, started),
            };
            deliver(&output, &report, |r| print_decompose(r, &sd, &pf))?;
            Ok(false)
        }
        Command::Spectra { input, output } => {
            let g = load_graph(&input)?;
            let started = Instant::now();
            let summary = spectral_summary(&g)?;
            let report = SpectraReport {
                input: emit_graph6(&g),
                version: tool_version(),
                det: summary.det.to_string(),
                perm: summary.perm.to_string(),
                sachs_count: summary.sachs_count,
                max_sachs_order: summary.max_sachs_order,
                matching_number: maximum_matching(&g).len(),
                timing_ms: elapsed(&output, started),
            };
            deliver(&output, &report, print_spectra)?;
            Ok(false)
        }
        Command::Verify { input, output, caps } => {
            let g = load_graph(&input)?;
            let started = Instant::now();
            let mut report = report_for_graph(&g, &caps.caps());
            report.timing_ms = elapsed(&output, started);
            deliver(&output, &report, print_verify)?;
            Ok(report.has_failure())
        }
        Command::Sweep { source, output, caps, parallel } => {
            let source = source.resolve()?;
            let started = Instant::now();
            let mut report = sweep(&source, &caps.caps(), parallel)?;
            report.timing_ms = elapsed(&output, started);
            deliver(&output, &report, print_sweep)?;
            Ok(report.has_failure())
        }
        Command::Search { predicate, source, output, caps, parallel } => {
            let pred = Predicate::from_name(&predicate).ok_or_else(|| {
                format!(
                    "unknown predicate {predicate:?}; expected one of: {}",
                    Predicate::ALL.map(|p| p.name()).join(", ")
                )
            })?;
            let source = source.resolve()?;
            let started = Instant::now();
            let mut report = search(pred, &source, &caps.caps(), parallel)?;
            report.timing_ms = elapsed(&output, started);
            deliver(&output, &report, print_search)?;
            Ok(report.hits.iter().any(|h| h.report.has_failure()))
        }
        Command::Gen { source } => {
            let source = source.resolve()?;
            if matches!(source, SweepSource::Stream { .. }) {
                return Err("gen generates graphs; --stream already has them".into());
            }
            for g in kegraph_cli::graph_iter(&source)? {
                println!("{}", emit_graph6(&g));
            }
            Ok(false)
        }
    }
}

fn load_graph(input: &InputArgs) -> Result<Graph, Box<dyn Error>> {
    if let Some(s) = &input.graph6 {
        return Ok(parse_graph6(s)?);
    }
    let path = input
        .file
        .as_ref()
        .ok_or("no input: pass a FILE argument or --graph6 <string>")?;
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    match input.format {
        Format::Graph6 => {
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or("input file has no graph6 line")?;
            Ok(parse_graph6(line)?)
        }
        Format::Edgelist => Ok(parse_edge_list(&text)?),
    }
}

fn elapsed(output: &OutputArgs, started: Instant) -> Option<u64> {
    output.timing.then(|| started.elapsed().as_millis() as u64)
}

/// Routes a finished report: JSON to stdout replaces the text form, JSON
/// to a file accompanies it.
fn deliver<T: Serialize>(
    output: &OutputArgs,
    report: &T,
    print: impl Fn(&T),
) -> Result<(), Box<dyn Error>> {
    match output.json.as_deref() {
        Some("-") => {
            println!("{}", serde_json::to_string_pretty(report)?);
        }
        Some(path) => {
            fs::write(path, serde_json::to_string_pretty(report)? + "\n")
                .map_err(|e| format!("cannot write {path}: {e}"))?;
            print(report);
        }
        None => print(report),
    }
    Ok(())
}

fn edge_list_display(edges: &[(usize, usize)]) -> String {
    if edges.is_empty() {
        return "(none)".to_string();
    }
    edges
        .iter()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn print_decompose(report: &DecomposeReport, sd: &Partition, pf: &Partition) {
    println!("input: {}", report.input);
    println!("koenig-egervary: {}", report.koenig_egervary);
    println!("sd: {}", sd.block_a());
    println!("ke: {}", sd.block_b());
    println!("pf: {}", pf.block_a());
    println!("pff: {}", pf.block_b());
    println!("crossing-sd-ke: {}", edge_list_display(&report.crossing_sd_ke));
    println!("crossing-pf-pff: {}", edge_list_display(&report.crossing_pf_pff));
}

fn print_spectra(report: &SpectraReport) {
    println!("input: {}", report.input);
    println!("det: {}", report.det);
    println!("perm: {}", report.perm);
    println!("sachs-count: {}", report.sachs_count);
    println!("max-sachs-order: {}", report.max_sachs_order);
    println!("matching-number: {}", report.matching_number);
}

fn print_verify(report: &Report) {
    println!("input: {}", report.input);
    let mut failures = 0;
    for c in &report.checks {
        println!("{}: {}", c.id, c.status.as_str());
        if let Some(witness) = &c.witness {
            if c.status == CheckStatus::Fail {
                failures += 1;
                println!("  witness: {witness}");
            } else if let Some(reason) = witness.get("reason").and_then(|r| r.as_str()) {
                println!("  reason: {reason}");
            }
        }
    }
    println!("failures: {failures}");
}

fn print_sweep(report: &SweepReport) {
    println!("input: {}", report.input);
    println!("graphs: {}", report.graphs);
    println!("{:<36} {:>9} {:>6} {:>9} {:>6}", "check", "pass", "fail", "na", "cap");
    for c in &report.checks {
        println!(
            "{:<36} {:>9} {:>6} {:>9} {:>6}",
            c.id, c.pass, c.fail, c.not_applicable, c.cap_exceeded
        );
    }
    println!("failures: {}", report.failures.len());
    for f in &report.failures {
        println!("  {} {}", f.graph, f.check.id);
    }
}

fn print_search(report: &SearchReport) {
    for hit in &report.hits {
        println!("{}", hit.graph);
    }
    eprintln!(
        "predicate {}: {} hits over {} graphs",
        report.predicate,
        report.hits.len(),
        report.graphs
    );
}
