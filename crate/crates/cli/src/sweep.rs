//! Graph sources, sweep aggregation and predicate search.
//!
//! A sweep runs every check over a family of graphs and tallies outcomes;
//! a search keeps the graphs satisfying a named predicate. Both stream
//! their instances in a fixed order and merge per-graph results in that
//! same order, so reports are byte-identical across runs and across worker
//! counts.

use std::collections::HashSet;
use std::fs;
use std::path::PathBuf;

use kegraph::{
    crossing_edges, det_bareiss, emit_graph6, enumerate_labeled_graphs,
    enumerate_max_order_sachs, is_koenig_egervary, maximum_matching, parse_graph6,
    pf_pff_partition_with, random_graph, Caps, DecompError, Graph, Graph6Error, GraphError,
    IntMatrix, SachsComponent, SachsError,
};
use num_bigint::BigInt;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use thiserror::Error;

use crate::checks::{report_for_graph, tool_version, ALL_CHECK_IDS};
use crate::report::{
    CheckCounts, CheckStatus, SearchHit, SearchReport, SweepFailure, SweepReport,
};

/// Graphs processed per parallel batch; bounds peak report memory while
/// keeping the workers busy.
const BATCH: usize = 2048;

/// Where the graphs of a sweep or search come from.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepSource {
    /// Every labeled graph on `n` vertices.
    Exhaustive { n: usize },
    /// Independent samples of G(n, p), derived deterministically from the
    /// seed.
    Random { n: usize, samples: u64, p: f64, seed: u64 },
    /// A file with one graph6 string per line; blank lines are skipped.
    Stream { path: PathBuf },
}

impl SweepSource {
    /// Short description used as the `input` field of reports.
    pub fn describe(&self) -> String {
        match self {
            SweepSource::Exhaustive { n } => format!("exhaustive n={n}"),
            SweepSource::Random { n, samples, p, seed } => {
                format!("random n={n} samples={samples} p={p} seed={seed}")
            }
            SweepSource::Stream { path } => format!("stream {}", path.display()),
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            SweepSource::Random { seed, .. } => Some(*seed),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cannot read {path}: {source}")]
    UnreadableStream { path: String, source: std::io::Error },
    #[error("{path}:{line}: {source}")]
    BadStreamLine { path: String, line: usize, source: Graph6Error },
}

/// Streams the graphs of a source in processing order. Exhaustive
/// enumeration stays lazy so large families never sit in memory at once;
/// random and file sources are validated up front.
pub fn graph_iter(source: &SweepSource) -> Result<Box<dyn Iterator<Item = Graph>>, SweepError> {
    match source {
        SweepSource::Exhaustive { n } => Ok(Box::new(enumerate_labeled_graphs(*n)?)),
        SweepSource::Random { n, samples, p, seed } => {
            let mut master = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
            let graphs = (0..*samples)
                .map(|_| random_graph(*n, *p, master.next_u64()))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Box::new(graphs.into_iter()))
        }
        SweepSource::Stream { path } => {
            let text = fs::read_to_string(path).map_err(|source| SweepError::UnreadableStream {
                path: path.display().to_string(),
                source,
            })?;
            let mut graphs = Vec::new();
            for (i, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let g = parse_graph6(line).map_err(|source| SweepError::BadStreamLine {
                    path: path.display().to_string(),
                    line: i + 1,
                    source,
                })?;
                graphs.push(g);
            }
            Ok(Box::new(graphs.into_iter()))
        }
    }
}

/// Materializes the graphs of a source, in the order they are processed.
pub fn source_graphs(source: &SweepSource) -> Result<Vec<Graph>, SweepError> {
    Ok(graph_iter(source)?.collect())
}

/// Applies `work` to every graph on a pool of `parallel` workers (the
/// rayon default when `None`), delivering results to `consume` in input
/// order regardless of scheduling.
fn batched<T, W, C>(
    graphs: impl Iterator<Item = Graph>,
    parallel: Option<usize>,
    work: W,
    mut consume: C,
) where
    T: Send,
    W: Fn(&Graph) -> T + Sync,
    C: FnMut(&Graph, T),
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallel.unwrap_or(0))
        .build()
        .expect("thread pool construction");
    let mut graphs = graphs;
    loop {
        let batch: Vec<Graph> = graphs.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            break;
        }
        let results: Vec<T> = pool.install(|| batch.par_iter().map(&work).collect());
        for (g, r) in batch.iter().zip(results) {
            consume(g, r);
        }
    }
}

/// Runs every check over the graphs of a source and aggregates outcomes.
pub fn sweep(
    source: &SweepSource,
    caps: &Caps,
    parallel: Option<usize>,
) -> Result<SweepReport, SweepError> {
    let graphs = graph_iter(source)?;
    let mut counts: Vec<CheckCounts> = ALL_CHECK_IDS
        .iter()
        .map(|id| CheckCounts { id: id.to_string(), ..CheckCounts::default() })
        .collect();
    let mut failures = Vec::new();
    let mut total = 0u64;
    batched(
        graphs,
        parallel,
        |g| report_for_graph(g, caps),
        |_, report| {
            total += 1;
            for (slot, check) in counts.iter_mut().zip(report.checks) {
                debug_assert_eq!(slot.id, check.id);
                slot.record(check.status);
                if check.status == CheckStatus::Fail {
                    failures.push(SweepFailure { graph: report.input.clone(), check });
                }
            }
        },
    );
    Ok(SweepReport {
        input: source.describe(),
        version: tool_version(),
        seed: source.seed(),
        graphs: total,
        checks: counts,
        failures,
        timing_ms: None,
    })
}

/// The named graph properties `search` can hunt for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    /// Determinant is plus or minus one and every vertex lies on a perfect
    /// flower.
    UnimodularPfFull,
    /// Determinant is plus or minus one and no vertex lies on a perfect
    /// flower.
    UnimodularPffFull,
    /// Koenig-Egervary, no perfect matching, and some maximum-order Sachs
    /// subgraph uses an edge between the two partition blocks.
    CrossingSachsWithoutPm,
    /// Not Koenig-Egervary and the determinant does not factor across the
    /// perfect-flower partition.
    FactorizationViolationNonKe,
}

impl Predicate {
    pub const ALL: [Predicate; 4] = [
        Predicate::UnimodularPfFull,
        Predicate::UnimodularPffFull,
        Predicate::CrossingSachsWithoutPm,
        Predicate::FactorizationViolationNonKe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::UnimodularPfFull => "unimodular-pf-full",
            Predicate::UnimodularPffFull => "unimodular-pff-full",
            Predicate::CrossingSachsWithoutPm => "crossing-sachs-without-pm",
            Predicate::FactorizationViolationNonKe => "factorization-violation-non-ke",
        }
    }

    pub fn from_name(name: &str) -> Option<Predicate> {
        Predicate::ALL.into_iter().find(|p| p.name() == name)
    }
}

impl std::fmt::Display for Predicate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
pub enum PredicateError {
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Sachs(#[from] SachsError),
}

/// Decides whether one graph satisfies a predicate.
pub fn predicate_hit(g: &Graph, caps: &Caps, pred: Predicate) -> Result<bool, PredicateError> {
    match pred {
        Predicate::UnimodularPfFull => {
            if !is_unimodular(g) {
                return Ok(false);
            }
            let part = pf_pff_partition_with(g, caps)?;
            Ok(part.block_a() == g.vertices())
        }
        Predicate::UnimodularPffFull => {
            if !is_unimodular(g) {
                return Ok(false);
            }
            let part = pf_pff_partition_with(g, caps)?;
            Ok(part.block_b() == g.vertices())
        }
        Predicate::CrossingSachsWithoutPm => {
            if maximum_matching(g).is_perfect() || !is_koenig_egervary(g)? {
                return Ok(false);
            }
            let part = pf_pff_partition_with(g, caps)?;
            let crossing: HashSet<(usize, usize)> = crossing_edges(&part).into_iter().collect();
            if crossing.is_empty() {
                return Ok(false);
            }
            for s in enumerate_max_order_sachs(g)? {
                for c in s.components() {
                    if component_crosses(c, &crossing) {
                        return Ok(true);
                    }
                }
            }
            Ok(false)
        }
        Predicate::FactorizationViolationNonKe => {
            if is_koenig_egervary(g)? {
                return Ok(false);
            }
            let part = pf_pff_partition_with(g, caps)?;
            let whole = det_bareiss(&IntMatrix::adjacency(g));
            let (a, _) = kegraph::induced_subgraph(g, part.block_a()).expect("block in host");
            let (b, _) = kegraph::induced_subgraph(g, part.block_b()).expect("block in host");
            let product = det_bareiss(&IntMatrix::adjacency(&a)) * det_bareiss(&IntMatrix::adjacency(&b));
            Ok(whole != product)
        }
    }
}

fn is_unimodular(g: &Graph) -> bool {
    let det = det_bareiss(&IntMatrix::adjacency(g));
    det == BigInt::from(1) || det == BigInt::from(-1)
}

fn component_crosses(c: &SachsComponent, crossing: &HashSet<(usize, usize)>) -> bool {
    match c {
        SachsComponent::Edge(u, v) => {
            let (a, b) = (*u.min(v), *u.max(v));
            crossing.contains(&(a, b))
        }
        SachsComponent::Cycle(cyc) => (0..cyc.len()).any(|i| {
            let a = cyc[i];
            let b = cyc[(i + 1) % cyc.len()];
            crossing.contains(&(a.min(b), a.max(b)))
        }),
    }
}

/// Streams the graphs of a source and keeps every predicate hit together
/// with its full report. A graph whose partition computation exceeds the
/// caps cannot be classified and is not emitted.
pub fn search(
    pred: Predicate,
    source: &SweepSource,
    caps: &Caps,
    parallel: Option<usize>,
) -> Result<SearchReport, SweepError> {
    let graphs = graph_iter(source)?;
    let mut hits = Vec::new();
    let mut total = 0u64;
    batched(
        graphs,
        parallel,
        |g| match predicate_hit(g, caps, pred) {
            Ok(true) => Some(report_for_graph(g, caps)),
            _ => None,
        },
        |g, report| {
            total += 1;
            if let Some(report) = report {
                hits.push(SearchHit { graph: emit_graph6(g), report });
            }
        },
    );
    Ok(SearchReport {
        input: source.describe(),
        version: tool_version(),
        seed: source.seed(),
        predicate: pred.name().to_string(),
        graphs: total,
        hits,
        timing_ms: None,
    })
}

/// Confirms from the serialized graph alone that a search hit still
/// satisfies its predicate.
pub fn hit_revalidates(pred: Predicate, graph: &str, caps: &Caps) -> bool {
    match parse_graph6(graph) {
        Ok(g) => matches!(predicate_hit(&g, caps, pred), Ok(true)),
        Err(_) => false,
    }
}
