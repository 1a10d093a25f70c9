//! Serializable report shapes shared by the CLI subcommands.
//!
//! Reports are plain data. Every field is either a primitive, a string, or
//! more report data, so the JSON form is stable and diffable. Determinants
//! and permanents are serialized as decimal strings because they outgrow
//! JSON's number range long before they outgrow the library.

use serde::{Deserialize, Serialize};

/// Outcome of a single check on a single graph.
#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    /// The claim held.
    Pass,
    /// The claim was violated; a witness is attached.
    Fail,
    /// The graph does not satisfy the check's hypothesis.
    NotApplicable,
    /// A resource cap stopped the computation before an answer was reached.
    CapExceeded,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::NotApplicable => "not-applicable",
            CheckStatus::CapExceeded => "cap-exceeded",
        }
    }
}

/// One check outcome, with a witness when there is something to show.
///
/// A `fail` result always carries a witness that names the graph (as
/// graph6) plus the data that violates the claim, so it can be re-checked
/// from the serialized form alone.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub id: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
}

impl CheckResult {
    pub fn pass(id: &str) -> Self {
        CheckResult { id: id.to_string(), status: CheckStatus::Pass, witness: None }
    }

    pub fn fail(id: &str, witness: serde_json::Value) -> Self {
        CheckResult { id: id.to_string(), status: CheckStatus::Fail, witness: Some(witness) }
    }

    pub fn not_applicable(id: &str) -> Self {
        CheckResult { id: id.to_string(), status: CheckStatus::NotApplicable, witness: None }
    }

    pub fn cap_exceeded(id: &str, reason: &str) -> Self {
        CheckResult {
            id: id.to_string(),
            status: CheckStatus::CapExceeded,
            witness: Some(serde_json::json!({ "reason": reason })),
        }
    }
}

/// Full verification report for one graph.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct Report {
    /// The graph that was checked, as graph6.
    pub input: String,
    /// Version of the tool that produced the report.
    pub version: String,
    /// Seed used to generate the input, when it came from a random source.
    pub seed: Option<u64>,
    pub checks: Vec<CheckResult>,
    /// Wall-clock milliseconds, populated only when timing is requested so
    /// that default output stays byte-identical across runs.
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn has_failure(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }
}

/// Per-check tallies accumulated over a sweep.
#[derive(Serialize, Deserialize, Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckCounts {
    pub id: String,
    pub pass: u64,
    pub fail: u64,
    pub not_applicable: u64,
    pub cap_exceeded: u64,
}

impl CheckCounts {
    pub fn record(&mut self, status: CheckStatus) {
        match status {
            CheckStatus::Pass => self.pass += 1,
            CheckStatus::Fail => self.fail += 1,
            CheckStatus::NotApplicable => self.not_applicable += 1,
            CheckStatus::CapExceeded => self.cap_exceeded += 1,
        }
    }
}

/// A check failure observed during a sweep, pinned to its graph.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct SweepFailure {
    pub graph: String,
    pub check: CheckResult,
}

/// Aggregate report for a sweep over many graphs.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct SweepReport {
    /// Description of the graph source, e.g. `exhaustive n=5`.
    pub input: String,
    pub version: String,
    pub seed: Option<u64>,
    /// Number of graphs examined.
    pub graphs: u64,
    pub checks: Vec<CheckCounts>,
    /// Every failing check outcome, in input order.
    pub failures: Vec<SweepFailure>,
    pub timing_ms: Option<u64>,
}

impl SweepReport {
    pub fn has_failure(&self) -> bool {
        !self.failures.is_empty()
    }
}

/// One graph matched by a search predicate, with its full report.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct SearchHit {
    pub graph: String,
    pub report: Report,
}

/// Aggregate report for a predicate search over many graphs.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct SearchReport {
    pub input: String,
    pub version: String,
    pub seed: Option<u64>,
    pub predicate: String,
    pub graphs: u64,
    pub hits: Vec<SearchHit>,
    pub timing_ms: Option<u64>,
}

/// Vertex partition report for the `decompose` subcommand.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct DecomposeReport {
    pub input: String,
    pub version: String,
    pub koenig_egervary: bool,
    /// Vertices reachable by a flower or posy under some maximum matching.
    pub sd: Vec<usize>,
    /// Complement of `sd`; induces a König-Egerváry subgraph.
    pub ke: Vec<usize>,
    /// Vertices on a perfect flower under some maximum matching.
    pub pf: Vec<usize>,
    /// Complement of `pf`.
    pub pff: Vec<usize>,
    /// Edges joining `pf` to `pff`.
    pub crossing_pf_pff: Vec<(usize, usize)>,
    /// Edges joining `sd` to `ke`.
    pub crossing_sd_ke: Vec<(usize, usize)>,
    pub timing_ms: Option<u64>,
}

/// Spectral summary report for the `spectra` subcommand.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct SpectraReport {
    pub input: String,
    pub version: String,
    /// Adjacency determinant, as a decimal string.
    pub det: String,
    /// Adjacency permanent, as a decimal string.
    pub perm: String,
    /// Number of spanning Sachs subgraphs.
    pub sachs_count: u64,
    /// Largest order over all Sachs subgraphs, spanning or not.
    pub max_sachs_order: usize,
    /// Size of a maximum matching.
    pub matching_number: usize,
    pub timing_ms: Option<u64>,
}
