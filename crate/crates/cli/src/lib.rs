//! Library behind the `kegraph` command line tool.
//!
//! The binary is a thin argument-parsing shell; everything it does lives
//! here so the checks, sweeps and searches can be driven and tested as
//! ordinary functions. See [`checks`] for the per-graph verification
//! suite, [`sweep`] for multi-graph drivers, and [`report`] for the
//! serialized shapes.

pub mod checks;
pub mod report;
pub mod sweep;

pub use checks::{
    report_for_graph, revalidate, tool_version, verify_graph, ALL_CHECK_IDS,
    DET_ORACLE_AGREEMENT, DIFFERENCE_PAIR_CAP, FLOWER_POSY_KE_EQUIVALENCE,
    MATCHING_DIFFERENCE_ALTERNATION, MAX_SACHS_NO_ODD_CYCLE, MAX_SACHS_ORDER_MATCHES_MATCHING,
    NO_CROSSING_SACHS, PERM_ORACLE_AGREEMENT, PF_DET_FACTORIZATION, PF_MATCHING_ADDITIVITY,
    PF_PERM_FACTORIZATION, SD_DET_FACTORIZATION,
};
pub use report::{
    CheckCounts, CheckResult, CheckStatus, DecomposeReport, Report, SearchHit, SearchReport,
    SpectraReport, SweepFailure, SweepReport,
};
pub use sweep::{
    graph_iter, hit_revalidates, predicate_hit, search, source_graphs, sweep, Predicate,
    PredicateError, SweepError, SweepSource,
};
