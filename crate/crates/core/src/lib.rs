//! Exact matching-theoretic structure of small simple graphs.
//!
//! The crate computes maximum matchings and enumerates all of them, detects
//! the alternating configurations a matching induces (blossoms, flowers,
//! posies, perfect flowers), derives the two vertex partitions those
//! configurations generate, and enumerates Sachs subgraphs to obtain the
//! determinant and permanent of the adjacency matrix combinatorially.
//! Independent oracles (fraction-free elimination, inclusion-exclusion,
//! brute-force subset searches) recompute the same quantities by unrelated
//! algorithms so that agreement between the two routes is meaningful
//! evidence rather than a tautology.
//!
//! Everything is exact integer arithmetic; sizes are capped for the
//! exponential searches and every cap violation is an explicit error, never
//! a silent truncation.

pub mod decomp;
pub mod flowers;
pub mod graph;
pub mod matching;
pub mod oracles;
pub mod sachs;

pub use decomp::{
    crossing_edges, is_koenig_egervary, pf_pff_partition, pf_pff_partition_with,
    sd_ke_partition, sd_ke_partition_with, Caps, DecompError, Partition, PartitionLabel,
};
pub use flowers::{
    blossom_is_valid, find_blossoms, find_blossoms_budgeted, find_flower, find_flower_budgeted,
    find_posy, find_posy_budgeted, flower_is_valid, flower_or_posy_vertices,
    flower_or_posy_vertices_budgeted, perfect_flower_is_valid, perfect_flower_vertices,
    perfect_flower_vertices_budgeted, posy_is_valid, Blossom, Flower, PerfectFlower, Posy,
    SearchError, DEFAULT_SEARCH_BUDGET,
};
pub use graph::{
    disjoint_union, emit_edge_list, emit_graph6, enumerate_labeled_graphs, induced_subgraph,
    parse_edge_list, parse_graph6, random_graph, EdgeListError, Graph, Graph6Error, GraphError,
    VertexSet, ENUMERATION_CAP, MAX_VERTICES,
};
pub use matching::{
    enumerate_maximum_matchings, enumerate_maximum_matchings_capped, is_matching,
    maximum_matching, symmetric_difference_components, AltComponent, AltKind, MatchSource,
    Matching, MatchingError, DEFAULT_MATCHINGS_CAP,
};
pub use oracles::{
    alpha_bruteforce, det_bareiss, mu_bruteforce, perm_ryser, IntMatrix, OracleError,
    ORACLE_SIZE_CAP,
};
pub use sachs::{
    component_census, det_sachs, enumerate_max_order_sachs, enumerate_sachs, max_sachs_order,
    perm_sachs, spectral_summary, SachsComponent, SachsError, SachsSubgraph, SpectralSummary,
    SACHS_SIZE_CAP,
};
