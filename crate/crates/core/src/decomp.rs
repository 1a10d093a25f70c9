//! Vertex partitions driven by matching structure.  One partition separates
//! the vertices reachable by flowers and posies from the rest; the other
//! separates vertices lying in perfect flowers from their complement.  Both
//! unions range over every maximum matching of the host.

use thiserror::Error;

use crate::flowers::{
    find_flower, find_posy, flower_or_posy_vertices_budgeted,
    perfect_flower_vertices_budgeted, SearchError, DEFAULT_SEARCH_BUDGET,
};
use crate::graph::{Graph, VertexSet};
use crate::matching::{
    enumerate_maximum_matchings_capped, maximum_matching, MatchingError, DEFAULT_MATCHINGS_CAP,
};
use crate::oracles::{alpha_bruteforce, OracleError};

/// Below this order, recognition results are cross-checked against the
/// structural criterion (no flower and no posy for a maximum matching).
pub const CROSS_CHECK_CAP: usize = 7;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecompError {
    #[error("blocks do not partition the host vertex set")]
    InvalidPartition,
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionLabel {
    SdKe,
    PfPff,
}

/// An ordered two-block split of the host's vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    host: Graph,
    block_a: VertexSet,
    block_b: VertexSet,
    label: PartitionLabel,
}

impl Partition {
    pub fn new(
        host: &Graph,
        block_a: VertexSet,
        block_b: VertexSet,
        label: PartitionLabel,
    ) -> Result<Partition, DecompError> {
        if !block_a.is_disjoint_from(block_b) || block_a.union(block_b) != host.vertices() {
            return Err(DecompError::InvalidPartition);
        }
        Ok(Partition { host: host.clone(), block_a, block_b, label })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn block_a(&self) -> VertexSet {
        self.block_a
    }

    pub fn block_b(&self) -> VertexSet {
        self.block_b
    }

    pub fn label(&self) -> PartitionLabel {
        self.label
    }
}

/// Enumeration and search limits for the partition computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_matchings: usize,
    pub search_budget: u64,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            max_matchings: DEFAULT_MATCHINGS_CAP,
            search_budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

/// True when the independence and matching numbers add up to the order of
/// the graph.  The independence number comes from the brute-force oracle so
/// recognition does not assume anything this crate is meant to test; on
/// small graphs the result is additionally cross-checked against the
/// structural criterion.
pub fn is_koenig_egervary(g: &Graph) -> Result<bool, DecompError> {
    let alpha = alpha_bruteforce(g)?;
    let mu = maximum_matching(g).len();
    let ke = alpha + mu == g.n();
    if g.n() <= CROSS_CHECK_CAP {
        let m = maximum_matching(g);
        if let (Ok(flower), Ok(posy)) = (find_flower(&m), find_posy(&m)) {
            assert_eq!(
                ke,
                flower.is_none() && posy.is_none(),
                "counting and structural recognition disagree on {:?}",
                g
            );
        }
    }
    Ok(ke)
}

/// Splits the vertices into the union of flower and posy vertices over all
/// maximum matchings (block A) and everything else (block B).
pub fn sd_ke_partition(g: &Graph) -> Result<Partition, DecompError> {
    sd_ke_partition_with(g, &Caps::default())
}

pub fn sd_ke_partition_with(g: &Graph, caps: &Caps) -> Result<Partition, DecompError> {
    let full = g.vertices();
    let mut covered = VertexSet::EMPTY;
    if !g.is_bipartite() {
        // Bipartite hosts have no odd cycles, hence no blossoms to attach
        // anything to; everyone else gets the full union.
        for m in enumerate_maximum_matchings_capped(g, caps.max_matchings)? {
            covered = covered.union(flower_or_posy_vertices_budgeted(&m, caps.search_budget)?);
            if covered == full {
                break;
            }
        }
    }
    Partition::new(g, covered, full.difference(covered), PartitionLabel::SdKe)
}

/// Splits the vertices into the union of perfect-flower vertices over all
/// maximum matchings (block A) and everything else (block B).
pub fn pf_pff_partition(g: &Graph) -> Result<Partition, DecompError> {
    pf_pff_partition_with(g, &Caps::default())
}

pub fn pf_pff_partition_with(g: &Graph, caps: &Caps) -> Result<Partition, DecompError> {
    let full = g.vertices();
    let mut covered = VertexSet::EMPTY;
    if !g.is_bipartite() {
        for m in enumerate_maximum_matchings_capped(g, caps.max_matchings)? {
            // Perfect-flower vertices are always saturated, so a matching
            // whose saturated set is already covered cannot add anything.
            if m.saturated_set().is_subset_of(covered) {
                continue;
            }
            covered = covered.union(perfect_flower_vertices_budgeted(&m, caps.search_budget)?);
            if covered == full {
                break;
            }
        }
    }
    Partition::new(g, covered, full.difference(covered), PartitionLabel::PfPff)
}

/// Host edges with one endpoint in each block, in lexicographic order.
pub fn crossing_edges(p: &Partition) -> Vec<(usize, usize)> {
    p.host()
        .edges()
        .into_iter()
        .filter(|&(u, v)| {
            (p.block_a.contains(u) && p.block_b.contains(v))
                || (p.block_b.contains(u) && p.block_a.contains(v))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, enumerate_labeled_graphs, induced_subgraph, Graph};
    use crate::oracles::{det_bareiss, IntMatrix};
    use num_bigint::BigInt;

    fn paw() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    fn k3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    fn bowtie() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn dumbbell() -> Graph {
        Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]).unwrap()
    }

    fn domino() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (0, 3), (3, 4), (4, 5), (2, 5)]).unwrap()
    }

    fn k2() -> Graph {
        Graph::from_edges(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn recognition_fixtures() {
        assert!(is_koenig_egervary(&paw()).unwrap());
        assert!(is_koenig_egervary(&c4()).unwrap());
        assert!(is_koenig_egervary(&domino()).unwrap());
        assert!(!is_koenig_egervary(&k3()).unwrap());
        assert!(!is_koenig_egervary(&bowtie()).unwrap());
        assert!(!is_koenig_egervary(&dumbbell()).unwrap());
        assert!(is_koenig_egervary(&Graph::empty(0).unwrap()).unwrap());
        assert!(is_koenig_egervary(&Graph::empty(1).unwrap()).unwrap());
    }

    #[test]
    fn sd_partition_fixtures() {
        let p = sd_ke_partition(&c4()).unwrap();
        assert!(p.block_a().is_empty());
        assert_eq!(p.block_b(), c4().vertices());
        assert_eq!(p.label(), PartitionLabel::SdKe);

        let p = sd_ke_partition(&bowtie()).unwrap();
        assert_eq!(p.block_a(), bowtie().vertices());
        assert!(p.block_b().is_empty());

        let g = disjoint_union(&bowtie(), &k2()).unwrap();
        let p = sd_ke_partition(&g).unwrap();
        assert_eq!(p.block_a().to_vec(), vec![0, 1, 2, 3, 4]);
        assert_eq!(p.block_b().to_vec(), vec![5, 6]);
    }

    #[test]
    fn pf_partition_fixtures() {
        let p = pf_pff_partition(&paw()).unwrap();
        assert_eq!(p.block_a(), paw().vertices());
        assert!(p.block_b().is_empty());
        assert_eq!(p.label(), PartitionLabel::PfPff);

        let p = pf_pff_partition(&c4()).unwrap();
        assert!(p.block_a().is_empty());

        // Bipartite shortcut and the real enumeration must agree.
        let p = pf_pff_partition(&domino()).unwrap();
        assert!(p.block_a().is_empty());
        assert_eq!(p.block_b(), domino().vertices());

        let p = pf_pff_partition(&dumbbell()).unwrap();
        assert_eq!(p.block_a(), dumbbell().vertices());

        let g = disjoint_union(&paw(), &k2()).unwrap();
        let p = pf_pff_partition(&g).unwrap();
        assert_eq!(p.block_a().to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(p.block_b().to_vec(), vec![4, 5]);
    }

    #[test]
    fn crossing_edge_fixtures() {
        let g = disjoint_union(&paw(), &k2()).unwrap();
        let p = pf_pff_partition(&g).unwrap();
        assert!(crossing_edges(&p).is_empty());

        let p = sd_ke_partition(&c4()).unwrap();
        assert!(crossing_edges(&p).is_empty());

        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let blocks = Partition::new(
            &p3,
            VertexSet::singleton(0),
            VertexSet::singleton(1).union(VertexSet::singleton(2)),
            PartitionLabel::SdKe,
        )
        .unwrap();
        assert_eq!(crossing_edges(&blocks), vec![(0, 1)]);
    }

    #[test]
    fn partition_construction_validates() {
        let g = c4();
        let all = g.vertices();
        assert_eq!(
            Partition::new(&g, all, all, PartitionLabel::SdKe),
            Err(DecompError::InvalidPartition)
        );
        assert_eq!(
            Partition::new(&g, VertexSet::EMPTY, VertexSet::singleton(0), PartitionLabel::SdKe),
            Err(DecompError::InvalidPartition)
        );
        assert!(Partition::new(&g, VertexSet::EMPTY, all, PartitionLabel::SdKe).is_ok());
    }

    #[test]
    fn caps_surface_as_errors() {
        let caps = Caps { max_matchings: 2, ..Caps::default() };
        assert_eq!(
            sd_ke_partition_with(&k3(), &caps),
            Err(DecompError::Matching(MatchingError::TooManyMatchings { cap: 2 }))
        );
        let caps = Caps { search_budget: 0, ..Caps::default() };
        assert_eq!(
            pf_pff_partition_with(&bowtie(), &caps),
            Err(DecompError::Search(SearchError::BudgetExhausted { budget: 0 }))
        );
        // The bipartite shortcut never starts a search.
        assert!(pf_pff_partition_with(&c4(), &caps).is_ok());
    }

    #[test]
    fn recognition_matches_empty_structural_part_exhaustively() {
        for n in 0..=4 {
            for g in enumerate_labeled_graphs(n).unwrap() {
                let ke = is_koenig_egervary(&g).unwrap();
                let sd = sd_ke_partition(&g).unwrap();
                assert_eq!(ke, sd.block_a().is_empty(), "{:?}", g);
            }
        }
    }

    #[test]
    fn block_determinants_multiply_on_the_pendant_pair() {
        let g = disjoint_union(&paw(), &k2()).unwrap();
        let p = pf_pff_partition(&g).unwrap();
        let (ga, _) = induced_subgraph(&g, p.block_a()).unwrap();
        let (gb, _) = induced_subgraph(&g, p.block_b()).unwrap();
        let whole = det_bareiss(&IntMatrix::adjacency(&g));
        let da = det_bareiss(&IntMatrix::adjacency(&ga));
        let db = det_bareiss(&IntMatrix::adjacency(&gb));
        assert_eq!(whole, BigInt::from(-1));
        assert_eq!(da, BigInt::from(1));
        assert_eq!(db, BigInt::from(-1));
        assert_eq!(whole, da * db);
    }

    #[test]
    fn matching_numbers_add_across_blocks() {
        for g in [domino(), disjoint_union(&paw(), &k2()).unwrap()] {
            let p = pf_pff_partition(&g).unwrap();
            let (ga, _) = induced_subgraph(&g, p.block_a()).unwrap();
            let (gb, _) = induced_subgraph(&g, p.block_b()).unwrap();
            let mu = maximum_matching(&g).len();
            let mua = maximum_matching(&ga).len();
            let mub = maximum_matching(&gb).len();
            assert_eq!(mu, mua + mub, "{:?}", g);
        }
    }
}
