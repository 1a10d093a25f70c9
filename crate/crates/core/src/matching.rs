//! Matchings in small graphs: a maximum matching solver that handles odd
//! cycles by contraction, exhaustive enumeration of all maximum matchings,
//! and the alternating structure of the symmetric difference of two
//! matchings.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// Default ceiling for [`enumerate_maximum_matchings`]; graphs this small
/// rarely get anywhere near it, and hitting it is reported as an error rather
/// than silently truncating.
pub const DEFAULT_MATCHINGS_CAP: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatchingError {
    #[error("pair ({u}, {v}) is not an edge of the host graph")]
    NotAnEdge { u: usize, v: usize },
    #[error("vertex {v} appears in more than one pair")]
    Overlap { v: usize },
    #[error("matchings belong to different host graphs")]
    HostMismatch,
    #[error("more than {cap} maximum matchings")]
    TooManyMatchings { cap: usize },
}

/// A matching together with its host graph.  `mate(v) == v` means `v` is
/// exposed; otherwise `mate` is an involution pairing matched endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    host: Graph,
    mate: Vec<usize>,
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    /// Builds a matching from vertex pairs, validating that every pair is an
    /// edge of `g` and that no vertex repeats.
    pub fn new(g: &Graph, pairs: &[(usize, usize)]) -> Result<Matching, MatchingError> {
        let mut mate: Vec<usize> = (0..g.n()).collect();
        let mut norm = Vec::with_capacity(pairs.len());
        for &(u, v) in pairs {
            if !g.has_edge(u, v) {
                return Err(MatchingError::NotAnEdge { u, v });
            }
            if mate[u] != u {
                return Err(MatchingError::Overlap { v: u });
            }
            if mate[v] != v {
                return Err(MatchingError::Overlap { v });
            }
            mate[u] = v;
            mate[v] = u;
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        Ok(Matching { host: g.clone(), mate, pairs: norm })
    }

    pub fn empty(g: &Graph) -> Matching {
        Matching {
            host: g.clone(),
            mate: (0..g.n()).collect(),
            pairs: Vec::new(),
        }
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    /// Matched pairs `(u, v)` with `u < v`, sorted lexicographically.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Partner of `v`, or `v` itself when exposed.
    pub fn mate(&self, v: usize) -> usize {
        self.mate[v]
    }

    pub fn is_saturated(&self, v: usize) -> bool {
        self.mate[v] != v
    }

    pub fn contains_edge(&self, u: usize, v: usize) -> bool {
        u != v && u < self.mate.len() && self.mate[u] == v
    }

    /// Every vertex is saturated (vacuously true on zero vertices).
    pub fn is_perfect(&self) -> bool {
        self.mate.iter().enumerate().all(|(v, &m)| m != v)
    }

    pub fn saturated_set(&self) -> VertexSet {
        self.mate
            .iter()
            .enumerate()
            .filter(|&(v, &m)| m != v)
            .map(|(v, _)| v)
            .collect()
    }
}

/// True when `pairs` forms a matching in `g`.
pub fn is_matching(g: &Graph, pairs: &[(usize, usize)]) -> bool {
    Matching::new(g, pairs).is_ok()
}

const NONE: usize = usize::MAX;

/// Maximum matching by augmenting-path search with odd-cycle contraction.
/// Deterministic: roots are tried in ascending order and neighborhoods are
/// scanned in ascending order, so equal inputs give identical matchings.
pub fn maximum_matching(g: &Graph) -> Matching {
    let n = g.n();
    let mut mate = vec![NONE; n];

    // Greedy warm start; augmentation below only ever grows the matching,
    // which also guarantees the final size is at least the greedy bound.
    for (u, v) in g.edges() {
        if mate[u] == NONE && mate[v] == NONE {
            mate[u] = v;
            mate[v] = u;
        }
    }
    let greedy = mate.iter().filter(|&&m| m != NONE).count() / 2;

    for root in 0..n {
        if mate[root] != NONE {
            continue;
        }
        if let Some(end) = find_augmenting_path(g, &mate, root) {
            // Flip matched/unmatched edges back along the parent chain.
            let mut v = end.0;
            let parent = end.1;
            while v != NONE {
                let pv = parent[v];
                let next = mate[pv];
                mate[v] = pv;
                mate[pv] = v;
                v = next;
            }
        }
    }

    let size = mate.iter().filter(|&&m| m != NONE).count() / 2;
    assert!(size >= greedy, "augmentation lost matched edges");

    let pairs: Vec<(usize, usize)> = (0..n)
        .filter(|&v| mate[v] != NONE && v < mate[v])
        .map(|v| (v, mate[v]))
        .collect();
    Matching::new(g, &pairs).expect("solver produced an invalid matching")
}

/// BFS phase of the contraction algorithm.  Returns the exposed endpoint of
/// an augmenting path from `root` plus the parent table describing it.
fn find_augmenting_path(
    g: &Graph,
    mate: &[usize],
    root: usize,
) -> Option<(usize, Vec<usize>)> {
    let n = g.n();
    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    used[root] = true;
    let mut queue = std::collections::VecDeque::from([root]);

    while let Some(v) = queue.pop_front() {
        for to in g.neighbors(v).iter() {
            if base[v] == base[to] || mate[v] == to {
                continue;
            }
            if to == root || (mate[to] != NONE && parent[mate[to]] != NONE) {
                // Found an odd cycle: contract the blossom around its base.
                let curbase = cycle_base(mate, &parent, &base, v, to);
                let mut in_blossom = vec![false; n];
                mark_blossom_path(mate, &mut parent, &base, &mut in_blossom, v, curbase, to);
                mark_blossom_path(mate, &mut parent, &base, &mut in_blossom, to, curbase, v);
                for i in 0..n {
                    if in_blossom[base[i]] {
                        base[i] = curbase;
                        if !used[i] {
                            used[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[to] == NONE {
                parent[to] = v;
                if mate[to] == NONE {
                    return Some((to, parent));
                }
                used[mate[to]] = true;
                queue.push_back(mate[to]);
            }
        }
    }
    None
}

/// Lowest common ancestor of `a` and `b` in the alternating forest, in terms
/// of blossom bases.
fn cycle_base(mate: &[usize], parent: &[usize], base: &[usize], a: usize, b: usize) -> usize {
    let mut seen = vec![false; mate.len()];
    let mut x = a;
    loop {
        x = base[x];
        seen[x] = true;
        if mate[x] == NONE {
            break;
        }
        x = parent[mate[x]];
    }
    let mut y = b;
    loop {
        y = base[y];
        if seen[y] {
            return y;
        }
        y = parent[mate[y]];
    }
}

fn mark_blossom_path(
    mate: &[usize],
    parent: &mut [usize],
    base: &[usize],
    in_blossom: &mut [bool],
    mut v: usize,
    stop: usize,
    mut child: usize,
) {
    while base[v] != stop {
        in_blossom[base[v]] = true;
        in_blossom[base[mate[v]]] = true;
        parent[v] = child;
        child = mate[v];
        v = parent[mate[v]];
    }
}

/// All maximum matchings, each exactly once, sorted lexicographically by
/// their sorted pair lists.  Errors out beyond [`DEFAULT_MATCHINGS_CAP`].
pub fn enumerate_maximum_matchings(g: &Graph) -> Result<Vec<Matching>, MatchingError> {
    enumerate_maximum_matchings_capped(g, DEFAULT_MATCHINGS_CAP)
}

pub fn enumerate_maximum_matchings_capped(
    g: &Graph,
    cap: usize,
) -> Result<Vec<Matching>, MatchingError> {
    let target = maximum_matching(g).len();
    let edges = g.edges();
    let n = g.n();
    let mut out: Vec<Matching> = Vec::new();
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(target);

    fn rec(
        g: &Graph,
        edges: &[(usize, usize)],
        n: usize,
        target: usize,
        cap: usize,
        from: usize,
        used: u64,
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Matching>,
    ) -> Result<(), MatchingError> {
        if chosen.len() == target {
            if out.len() == cap {
                return Err(MatchingError::TooManyMatchings { cap });
            }
            out.push(Matching::new(g, chosen).expect("enumerated pairs form a matching"));
            return Ok(());
        }
        let free = n - used.count_ones() as usize;
        if chosen.len() + free / 2 < target {
            return Ok(());
        }
        for j in from..edges.len() {
            let (u, v) = edges[j];
            let bits = 1u64 << u | 1u64 << v;
            if used & bits != 0 {
                continue;
            }
            chosen.push((u, v));
            rec(g, edges, n, target, cap, j + 1, used | bits, chosen, out)?;
            chosen.pop();
        }
        Ok(())
    }

    rec(g, &edges, n, target, cap, 0, 0, &mut chosen, &mut out)?;
    Ok(out)
}

/// Which of the two input matchings contributed an edge of the symmetric
/// difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchSource {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AltKind {
    Path,
    Cycle,
}

/// One connected component of the symmetric difference of two matchings.
/// For a path, `vertices` lists its vertices end to end and `sources[i]`
/// labels the edge `vertices[i] - vertices[i+1]`.  For a cycle, `vertices`
/// lists the cycle without repeating the start and `sources[i]` labels the
/// edge to `vertices[(i+1) % len]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltComponent {
    pub kind: AltKind,
    pub vertices: Vec<usize>,
    pub sources: Vec<MatchSource>,
}

/// Decomposes the symmetric difference of two matchings of the same host
/// into its path and cycle components, deterministically ordered: paths
/// first (by smaller endpoint), then cycles (by smallest vertex).
pub fn symmetric_difference_components(
    m1: &Matching,
    m2: &Matching,
) -> Result<Vec<AltComponent>, MatchingError> {
    if m1.host() != m2.host() {
        return Err(MatchingError::HostMismatch);
    }
    let n = m1.host().n();

    // Adjacency of the symmetric difference; each vertex meets at most one
    // edge from each matching, so degrees are at most two.
    let mut dadj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in m1.pairs() {
        if !m2.contains_edge(u, v) {
            dadj[u].push(v);
            dadj[v].push(u);
        }
    }
    for &(u, v) in m2.pairs() {
        if !m1.contains_edge(u, v) {
            dadj[u].push(v);
            dadj[v].push(u);
        }
    }
    for nb in &mut dadj {
        nb.sort_unstable();
    }

    let source = |u: usize, v: usize| -> MatchSource {
        if m1.contains_edge(u, v) {
            MatchSource::First
        } else {
            debug_assert!(m2.contains_edge(u, v));
            MatchSource::Second
        }
    };

    let mut visited = vec![false; n];
    let mut components = Vec::new();

    // Paths start at degree-one vertices, scanned in ascending order.
    for start in 0..n {
        if visited[start] || dadj[start].len() != 1 {
            continue;
        }
        let mut vertices = vec![start];
        let mut sources = Vec::new();
        visited[start] = true;
        let mut prev = start;
        let mut cur = dadj[start][0];
        loop {
            sources.push(source(prev, cur));
            vertices.push(cur);
            visited[cur] = true;
            match dadj[cur].iter().find(|&&w| w != prev) {
                Some(&next) => {
                    prev = cur;
                    cur = next;
                }
                None => break,
            }
        }
        debug_assert!(sources.len() % 2 == 0, "alternating path has odd length");
        components.push(AltComponent { kind: AltKind::Path, vertices, sources });
    }

    // Remaining difference edges lie on cycles; start each at its smallest
    // vertex and walk toward the smaller neighbor.
    for start in 0..n {
        if visited[start] || dadj[start].is_empty() {
            continue;
        }
        debug_assert_eq!(dadj[start].len(), 2);
        let mut vertices = vec![start];
        let mut sources = Vec::new();
        visited[start] = true;
        let mut prev = start;
        let mut cur = dadj[start][0];
        while cur != start {
            sources.push(source(prev, cur));
            vertices.push(cur);
            visited[cur] = true;
            let &next = dadj[cur].iter().find(|&&w| w != prev).unwrap();
            prev = cur;
            cur = next;
        }
        sources.push(source(prev, start));
        debug_assert!(vertices.len() % 2 == 0, "alternating cycle has odd length");
        components.push(AltComponent { kind: AltKind::Cycle, vertices, sources });
    }

    debug_assert!(components.iter().all(|c| {
        c.sources
            .windows(2)
            .all(|w| w[0] != w[1])
    }), "difference edges must alternate between the two matchings");

    Ok(components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::oracles::mu_bruteforce;

    fn paw() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    #[test]
    fn matching_validation() {
        let g = paw();
        assert!(is_matching(&g, &[(0, 1), (2, 3)]));
        assert!(is_matching(&g, &[]));
        assert!(!is_matching(&g, &[(0, 3)]));
        assert!(!is_matching(&g, &[(0, 1), (1, 2)]));
        assert_eq!(
            Matching::new(&g, &[(0, 1), (1, 2)]),
            Err(MatchingError::Overlap { v: 1 })
        );
    }

    #[test]
    fn mate_is_involution() {
        let g = paw();
        let m = Matching::new(&g, &[(2, 3)]).unwrap();
        assert_eq!(m.mate(2), 3);
        assert_eq!(m.mate(3), 2);
        assert_eq!(m.mate(0), 0);
        assert!(m.is_saturated(3));
        assert!(!m.is_saturated(1));
        assert_eq!(m.saturated_set().to_vec(), vec![2, 3]);
    }

    #[test]
    fn maximum_matching_sizes() {
        // Odd cycle forces the solver through a blossom contraction.
        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(maximum_matching(&k3).len(), 1);
        assert_eq!(maximum_matching(&paw()).len(), 2);
        assert_eq!(maximum_matching(&c4()).len(), 2);
        assert_eq!(maximum_matching(&Graph::empty(5).unwrap()).len(), 0);
        assert_eq!(maximum_matching(&Graph::empty(0).unwrap()).len(), 0);

        // Two triangles joined by a bridge: the perfect matching needs the
        // bridge, which greedy scans miss without augmentation.
        let dumbbell = Graph::from_edges(
            6,
            &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)],
        )
        .unwrap();
        assert_eq!(maximum_matching(&dumbbell).len(), 3);
        assert!(maximum_matching(&dumbbell).is_perfect());
    }

    #[test]
    fn maximum_matching_agrees_with_bruteforce_exhaustively() {
        for n in 0..=5 {
            for g in crate::graph::enumerate_labeled_graphs(n).unwrap() {
                assert_eq!(
                    maximum_matching(&g).len(),
                    mu_bruteforce(&g).unwrap(),
                    "graph {:?}",
                    g
                );
            }
        }
    }

    #[test]
    fn enumerate_small_graphs() {
        let ms = enumerate_maximum_matchings(&c4()).unwrap();
        let pairs: Vec<_> = ms.iter().map(|m| m.pairs().to_vec()).collect();
        assert_eq!(pairs, vec![vec![(0, 1), (2, 3)], vec![(0, 3), (1, 2)]]);

        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(enumerate_maximum_matchings(&k3).unwrap().len(), 3);

        // A single maximum matching for the paw.
        let ms = enumerate_maximum_matchings(&paw()).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].pairs(), &[(0, 1), (2, 3)]);

        // The empty graph has exactly one (empty) maximum matching.
        let ms = enumerate_maximum_matchings(&Graph::empty(0).unwrap()).unwrap();
        assert_eq!(ms.len(), 1);
        assert!(ms[0].is_empty());
    }

    #[test]
    fn enumeration_cap_is_an_error() {
        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(
            enumerate_maximum_matchings_capped(&k3, 2),
            Err(MatchingError::TooManyMatchings { cap: 2 })
        );
        assert!(enumerate_maximum_matchings_capped(&k3, 3).is_ok());
    }

    #[test]
    fn is_perfect_examples() {
        let g = paw();
        assert!(Matching::new(&g, &[(0, 1), (2, 3)]).unwrap().is_perfect());
        assert!(!Matching::new(&g, &[(0, 1)]).unwrap().is_perfect());
        assert!(Matching::empty(&Graph::empty(0).unwrap()).is_perfect());
    }

    #[test]
    fn symmetric_difference_on_c4_is_one_cycle() {
        let g = c4();
        let ms = enumerate_maximum_matchings(&g).unwrap();
        let comps = symmetric_difference_components(&ms[0], &ms[1]).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].kind, AltKind::Cycle);
        assert_eq!(comps[0].vertices.len(), 4);
        assert_eq!(comps[0].vertices[0], 0);
    }

    #[test]
    fn symmetric_difference_path_endpoints() {
        // Path on five vertices; two maximum matchings differing in one edge.
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let m1 = Matching::new(&g, &[(0, 1), (2, 3)]).unwrap();
        let m2 = Matching::new(&g, &[(0, 1), (3, 4)]).unwrap();
        let comps = symmetric_difference_components(&m1, &m2).unwrap();
        assert_eq!(comps.len(), 1);
        let c = &comps[0];
        assert_eq!(c.kind, AltKind::Path);
        assert_eq!(c.vertices, vec![2, 3, 4]);
        assert_eq!(c.sources, vec![MatchSource::First, MatchSource::Second]);
        // Opposite saturation at the two ends.
        assert!(m1.is_saturated(2) && !m2.is_saturated(2));
        assert!(m2.is_saturated(4) && !m1.is_saturated(4));
    }

    #[test]
    fn symmetric_difference_identical_matchings_is_empty() {
        let g = c4();
        let ms = enumerate_maximum_matchings(&g).unwrap();
        assert!(symmetric_difference_components(&ms[0], &ms[0])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn symmetric_difference_rejects_different_hosts() {
        let a = Matching::empty(&c4());
        let b = Matching::empty(&paw());
        assert_eq!(
            symmetric_difference_components(&a, &b),
            Err(MatchingError::HostMismatch)
        );
    }
}
