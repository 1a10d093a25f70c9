//! Sachs subgraphs: spanning subgraphs whose components are single edges and
//! cycles.  Signed and unsigned component-weighted sums over them recover the
//! determinant and permanent of the adjacency matrix, and the largest vertex
//! set carrying such a subgraph gives a rank-style parameter checked against
//! the matching side of the crate.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// Largest `n` accepted by the subset-exhaustive searches in this module.
pub const SACHS_SIZE_CAP: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SachsError {
    #[error("graph on {n} vertices exceeds the subset search cap of {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
    #[error("malformed subgraph: {reason}")]
    MalformedSubgraph { reason: &'static str },
}

/// One component of a Sachs subgraph: a single edge `(u, v)` with `u < v`,
/// or a cycle listed from its smallest vertex with the smaller neighbor
/// second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SachsComponent {
    Edge(usize, usize),
    Cycle(Vec<usize>),
}

impl SachsComponent {
    pub fn vertex_count(&self) -> usize {
        match self {
            SachsComponent::Edge(_, _) => 2,
            SachsComponent::Cycle(c) => c.len(),
        }
    }

    fn mask(&self) -> u64 {
        match self {
            SachsComponent::Edge(u, v) => 1u64 << u | 1u64 << v,
            SachsComponent::Cycle(c) => c.iter().fold(0, |m, &v| m | 1u64 << v),
        }
    }
}

/// A vertex-disjoint collection of edge and cycle components of a host
/// graph, with its support and component counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SachsSubgraph {
    host: Graph,
    support: VertexSet,
    components: Vec<SachsComponent>,
    even_components: usize,
    cycles: usize,
}

impl SachsSubgraph {
    /// Validates that the components are vertex-disjoint, lie inside the
    /// host, and that every cycle is a genuine cycle of length at least
    /// three.
    pub fn new(
        host: &Graph,
        components: Vec<SachsComponent>,
    ) -> Result<SachsSubgraph, SachsError> {
        let mut support = 0u64;
        for c in &components {
            match c {
                SachsComponent::Edge(u, v) => {
                    if !host.has_edge(*u, *v) {
                        return Err(SachsError::MalformedSubgraph {
                            reason: "component edge is not a host edge",
                        });
                    }
                }
                SachsComponent::Cycle(cyc) => {
                    if cyc.len() < 3 {
                        return Err(SachsError::MalformedSubgraph {
                            reason: "cycle shorter than three vertices",
                        });
                    }
                    if c.mask().count_ones() as usize != cyc.len() {
                        return Err(SachsError::MalformedSubgraph {
                            reason: "cycle repeats a vertex",
                        });
                    }
                    for i in 0..cyc.len() {
                        if !host.has_edge(cyc[i], cyc[(i + 1) % cyc.len()]) {
                            return Err(SachsError::MalformedSubgraph {
                                reason: "cycle edge is not a host edge",
                            });
                        }
                    }
                }
            }
            let mask = c.mask();
            if support & mask != 0 {
                return Err(SachsError::MalformedSubgraph {
                    reason: "components share a vertex",
                });
            }
            support |= mask;
        }
        let (even_components, cycles) = census(&components);
        Ok(SachsSubgraph {
            host: host.clone(),
            support: VertexSet(support),
            components,
            even_components,
            cycles,
        })
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn support(&self) -> VertexSet {
        self.support
    }

    pub fn components(&self) -> &[SachsComponent] {
        &self.components
    }

    /// Number of vertices covered.
    pub fn order(&self) -> usize {
        self.support.len()
    }

    /// Components on an even number of vertices, single edges included.
    pub fn even_component_count(&self) -> usize {
        self.even_components
    }

    /// Cycle components of any length.
    pub fn cycle_count(&self) -> usize {
        self.cycles
    }
}

fn census(components: &[SachsComponent]) -> (usize, usize) {
    let mut even = 0;
    let mut cycles = 0;
    for c in components {
        if c.vertex_count() % 2 == 0 {
            even += 1;
        }
        if matches!(c, SachsComponent::Cycle(_)) {
            cycles += 1;
        }
    }
    (even, cycles)
}

/// Counts `(even_components, cycles)` of a subgraph, the two quantities that
/// weight the determinant and permanent expansions.
pub fn component_census(s: &SachsSubgraph) -> (usize, usize) {
    (s.even_components, s.cycles)
}

/// Visits every subgraph with all degrees one or two whose support is
/// exactly `allowed`, each once, in a canonical order.  The visitor returns
/// `false` to stop early; the function returns `false` if it did.
///
/// Recursion is on the lowest uncovered vertex: it is either paired with a
/// higher uncovered neighbor or placed on a cycle through uncovered
/// vertices, closed only when the second vertex is smaller than the last so
/// each cycle appears in one orientation.
fn visit_spanning<F: FnMut(&[SachsComponent]) -> bool>(
    g: &Graph,
    allowed: u64,
    f: &mut F,
) -> bool {
    let mut comps: Vec<SachsComponent> = Vec::new();
    rec(g, allowed, 0, &mut comps, f)
}

fn rec<F: FnMut(&[SachsComponent]) -> bool>(
    g: &Graph,
    allowed: u64,
    covered: u64,
    comps: &mut Vec<SachsComponent>,
    f: &mut F,
) -> bool {
    let free = allowed & !covered;
    if free == 0 {
        return f(comps);
    }
    let v = free.trailing_zeros() as usize;

    let mut partners = g.neighbors(v).0 & free;
    while partners != 0 {
        let u = partners.trailing_zeros() as usize;
        partners &= partners - 1;
        comps.push(SachsComponent::Edge(v, u));
        let ok = rec(g, allowed, covered | 1 << v | 1 << u, comps, f);
        comps.pop();
        if !ok {
            return false;
        }
    }

    let mut path = vec![v];
    grow_cycle(g, allowed, covered, &mut path, 1 << v, comps, f)
}

fn grow_cycle<F: FnMut(&[SachsComponent]) -> bool>(
    g: &Graph,
    allowed: u64,
    covered: u64,
    path: &mut Vec<usize>,
    path_mask: u64,
    comps: &mut Vec<SachsComponent>,
    f: &mut F,
) -> bool {
    let last = *path.last().unwrap();
    if path.len() >= 3 && g.has_edge(last, path[0]) && path[1] < last {
        comps.push(SachsComponent::Cycle(path.clone()));
        let ok = rec(g, allowed, covered | path_mask, comps, f);
        comps.pop();
        if !ok {
            return false;
        }
    }
    let mut next = g.neighbors(last).0 & allowed & !covered & !path_mask;
    while next != 0 {
        let w = next.trailing_zeros() as usize;
        next &= next - 1;
        path.push(w);
        let ok = grow_cycle(g, allowed, covered, path, path_mask | 1 << w, comps, f);
        path.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// All Sachs subgraphs of `g`: subgraphs of maximum degree at most two whose
/// components cover every vertex.  The empty graph has exactly one (empty);
/// any isolated vertex means there are none.
pub fn enumerate_sachs(g: &Graph) -> Vec<SachsSubgraph> {
    let mut out = Vec::new();
    visit_spanning(g, g.vertices().0, &mut |comps| {
        out.push(
            SachsSubgraph::new(g, comps.to_vec()).expect("enumerated subgraph is well formed"),
        );
        true
    });
    out
}

/// Determinant of the adjacency matrix as a signed sum over Sachs
/// subgraphs: each contributes `(-1)^k 2^m` for `k` even components and `m`
/// cycles.
pub fn det_sachs(g: &Graph) -> BigInt {
    let (det, _, _) = sachs_sums(g);
    det
}

/// Permanent of the adjacency matrix as the unsigned sum, `2^m` per
/// subgraph.
pub fn perm_sachs(g: &Graph) -> BigInt {
    let (_, perm, _) = sachs_sums(g);
    perm
}

fn sachs_sums(g: &Graph) -> (BigInt, BigInt, u64) {
    let mut det = BigInt::zero();
    let mut perm = BigInt::zero();
    let mut count = 0u64;
    visit_spanning(g, g.vertices().0, &mut |comps| {
        let (even, cycles) = census(comps);
        let weight = BigInt::one() << cycles;
        if even % 2 == 0 {
            det += &weight;
        } else {
            det -= &weight;
        }
        perm += weight;
        count += 1;
        true
    });
    (det, perm, count)
}

/// Subsets of `{0..n}` of the given size, ascending as bit masks.
fn subsets_of_size(n: usize, size: usize) -> Vec<u64> {
    if size == 0 {
        return vec![0];
    }
    if size > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let limit = 1u64 << n;
    let mut x = (1u64 << size) - 1;
    while x < limit {
        out.push(x);
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

fn has_spanning(g: &Graph, allowed: u64) -> bool {
    !visit_spanning(g, allowed, &mut |_| false)
}

/// Largest number of vertices covered by any subgraph of `g` with all
/// degrees one or two.  Exhausts vertex subsets, hence the size cap.
pub fn max_sachs_order(g: &Graph) -> Result<usize, SachsError> {
    let n = g.n();
    if n > SACHS_SIZE_CAP {
        return Err(SachsError::SizeCapExceeded { n, cap: SACHS_SIZE_CAP });
    }
    for size in (0..=n).rev() {
        if subsets_of_size(n, size)
            .into_iter()
            .any(|s| has_spanning(g, s))
        {
            return Ok(size);
        }
    }
    unreachable!("the empty subgraph always spans the empty set")
}

/// All maximum-order subgraphs with degrees one or two, in host labels,
/// ordered by support and then canonically within a support.
pub fn enumerate_max_order_sachs(g: &Graph) -> Result<Vec<SachsSubgraph>, SachsError> {
    let best = max_sachs_order(g)?;
    let mut out = Vec::new();
    for s in subsets_of_size(g.n(), best) {
        visit_spanning(g, s, &mut |comps| {
            out.push(
                SachsSubgraph::new(g, comps.to_vec())
                    .expect("enumerated subgraph is well formed"),
            );
            true
        });
    }
    Ok(out)
}

/// Determinant, permanent, Sachs subgraph count and maximum order in one
/// package, all computed from the subgraph expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralSummary {
    pub det: BigInt,
    pub perm: BigInt,
    pub sachs_count: u64,
    pub max_sachs_order: usize,
}

pub fn spectral_summary(g: &Graph) -> Result<SpectralSummary, SachsError> {
    let max_order = max_sachs_order(g)?;
    let (det, perm, sachs_count) = sachs_sums(g);
    Ok(SpectralSummary { det, perm, sachs_count, max_sachs_order: max_order })
}
