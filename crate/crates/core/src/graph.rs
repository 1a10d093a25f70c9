//! Small labeled simple graphs stored as bitset adjacency rows.
//!
//! Vertices are `0..n` with `n <= MAX_VERTICES`, so a neighborhood fits in a
//! single machine word and set operations are plain bit arithmetic.  The
//! module also provides the I/O formats (edge lists, graph6) and the two
//! generators (exhaustive labeled enumeration, seeded random graphs) that the
//! rest of the crate sweeps over.

use std::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

/// Hard cap on vertex count.  Rows are single `u64` words, so this could be
/// raised to 64 by editing one constant, but everything here is meant for
/// desk-scale instances and 32 keeps accidental blowups loud.
pub const MAX_VERTICES: usize = 32;

/// Largest `n` accepted by [`enumerate_labeled_graphs`]; there are
/// 2^(n choose 2) labeled graphs, which stops being enumerable shortly after
/// this point.
pub const ENUMERATION_CAP: usize = 7;

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("graph has {n} vertices, cap is {MAX_VERTICES}")]
    TooManyVertices { n: usize },
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {v} not allowed")]
    SelfLoop { v: usize },
    #[error("edge probability {p} outside [0, 1]")]
    BadProbability { p: f64 },
    #[error("exhaustive enumeration for n={n} exceeds cap {ENUMERATION_CAP}")]
    EnumerationCapExceeded { n: usize },
}

/// Errors from [`parse_edge_list`], tagged with the 1-based source line.
#[derive(Debug, Error, PartialEq)]
pub enum EdgeListError {
    #[error("empty input, expected a vertex count on the first line")]
    Empty,
    #[error("line {line}: malformed vertex count")]
    BadCount { line: usize },
    #[error("line {line}: expected two vertex indices")]
    Malformed { line: usize },
    #[error("line {line}: self-loop {v} {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: vertex {v} out of range (n = {n})")]
    OutOfRange { line: usize, v: usize, n: usize },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
}

#[derive(Debug, Error, PartialEq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#x} at position {pos} outside graph6 range 63..=126")]
    InvalidByte { pos: usize, byte: u8 },
    #[error("multi-byte vertex counts (n > 62) are not supported")]
    LongForm,
    #[error("graph6 payload truncated: need {need} bytes, found {found}")]
    Truncated { need: usize, found: usize },
    #[error("trailing bytes after graph6 payload")]
    TrailingData,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Subset of the vertices of some host graph, as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The full vertex set `{0, .., n-1}`.
    pub fn full(n: usize) -> VertexSet {
        debug_assert!(n <= 64);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> VertexSet {
        VertexSet(1u64 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < 64);
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint_from(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Simple undirected graph on vertices `0..n`, `n <= MAX_VERTICES`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices { n });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Graph from an edge list; duplicate edges are idempotent, self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { v: u, n: self.n });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        if u == v {
            return Err(GraphError::SelfLoop { v });
        }
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Neighborhood of `v` as a bitmask.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut higher = self.adj[u] >> (u + 1) << (u + 1);
            while higher != 0 {
                let v = higher.trailing_zeros() as usize;
                higher &= higher - 1;
                out.push((u, v));
            }
        }
        out
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// True if the graph has no odd cycle (two-coloring by BFS).
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![2u8; self.n];
        for start in 0..self.n {
            if color[start] != 2 {
                continue;
            }
            color[start] = 0;
            let mut queue = vec![start];
            while let Some(u) = queue.pop() {
                for v in self.neighbors(u).iter() {
                    if color[v] == 2 {
                        color[v] = 1 - color[u];
                        queue.push(v);
                    } else if color[v] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Parses the plain text edge-list format: first line is the vertex count,
/// every following nonempty line is `u v`.
pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (line, head) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty())
        .ok_or(EdgeListError::Empty)?;
    let n: usize = head.parse().map_err(|_| EdgeListError::BadCount { line })?;
    let mut g = Graph::empty(n).map_err(|source| EdgeListError::Graph { line, source })?;
    for (line, l) in lines {
        if l.is_empty() {
            continue;
        }
        let mut it = l.split_whitespace();
        let (a, b) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => return Err(EdgeListError::Malformed { line }),
        };
        let u: usize = a.parse().map_err(|_| EdgeListError::Malformed { line })?;
        let v: usize = b.parse().map_err(|_| EdgeListError::Malformed { line })?;
        g.add_edge(u, v).map_err(|e| match e {
            GraphError::SelfLoop { v } => EdgeListError::SelfLoop { line, v },
            GraphError::VertexOutOfRange { v, n } => EdgeListError::OutOfRange { line, v, n },
            source => EdgeListError::Graph { line, source },
        })?;
    }
    Ok(g)
}

/// Renders a graph in the edge-list format accepted by [`parse_edge_list`].
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

// graph6 packs the upper triangle of the adjacency matrix in column order,
// i.e. (0,1), (0,2), (1,2), (0,3), ..., six bits per byte, each byte offset
// by 63.  Only the single-byte size header (n <= 62) is supported.

/// Parses a graph6 string (surrounding whitespace tolerated).
pub fn parse_graph6(s: &str) -> Result<Graph, Graph6Error> {
    let bytes = s.trim().as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if bytes[0] == 126 {
        return Err(Graph6Error::LongForm);
    }
    if !(63..=125).contains(&bytes[0]) {
        return Err(Graph6Error::InvalidByte { pos: 0, byte: bytes[0] });
    }
    let n = (bytes[0] - 63) as usize;
    let nbits = n * (n.saturating_sub(1)) / 2;
    let need = nbits.div_ceil(6);
    let payload = &bytes[1..];
    if payload.len() < need {
        return Err(Graph6Error::Truncated { need, found: payload.len() });
    }
    if payload.len() > need {
        return Err(Graph6Error::TrailingData);
    }
    for (i, &b) in payload.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::InvalidByte { pos: i + 1, byte: b });
        }
    }
    let mut g = Graph::empty(n)?;
    let mut t = 0usize;
    for j in 1..n {
        for i in 0..j {
            let bit = (payload[t / 6] - 63) >> (5 - t % 6) & 1;
            if bit == 1 {
                g.add_edge(i, j)?;
            }
            t += 1;
        }
    }
    Ok(g)
}

/// Renders a graph as a graph6 string.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    debug_assert!(n <= 62);
    let mut out = vec![63 + n as u8];
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(out).unwrap()
}

/// Induced subgraph on `set`, relabeled to `0..set.len()` in ascending order
/// of the original labels.  The returned map sends new labels to old ones.
pub fn induced_subgraph(g: &Graph, set: VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
    if let Some(v) = set.iter().find(|&v| v >= g.n()) {
        return Err(GraphError::VertexOutOfRange { v, n: g.n() });
    }
    let map = set.to_vec();
    let mut h = Graph::empty(map.len())?;
    for (i, &u) in map.iter().enumerate() {
        for (j, &v) in map.iter().enumerate().skip(i + 1) {
            if g.has_edge(u, v) {
                h.add_edge(i, j)?;
            }
        }
    }
    Ok((h, map))
}

/// Disjoint union; vertices of `b` are shifted up by `a.n()`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Result<Graph, GraphError> {
    let n = a.n() + b.n();
    let mut g = Graph::empty(n)?;
    for (u, v) in a.edges() {
        g.add_edge(u, v)?;
    }
    for (u, v) in b.edges() {
        g.add_edge(u + a.n(), v + a.n())?;
    }
    Ok(g)
}

/// All 2^(n choose 2) labeled graphs on `n` vertices, in ascending edge-mask
/// order over the lexicographic pair list (0,1), (0,2), ..., (n-2,n-1).
pub fn enumerate_labeled_graphs(
    n: usize,
) -> Result<impl Iterator<Item = Graph>, GraphError> {
    if n > ENUMERATION_CAP {
        return Err(GraphError::EnumerationCapExceeded { n });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let total: u64 = 1 << pairs.len();
    Ok((0..total).map(move |mask| {
        let mut g = Graph::empty(n).unwrap();
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }))
}

/// G(n, p) sample that is reproducible across platforms: a ChaCha8 stream
/// seeded with `seed` is consumed one draw per vertex pair, pairs scanned in
/// lexicographic order, and the pair becomes an edge when the draw (mapped to
/// [0,1) with 53 bits) is below `p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::BadProbability { p });
    }
    let mut g = Graph::empty(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for u in 0..n {
        for v in u + 1..n {
            let draw = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            if draw < p {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}
