//! Alternating structures attached to a matching: blossoms (odd cycles with
//! near-perfect internal matchings), flowers (blossom plus alternating stem
//! to an exposed root), posies (two blossoms joined by an alternating
//! connector), and perfect flowers (blossom plus a nontrivial alternating
//! path starting and ending on matched edges).
//!
//! Searches walk alternating paths outward from blossom bases.  From a
//! saturated base the first step is forced along its matched edge, and every
//! later step pairs one free edge choice with the forced matched edge of the
//! vertex it reaches, so the search state always sits at the end of an
//! even-length alternating prefix.

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::matching::{maximum_matching, Matching};

/// Default limit on search steps for one call; exhausting it is an error
/// rather than a silent truncation.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("matching is not maximum in its host graph")]
    NonMaximumMatching,
    #[error("search budget of {budget} steps exhausted")]
    BudgetExhausted { budget: u64 },
}

/// Odd cycle `2k + 1` long carrying exactly `k` matched edges.  The base is
/// the unique vertex whose two cycle edges are both unmatched; `cycle`
/// starts at the base and the orientation is fixed by `cycle[1] <
/// cycle[last]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blossom {
    pub cycle: Vec<usize>,
    pub base: usize,
}

impl Blossom {
    pub fn support(&self) -> VertexSet {
        self.cycle.iter().copied().collect()
    }
}

/// Blossom plus an even-length alternating stem from the base to an exposed
/// root.  `stem` starts at the base; a single-vertex stem means the base
/// itself is exposed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flower {
    pub blossom: Blossom,
    pub stem: Vec<usize>,
}

impl Flower {
    pub fn root(&self) -> usize {
        *self.stem.last().unwrap()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet(self.blossom.support().0 | self.stem.iter().fold(0, |m, &v| m | 1 << v))
    }
}

/// Two blossoms with distinct bases joined by an odd-length alternating
/// connector whose first and last edges are matched; interior connector
/// vertices avoid both blossoms.  The blossoms themselves may share
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Posy {
    pub first: Blossom,
    pub second: Blossom,
    pub connector: Vec<usize>,
}

impl Posy {
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet(
            self.first.support().0
                | self.second.support().0
                | self.connector.iter().fold(0, |m, &v| m | 1 << v),
        )
    }
}

/// Blossom plus a nontrivial alternating path from the base whose first and
/// last edges are both matched; the path meets the cycle only at the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectFlower {
    pub blossom: Blossom,
    pub path: Vec<usize>,
}

impl PerfectFlower {
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet(self.blossom.support().0 | self.path.iter().fold(0, |m, &v| m | 1 << v))
    }
}

struct Budget {
    left: u64,
    total: u64,
}

impl Budget {
    fn new(total: u64) -> Budget {
        Budget { left: total, total }
    }

    fn spend(&mut self) -> Result<(), SearchError> {
        if self.left == 0 {
            return Err(SearchError::BudgetExhausted { budget: self.total });
        }
        self.left -= 1;
        Ok(())
    }
}

fn ensure_maximum(m: &Matching) -> Result<(), SearchError> {
    if maximum_matching(m.host()).len() != m.len() {
        return Err(SearchError::NonMaximumMatching);
    }
    Ok(())
}

fn mask_of(vs: &[usize]) -> u64 {
    vs.iter().fold(0, |m, &v| m | 1 << v)
}

/// All blossoms of a maximum matching, sorted by cycle sequence.
pub fn find_blossoms(m: &Matching) -> Result<Vec<Blossom>, SearchError> {
    find_blossoms_budgeted(m, DEFAULT_SEARCH_BUDGET)
}

pub fn find_blossoms_budgeted(m: &Matching, budget: u64) -> Result<Vec<Blossom>, SearchError> {
    ensure_maximum(m)?;
    let mut budget = Budget::new(budget);
    let mut out = Vec::new();
    collect_blossoms(m, &mut budget, &mut out)?;
    Ok(out)
}

fn collect_blossoms(
    m: &Matching,
    budget: &mut Budget,
    out: &mut Vec<Blossom>,
) -> Result<(), SearchError> {
    let g = m.host();
    for base in 0..g.n() {
        let mut path = vec![base];
        let mut used = 1u64 << base;
        grow_blossom(g, m, &mut path, &mut used, budget, out)?;
    }
    out.sort_unstable_by(|a, b| a.cycle.cmp(&b.cycle));
    Ok(())
}

/// Extends an alternating walk that currently ends at a vertex reached by a
/// matched edge (or at the base).  Each step picks an unmatched edge and
/// then follows the forced matched edge, so closures back to the base always
/// leave both base edges unmatched.
fn grow_blossom(
    g: &Graph,
    m: &Matching,
    path: &mut Vec<usize>,
    used: &mut u64,
    budget: &mut Budget,
    out: &mut Vec<Blossom>,
) -> Result<(), SearchError> {
    let cur = *path.last().unwrap();
    let base = path[0];
    if path.len() >= 3 && g.has_edge(cur, base) && path[1] < cur {
        debug_assert!(!m.contains_edge(cur, base));
        out.push(Blossom { cycle: path.clone(), base });
    }
    let mut cands = g.neighbors(cur).0 & !*used;
    while cands != 0 {
        let w = cands.trailing_zeros() as usize;
        cands &= cands - 1;
        budget.spend()?;
        if m.contains_edge(cur, w) {
            continue;
        }
        let wm = m.mate(w);
        if wm == w || *used & 1 << wm != 0 {
            continue;
        }
        path.push(w);
        path.push(wm);
        *used |= 1 << w | 1 << wm;
        grow_blossom(g, m, path, used, budget, out)?;
        path.pop();
        path.pop();
        *used &= !(1 << w | 1 << wm);
    }
    Ok(())
}

/// One representative blossom per (vertex set, base) pair.  Stems,
/// connectors and paths attach at the base and avoid the cycle vertices, so
/// nothing beyond the pair affects the searches built on top.
fn dedup_views(blossoms: &[Blossom]) -> Vec<(u64, &Blossom)> {
    let mut seen = std::collections::HashSet::new();
    blossoms
        .iter()
        .filter_map(|b| {
            let support = mask_of(&b.cycle);
            seen.insert((support, b.base)).then_some((support, b))
        })
        .collect()
}

/// First flower found for this maximum matching, or `None` when there is no
/// flower at all.
pub fn find_flower(m: &Matching) -> Result<Option<Flower>, SearchError> {
    find_flower_budgeted(m, DEFAULT_SEARCH_BUDGET)
}

pub fn find_flower_budgeted(m: &Matching, budget: u64) -> Result<Option<Flower>, SearchError> {
    ensure_maximum(m)?;
    let mut budget = Budget::new(budget);
    let mut blossoms = Vec::new();
    collect_blossoms(m, &mut budget, &mut blossoms)?;
    let g = m.host();
    for (support, bl) in dedup_views(&blossoms) {
        if !m.is_saturated(bl.base) {
            return Ok(Some(Flower { blossom: bl.clone(), stem: vec![bl.base] }));
        }
        let p1 = m.mate(bl.base);
        debug_assert_eq!(support & 1 << p1, 0);
        let mut stem = vec![bl.base, p1];
        let mut used = support | 1 << p1;
        if grow_stem(g, m, &mut stem, &mut used, &mut budget)? {
            return Ok(Some(Flower { blossom: bl.clone(), stem }));
        }
    }
    Ok(None)
}

/// Depth-first extension of a stem ending at a saturated vertex; returns
/// true with the completed stem in place as soon as an exposed root is
/// reached.
fn grow_stem(
    g: &Graph,
    m: &Matching,
    stem: &mut Vec<usize>,
    used: &mut u64,
    budget: &mut Budget,
) -> Result<bool, SearchError> {
    let cur = *stem.last().unwrap();
    let mut cands = g.neighbors(cur).0 & !*used;
    while cands != 0 {
        let w = cands.trailing_zeros() as usize;
        cands &= cands - 1;
        budget.spend()?;
        if m.contains_edge(cur, w) {
            continue;
        }
        if !m.is_saturated(w) {
            stem.push(w);
            return Ok(true);
        }
        let wm = m.mate(w);
        if *used & 1 << wm != 0 {
            continue;
        }
        stem.push(w);
        stem.push(wm);
        *used |= 1 << w | 1 << wm;
        if grow_stem(g, m, stem, used, budget)? {
            return Ok(true);
        }
        stem.pop();
        stem.pop();
        *used &= !(1 << w | 1 << wm);
    }
    Ok(false)
}

/// First posy found for this maximum matching, or `None` when there is no
/// posy at all.
pub fn find_posy(m: &Matching) -> Result<Option<Posy>, SearchError> {
    find_posy_budgeted(m, DEFAULT_SEARCH_BUDGET)
}

pub fn find_posy_budgeted(m: &Matching, budget: u64) -> Result<Option<Posy>, SearchError> {
    ensure_maximum(m)?;
    let mut budget = Budget::new(budget);
    let mut blossoms = Vec::new();
    collect_blossoms(m, &mut budget, &mut blossoms)?;
    let views = dedup_views(&blossoms);
    let g = m.host();
    for &(support, b1) in &views {
        if !m.is_saturated(b1.base) {
            continue;
        }
        let p1 = m.mate(b1.base);
        let mut connector = vec![b1.base, p1];
        let mut used = support | 1 << p1;
        if let Some(posy) = grow_connector(
            g,
            m,
            b1,
            support,
            &views,
            &mut connector,
            &mut used,
            &mut budget,
        )? {
            return Ok(Some(posy));
        }
    }
    Ok(None)
}

/// Extends a connector whose last edge is matched; at each endpoint checks
/// whether some other blossom is based there with the interior avoiding
/// both supports.
#[allow(clippy::too_many_arguments)]
fn grow_connector(
    g: &Graph,
    m: &Matching,
    b1: &Blossom,
    support1: u64,
    views: &[(u64, &Blossom)],
    connector: &mut Vec<usize>,
    used: &mut u64,
    budget: &mut Budget,
) -> Result<Option<Posy>, SearchError> {
    let cur = *connector.last().unwrap();
    let interior = mask_of(connector) & !(1 << b1.base) & !(1 << cur);
    for &(support2, b2) in views {
        if b2.base != cur || b2.base == b1.base {
            continue;
        }
        if interior & (support1 | support2) == 0 {
            return Ok(Some(Posy {
                first: b1.clone(),
                second: b2.clone(),
                connector: connector.clone(),
            }));
        }
    }
    let mut cands = g.neighbors(cur).0 & !*used;
    while cands != 0 {
        let w = cands.trailing_zeros() as usize;
        cands &= cands - 1;
        budget.spend()?;
        if m.contains_edge(cur, w) || !m.is_saturated(w) {
            continue;
        }
        let wm = m.mate(w);
        if *used & 1 << wm != 0 {
            continue;
        }
        connector.push(w);
        connector.push(wm);
        *used |= 1 << w | 1 << wm;
        let found = grow_connector(g, m, b1, support1, views, connector, used, budget)?;
        if found.is_some() {
            return Ok(found);
        }
        connector.pop();
        connector.pop();
        *used &= !(1 << w | 1 << wm);
    }
    Ok(None)
}

/// Union of vertex sets over all perfect flowers of this maximum matching.
pub fn perfect_flower_vertices(m: &Matching) -> Result<VertexSet, SearchError> {
    perfect_flower_vertices_budgeted(m, DEFAULT_SEARCH_BUDGET)
}

pub fn perfect_flower_vertices_budgeted(
    m: &Matching,
    budget: u64,
) -> Result<VertexSet, SearchError> {
    ensure_maximum(m)?;
    let mut budget = Budget::new(budget);
    let mut blossoms = Vec::new();
    collect_blossoms(m, &mut budget, &mut blossoms)?;
    let g = m.host();
    let full = g.vertices().0;
    let mut covered = 0u64;
    for (support, bl) in dedup_views(&blossoms) {
        if !m.is_saturated(bl.base) {
            continue;
        }
        let p1 = m.mate(bl.base);
        covered |= support | 1 << p1;
        if covered == full {
            break;
        }
        let mut used = support | 1 << p1;
        if grow_perfect_paths(g, m, p1, &mut used, &mut covered, support, full, &mut budget)? {
            break;
        }
    }
    Ok(VertexSet(covered))
}

/// Walks every alternating path continuation; each pair of steps extends a
/// path that still ends on a matched edge, so the vertices of every prefix
/// belong to some perfect flower and are recorded as covered.  Returns true
/// once every vertex of the host is covered.
#[allow(clippy::too_many_arguments)]
fn grow_perfect_paths(
    g: &Graph,
    m: &Matching,
    cur: usize,
    used: &mut u64,
    covered: &mut u64,
    support: u64,
    full: u64,
    budget: &mut Budget,
) -> Result<bool, SearchError> {
    let mut cands = g.neighbors(cur).0 & !*used;
    while cands != 0 {
        let w = cands.trailing_zeros() as usize;
        cands &= cands - 1;
        budget.spend()?;
        if m.contains_edge(cur, w) || !m.is_saturated(w) {
            continue;
        }
        let wm = m.mate(w);
        if *used & 1 << wm != 0 {
            continue;
        }
        *used |= 1 << w | 1 << wm;
        *covered |= support | 1 << w | 1 << wm;
        if *covered == full
            || grow_perfect_paths(g, m, wm, used, covered, support, full, budget)?
        {
            return Ok(true);
        }
        *used &= !(1 << w | 1 << wm);
    }
    Ok(false)
}

/// Union of vertex sets over all flowers and posies of this maximum
/// matching.
pub fn flower_or_posy_vertices(m: &Matching) -> Result<VertexSet, SearchError> {
    flower_or_posy_vertices_budgeted(m, DEFAULT_SEARCH_BUDGET)
}

pub fn flower_or_posy_vertices_budgeted(
    m: &Matching,
    budget: u64,
) -> Result<VertexSet, SearchError> {
    ensure_maximum(m)?;
    let mut budget = Budget::new(budget);
    let mut blossoms = Vec::new();
    collect_blossoms(m, &mut budget, &mut blossoms)?;
    let views = dedup_views(&blossoms);
    let g = m.host();
    let full = g.vertices().0;
    let mut covered = 0u64;
    for &(support, b1) in &views {
        if !m.is_saturated(b1.base) {
            // The base itself is an exposed root: a flower with a trivial
            // stem.  No stem or connector can leave an exposed base.
            covered |= support;
            if covered == full {
                break;
            }
            continue;
        }
        let p1 = m.mate(b1.base);
        let mut walk = vec![b1.base, p1];
        let mut used = support | 1 << p1;
        if grow_flower_posy_walks(
            g,
            m,
            b1,
            support,
            &views,
            &mut walk,
            &mut used,
            &mut covered,
            full,
            &mut budget,
        )? {
            break;
        }
    }
    Ok(VertexSet(covered))
}

/// Shared walk for stems and connectors out of one blossom: an exposed
/// arrival completes a flower, an arrival at another blossom's base with a
/// clean interior completes a posy.  All arrivals are recorded and the walk
/// continues; returns true once the whole host is covered.
#[allow(clippy::too_many_arguments)]
fn grow_flower_posy_walks(
    g: &Graph,
    m: &Matching,
    b1: &Blossom,
    support1: u64,
    views: &[(u64, &Blossom)],
    walk: &mut Vec<usize>,
    used: &mut u64,
    covered: &mut u64,
    full: u64,
    budget: &mut Budget,
) -> Result<bool, SearchError> {
    let cur = *walk.last().unwrap();
    let walk_mask = mask_of(walk);
    let interior = walk_mask & !(1 << b1.base) & !(1 << cur);
    for &(support2, b2) in views {
        if b2.base != cur || b2.base == b1.base {
            continue;
        }
        if interior & (support1 | support2) == 0 {
            *covered |= support1 | support2 | walk_mask;
            if *covered == full {
                return Ok(true);
            }
        }
    }
    let mut cands = g.neighbors(cur).0 & !*used;
    while cands != 0 {
        let w = cands.trailing_zeros() as usize;
        cands &= cands - 1;
        budget.spend()?;
        if m.contains_edge(cur, w) {
            continue;
        }
        if !m.is_saturated(w) {
            *covered |= support1 | walk_mask | 1 << w;
            if *covered == full {
                return Ok(true);
            }
            continue;
        }
        let wm = m.mate(w);
        if *used & 1 << wm != 0 {
            continue;
        }
        walk.push(w);
        walk.push(wm);
        *used |= 1 << w | 1 << wm;
        let done = grow_flower_posy_walks(
            g, m, b1, support1, views, walk, used, covered, full, budget,
        )?;
        if done {
            return Ok(true);
        }
        walk.pop();
        walk.pop();
        *used &= !(1 << w | 1 << wm);
    }
    Ok(false)
}

/// Literal definition check for a blossom against this matching.
pub fn blossom_is_valid(m: &Matching, b: &Blossom) -> bool {
    let g = m.host();
    let c = &b.cycle;
    let len = c.len();
    if len < 3 || len % 2 == 0 {
        return false;
    }
    if c.iter().any(|&v| v >= g.n()) || mask_of(c).count_ones() as usize != len {
        return false;
    }
    if b.base != c[0] || c[1] >= c[len - 1] {
        return false;
    }
    for i in 0..len {
        let u = c[i];
        let v = c[(i + 1) % len];
        if !g.has_edge(u, v) {
            return false;
        }
        // Odd positions carry the matched edges; both edges at the base do
        // not.
        if m.contains_edge(u, v) != (i % 2 == 1) {
            return false;
        }
    }
    true
}

/// Literal definition check for a flower: valid blossom, alternating stem
/// starting on a matched edge, disjoint from the cycle beyond the base, and
/// an exposed root.
pub fn flower_is_valid(m: &Matching, f: &Flower) -> bool {
    if !blossom_is_valid(m, &f.blossom) {
        return false;
    }
    let g = m.host();
    let s = &f.stem;
    if s.is_empty() || s.len() % 2 == 0 || s[0] != f.blossom.base {
        return false;
    }
    if s.iter().any(|&v| v >= g.n()) || mask_of(s).count_ones() as usize != s.len() {
        return false;
    }
    let cycle_mask = mask_of(&f.blossom.cycle);
    if mask_of(s) & cycle_mask != 1 << f.blossom.base {
        return false;
    }
    for i in 0..s.len() - 1 {
        if !g.has_edge(s[i], s[i + 1]) {
            return false;
        }
        if m.contains_edge(s[i], s[i + 1]) != (i % 2 == 0) {
            return false;
        }
    }
    !m.is_saturated(*s.last().unwrap())
}

/// Literal definition check for a posy: two valid blossoms with distinct
/// bases and an alternating connector whose first and last edges are
/// matched, with interior vertices outside both blossoms.
pub fn posy_is_valid(m: &Matching, p: &Posy) -> bool {
    if !blossom_is_valid(m, &p.first) || !blossom_is_valid(m, &p.second) {
        return false;
    }
    if p.first.base == p.second.base {
        return false;
    }
    let g = m.host();
    let c = &p.connector;
    if c.len() < 2 || c.len() % 2 != 0 {
        return false;
    }
    if c[0] != p.first.base || *c.last().unwrap() != p.second.base {
        return false;
    }
    if c.iter().any(|&v| v >= g.n()) || mask_of(c).count_ones() as usize != c.len() {
        return false;
    }
    for i in 0..c.len() - 1 {
        if !g.has_edge(c[i], c[i + 1]) {
            return false;
        }
        if m.contains_edge(c[i], c[i + 1]) != (i % 2 == 0) {
            return false;
        }
    }
    let interior = mask_of(c) & !(1 << p.first.base) & !(1 << p.second.base);
    interior & (p.first.support().0 | p.second.support().0) == 0
}

/// Literal definition check for a perfect flower: valid blossom and a
/// nontrivial alternating path from the base, meeting the cycle only there,
/// whose first and last edges are matched.
pub fn perfect_flower_is_valid(m: &Matching, pf: &PerfectFlower) -> bool {
    if !blossom_is_valid(m, &pf.blossom) {
        return false;
    }
    let g = m.host();
    let p = &pf.path;
    if p.len() < 2 || p.len() % 2 != 0 || p[0] != pf.blossom.base {
        return false;
    }
    if p.iter().any(|&v| v >= g.n()) || mask_of(p).count_ones() as usize != p.len() {
        return false;
    }
    if mask_of(p) & mask_of(&pf.blossom.cycle) != 1 << pf.blossom.base {
        return false;
    }
    for i in 0..p.len() - 1 {
        if !g.has_edge(p[i], p[i + 1]) {
            return false;
        }
        if m.contains_edge(p[i], p[i + 1]) != (i % 2 == 0) {
            return false;
        }
    }
    true
}
