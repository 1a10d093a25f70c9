//! The per-graph verification checks behind `verify`, `sweep` and `search`.
//!
//! Each check passes, fails with a self-contained witness, reports that the
//! graph does not satisfy its hypothesis, or reports that a resource cap
//! stopped the computation. A witness always embeds the graph as graph6,
//! so a recorded failure can be re-checked from the serialized report
//! alone. All comparisons are exact integer equality.

use std::collections::HashSet;

use kegraph::{
    crossing_edges, det_bareiss, det_sachs, emit_graph6, enumerate_max_order_sachs,
    enumerate_maximum_matchings_capped, enumerate_sachs, find_flower_budgeted,
    find_posy_budgeted, induced_subgraph, is_koenig_egervary, max_sachs_order, maximum_matching,
    parse_graph6, perm_ryser, perm_sachs, pf_pff_partition_with, sd_ke_partition_with,
    symmetric_difference_components, AltKind, Caps, Graph, IntMatrix, MatchSource, Matching,
    Partition, SachsComponent, SachsSubgraph,
};
use serde_json::{json, Value};

use crate::report::{CheckResult, CheckStatus, Report};

pub const FLOWER_POSY_KE_EQUIVALENCE: &str = "flower-posy-ke-equivalence";
pub const MATCHING_DIFFERENCE_ALTERNATION: &str = "matching-difference-alternation";
pub const MAX_SACHS_NO_ODD_CYCLE: &str = "max-sachs-no-odd-cycle";
pub const MAX_SACHS_ORDER_MATCHES_MATCHING: &str = "max-sachs-order-matches-matching";
pub const NO_CROSSING_SACHS: &str = "no-crossing-sachs";
pub const PF_DET_FACTORIZATION: &str = "pf-det-factorization";
pub const PF_PERM_FACTORIZATION: &str = "pf-perm-factorization";
pub const PF_MATCHING_ADDITIVITY: &str = "pf-matching-additivity";
pub const SD_DET_FACTORIZATION: &str = "sd-det-factorization";
pub const DET_ORACLE_AGREEMENT: &str = "det-oracle-agreement";
pub const PERM_ORACLE_AGREEMENT: &str = "perm-oracle-agreement";

/// Every check id, in the order `verify_graph` reports them.
pub const ALL_CHECK_IDS: [&str; 11] = [
    FLOWER_POSY_KE_EQUIVALENCE,
    MATCHING_DIFFERENCE_ALTERNATION,
    MAX_SACHS_NO_ODD_CYCLE,
    MAX_SACHS_ORDER_MATCHES_MATCHING,
    NO_CROSSING_SACHS,
    PF_DET_FACTORIZATION,
    PF_PERM_FACTORIZATION,
    PF_MATCHING_ADDITIVITY,
    SD_DET_FACTORIZATION,
    DET_ORACLE_AGREEMENT,
    PERM_ORACLE_AGREEMENT,
];

/// Most maximum-matching pairs the alternation check examines before it
/// reports a cap instead of an answer.
pub const DIFFERENCE_PAIR_CAP: usize = 100_000;

pub fn tool_version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

/// Runs every check on one graph and returns the outcomes in
/// [`ALL_CHECK_IDS`] order.
///
/// Hypothesis-failing graphs yield `not-applicable`, never `fail`; a cap
/// binding inside one check yields `cap-exceeded` for that check without
/// disturbing the others.
pub fn verify_graph(g: &Graph, caps: &Caps) -> Vec<CheckResult> {
    let g6 = emit_graph6(g);
    let ke = is_koenig_egervary(g);
    let matchings = enumerate_maximum_matchings_capped(g, caps.max_matchings);
    let mu = maximum_matching(g).len();
    let pm = 2 * mu == g.n();
    let pf = if matches!(ke, Ok(true)) {
        Some(pf_pff_partition_with(g, caps))
    } else {
        None
    };
    let sd = sd_ke_partition_with(g, caps);

    vec![
        equivalence_check(&g6, &ke, &matchings, caps),
        alternation_check(&g6, &matchings),
        no_odd_cycle_check(&g6, g, &ke),
        sachs_order_check(&g6, g, &ke, mu),
        crossing_check(&g6, g, &ke, pm, pf.as_ref()),
        pf_det_check(&g6, g, &ke, pf.as_ref()),
        pf_perm_check(&g6, g, &ke, pf.as_ref()),
        additivity_check(&g6, g, &ke, pm, mu, pf.as_ref()),
        sd_det_check(&g6, g, &sd),
        det_agreement_check(&g6, g),
        perm_agreement_check(&g6, g),
    ]
}

/// [`verify_graph`] wrapped into a full report for the graph.
pub fn report_for_graph(g: &Graph, caps: &Caps) -> Report {
    Report {
        input: emit_graph6(g),
        version: tool_version(),
        seed: None,
        checks: verify_graph(g, caps),
        timing_ms: None,
    }
}

/// Re-runs the named check on the graph a witness embeds and returns the
/// fresh status, or `None` when the witness does not name a usable graph.
/// A genuine failure witness comes back as `Fail` again because every
/// check is a pure function of the graph.
pub fn revalidate(check_id: &str, witness: &Value) -> Option<CheckStatus> {
    let g6 = witness.get("graph6")?.as_str()?;
    let g = parse_graph6(g6).ok()?;
    verify_graph(&g, &Caps::default())
        .into_iter()
        .find(|c| c.id == check_id)
        .map(|c| c.status)
}

/// Unwraps a computed intermediate or converts its error into a
/// `cap-exceeded` outcome for the check being built.
fn gate<'a, T, E: std::fmt::Display>(id: &str, r: &'a Result<T, E>) -> Result<&'a T, CheckResult> {
    match r {
        Ok(v) => Ok(v),
        Err(e) => Err(CheckResult::cap_exceeded(id, &e.to_string())),
    }
}

macro_rules! gate {
    ($id:expr, $result:expr) => {
        match gate($id, $result) {
            Ok(v) => v,
            Err(c) => return c,
        }
    };
}

/// Flower-or-posy existence is the same for every maximum matching and
/// holds exactly on the non Koenig-Egervary graphs.
fn equivalence_check(
    g6: &str,
    ke: &Result<bool, kegraph::DecompError>,
    matchings: &Result<Vec<Matching>, kegraph::MatchingError>,
    caps: &Caps,
) -> CheckResult {
    let id = FLOWER_POSY_KE_EQUIVALENCE;
    let ke = *gate!(id, ke);
    let ms = gate!(id, matchings);
    let mut flags = Vec::with_capacity(ms.len());
    for m in ms {
        let flower = match find_flower_budgeted(m, caps.search_budget) {
            Ok(f) => f,
            Err(e) => return CheckResult::cap_exceeded(id, &e.to_string()),
        };
        let posy = match find_posy_budgeted(m, caps.search_budget) {
            Ok(p) => p,
            Err(e) => return CheckResult::cap_exceeded(id, &e.to_string()),
        };
        flags.push((m, flower.is_some() || posy.is_some()));
    }
    if flags.iter().all(|(_, found)| *found == !ke) {
        return CheckResult::pass(id);
    }
    let per_matching: Vec<Value> = flags
        .iter()
        .map(|(m, found)| json!({ "pairs": m.pairs(), "flower_or_posy": found }))
        .collect();
    CheckResult::fail(
        id,
        json!({ "graph6": g6, "koenig_egervary": ke, "matchings": per_matching }),
    )
}

/// Components of the symmetric difference of two maximum matchings are
/// alternating even cycles or alternating even paths whose ends are
/// saturated by the contributing matching and exposed by the other.
fn alternation_check(
    g6: &str,
    matchings: &Result<Vec<Matching>, kegraph::MatchingError>,
) -> CheckResult {
    let id = MATCHING_DIFFERENCE_ALTERNATION;
    let ms = gate!(id, matchings);
    let pair_count = ms.len() * ms.len().saturating_sub(1) / 2;
    if pair_count > DIFFERENCE_PAIR_CAP {
        return CheckResult::cap_exceeded(
            id,
            &format!("{pair_count} matching pairs exceed the cap of {DIFFERENCE_PAIR_CAP}"),
        );
    }
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            let comps = symmetric_difference_components(&ms[i], &ms[j])
                .expect("matchings enumerated from one host");
            for c in &comps {
                if let Some(reason) = classify_component(&ms[i], &ms[j], c) {
                    let sources: Vec<&str> = c
                        .sources
                        .iter()
                        .map(|s| match s {
                            MatchSource::First => "first",
                            MatchSource::Second => "second",
                        })
                        .collect();
                    return CheckResult::fail(
                        id,
                        json!({
                            "graph6": g6,
                            "first": ms[i].pairs(),
                            "second": ms[j].pairs(),
                            "kind": match c.kind { AltKind::Path => "path", AltKind::Cycle => "cycle" },
                            "vertices": c.vertices,
                            "sources": sources,
                            "reason": reason,
                        }),
                    );
                }
            }
        }
    }
    CheckResult::pass(id)
}

/// Returns a violation description for one symmetric-difference component,
/// or `None` when the component looks exactly as the theory demands.
fn classify_component(
    first: &Matching,
    second: &Matching,
    c: &kegraph::AltComponent,
) -> Option<&'static str> {
    if c.sources.windows(2).any(|w| w[0] == w[1]) {
        return Some("edges do not alternate between the matchings");
    }
    match c.kind {
        AltKind::Cycle => {
            if c.vertices.len() % 2 != 0 {
                return Some("cycle has odd length");
            }
        }
        AltKind::Path => {
            if c.sources.len() % 2 != 0 {
                return Some("path has an odd number of edges");
            }
            let first_v = c.vertices[0];
            let last_v = *c.vertices.last().expect("paths are nonempty");
            for (v, end_source) in [
                (first_v, c.sources[0]),
                (last_v, *c.sources.last().expect("paths have edges")),
            ] {
                let (inside, outside) = match end_source {
                    MatchSource::First => (first, second),
                    MatchSource::Second => (second, first),
                };
                if !inside.is_saturated(v) || outside.is_saturated(v) {
                    return Some("path endpoint is not saturated by exactly the contributing matching");
                }
            }
        }
    }
    None
}

/// No maximum-order Sachs subgraph of a Koenig-Egervary graph contains an
/// odd cycle.
fn no_odd_cycle_check(
    g6: &str,
    g: &Graph,
    ke: &Result<bool, kegraph::DecompError>,
) -> CheckResult {
    let id = MAX_SACHS_NO_ODD_CYCLE;
    if !*gate!(id, ke) {
        return CheckResult::not_applicable(id);
    }
    let subgraphs = match enumerate_max_order_sachs(g) {
        Ok(s) => s,
        Err(e) => return CheckResult::cap_exceeded(id, &e.to_string()),
    };
    for s in &subgraphs {
        for c in s.components() {
            if let SachsComponent::Cycle(cyc) = c {
                if cyc.len() % 2 == 1 {
                    return CheckResult::fail(
                        id,
                        json!({ "graph6": g6, "subgraph": sachs_json(s), "odd_cycle": cyc }),
                    );
                }
            }
        }
    }
    CheckResult::pass(id)
}

/// The maximum Sachs order of a Koenig-Egervary graph is twice its
/// matching number.
fn sachs_order_check(
    g6: &str,
    g: &Graph,
    ke: &Result<bool, kegraph::DecompError>,
    mu: usize,
) -> CheckResult {
    let id = MAX_SACHS_ORDER_MATCHES_MATCHING;
    if !*gate!(id, ke) {
        return CheckResult::not_applicable(id);
    }
    let order = match max_sachs_order(g) {
        Ok(k) => k,
        Err(e) => return CheckResult::cap_exceeded(id, &e.to_string()),
    };
    if order == 2 * mu {
        CheckResult::pass(id)
    } else {
        CheckResult::fail(
            id,
            json!({ "graph6": g6, "max_sachs_order": order, "matching_number": mu }),
        )
    }
}

/// For a Koenig-Egervary graph with a perfect matching, no spanning Sachs
/// subgraph uses an edge joining the two partition blocks.
fn crossing_check(
    g6: &str,
    g: &Graph,
    ke: &Result<bool, kegraph::DecompError>,
    pm: bool,
    pf: Option<&Result<Partition, kegraph::DecompError>>,
) -> CheckResult {
    let id = NO_CROSSING_SACHS;
    if !pm || !*gate!(id, ke) {
        return CheckResult::not_applicable(id);
    }
    let part = gate!(id, pf.expect("partition computed for recognized graphs"));
    let crossing: Vec<(usize, usize)> = crossing_edges(part);
    if crossing.is_empty() {
        return CheckResult::pass(id);
    }
    let banned: HashSet<(usize, usize)> = crossing.iter().copied().collect();
    for s in enumerate_sachs(g) {
        for c in s.components() {
            for e in component_edges(c) {
                if banned.contains(&e) {
                    return CheckResult::fail(
                        id,
                        json!({
                            "graph6": g6,
                            "crossing_edges": crossing,
                            "subgraph": sachs_json(&s),
                            "violating_edge": e,
                        }),
                    );
                }
            }
        }
    }
    CheckResult::pass(id)
}

/// Determinant factorization across a vertex partition, shared by the
/// perfect-flower and structural-defect variants.
fn block_det_check(
    id: &str,
    partition_name: &str,
    g6: &str,
    g: &Graph,
    part: &Partition,
) -> CheckResult {
    let whole = det_bareiss(&IntMatrix::adjacency(g));
    let (a, _) = induced_subgraph(g, part.block_a()).expect("block is within the host");
    let (b, _) = induced_subgraph(g, part.block_b()).expect("block is within the host");
    let det_a = det_bareiss(&IntMatrix::adjacency(&a));
    let det_b = det_bareiss(&IntMatrix::adjacency(&b));
    if whole == &det_a * &det_b {
        CheckResult::pass(id)
    } else {
        CheckResult::fail(
            id,
            json!({
                "graph6": g6,
                "partition": partition_name,
                "block_a": part.block_a().to_vec(),
                "block_b": part.block_b().to_vec(),
                "det": whole.to_string(),
                "block_a_det": det_a.to_string(),
                "block_b_det": det_b.to_string(),
            }),
        )
    }
}

fn pf_det_check(
    g6: &str,
    g: &Graph,
    ke: &Result<bool, kegraph::DecompError>,
    pf: Option<&Result<Partition, kegraph::DecompError>>,
) -> CheckResult {
    let id = PF_DET_FACTORIZATION;
    if !*gate!(id, ke) {
        return CheckResult::not_applicable(id);
    }
    let part = gate!(id, pf.expect("partition computed for recognized graphs"));
    block_det_check(id, "pf-pff", g6, g, part)
}

fn pf_perm_check(
    g6: &str,
    g: &Graph,
    ke: &Result<bool, kegraph::DecompError>,
    pf: Option<&Result<Partition, kegraph::DecompError>>,
) -> CheckResult {
    let id = PF_PERM_FACTORIZATION;
    if !*gate!(id, ke) {
        return CheckResult::not_applicable(id);
    }
    let part = gate!(id, pf.expect("partition computed for recognized graphs"));
    let whole = match perm_ryser(&IntMatrix::adjacency(g)) {
        Ok(x) => x,
        Err(e) => return CheckResult::cap_exceeded(id, &e.to_string()),
    };
    let (a, _) = induced_subgraph(g, part.block_a()).expect("block is within the host");
    let (b, _) = induced_subgraph(g, part.block_b()).expect("block is within the host");
    let perm_a = match perm_ryser(&IntMatrix::adjacency(&a)) {
        Ok(x) => x,
        Err(e) => return CheckResult::cap_exceeded(id, &e.to_string()),
    };
    let perm_b = match perm_ryser(&IntMatrix::adjacency(&b)) {
        Ok(x) => x,
        Err(e) => return CheckResult::cap_exceeded(id, &e.to_string()),
    };
    if whole == &perm_a * &perm_b {
        CheckResult::pass(id)
    } else {
        CheckResult::fail(
            id,
            json!({
                "graph6": g6,
                "partition": "pf-pff",
                "block_a": part.block_a().to_vec(),
                "block_b": part.block_b().to_vec(),
                "perm": whole.to_string(),
                "block_a_perm": perm_a.to_string(),
                "block_b_perm": perm_b.to_string(),
            }),
        )
    }
}

/// For a Koenig-Egervary graph with a perfect matching, the matching
/// number splits additively across the perfect-flower partition.
fn additivity_check(
    g6: &str,
    g: &Graph,
    ke: &Result<bool, kegraph::DecompError>,
    pm: bool,
    mu: usize,
    pf: Option<&Result<Partition, kegraph::DecompError>>,
) -> CheckResult {
    let id = PF_MATCHING_ADDITIVITY;
    if !pm || !*gate!(id, ke) {
        return CheckResult::not_applicable(id);
    }
    let part = gate!(id, pf.expect("partition computed for recognized graphs"));
    let (a, _) = induced_subgraph(g, part.block_a()).expect("block is within the host");
    let (b, _) = induced_subgraph(g, part.block_b()).expect("block is within the host");
    let mu_a = maximum_matching(&a).len();
    let mu_b = maximum_matching(&b).len();
    if mu == mu_a + mu_b {
        CheckResult::pass(id)
    } else {
        CheckResult::fail(
            id,
            json!({
                "graph6": g6,
                "block_a": part.block_a().to_vec(),
                "block_b": part.block_b().to_vec(),
                "matching_number": mu,
                "block_a_matching_number": mu_a,
                "block_b_matching_number": mu_b,
            }),
        )
    }
}

fn sd_det_check(
    g6: &str,
    g: &Graph,
    sd: &Result<Partition, kegraph::DecompError>,
) -> CheckResult {
    let id = SD_DET_FACTORIZATION;
    let part = gate!(id, sd);
    block_det_check(id, "sd-ke", g6, g, part)
}

fn det_agreement_check(g6: &str, g: &Graph) -> CheckResult {
    let id = DET_ORACLE_AGREEMENT;
    let expansion = det_sachs(g);
    let matrix = det_bareiss(&IntMatrix::adjacency(g));
    if expansion == matrix {
        CheckResult::pass(id)
    } else {
        CheckResult::fail(
            id,
            json!({
                "graph6": g6,
                "expansion_det": expansion.to_string(),
                "matrix_det": matrix.to_string(),
            }),
        )
    }
}

fn perm_agreement_check(g6: &str, g: &Graph) -> CheckResult {
    let id = PERM_ORACLE_AGREEMENT;
    let matrix = match perm_ryser(&IntMatrix::adjacency(g)) {
        Ok(x) => x,
        Err(e) => return CheckResult::cap_exceeded(id, &e.to_string()),
    };
    let expansion = perm_sachs(g);
    if expansion == matrix {
        CheckResult::pass(id)
    } else {
        CheckResult::fail(
            id,
            json!({
                "graph6": g6,
                "expansion_perm": expansion.to_string(),
                "matrix_perm": matrix.to_string(),
            }),
        )
    }
}

fn sachs_json(s: &SachsSubgraph) -> Value {
    let comps: Vec<Value> = s
        .components()
        .iter()
        .map(|c| match c {
            SachsComponent::Edge(u, v) => json!({ "edge": [u, v] }),
            SachsComponent::Cycle(cyc) => json!({ "cycle": cyc }),
        })
        .collect();
    json!(comps)
}

fn component_edges(c: &SachsComponent) -> Vec<(usize, usize)> {
    match c {
        SachsComponent::Edge(u, v) => {
            let (a, b) = (*u, *v);
            vec![(a.min(b), a.max(b))]
        }
        SachsComponent::Cycle(cyc) => {
            let mut out = Vec::with_capacity(cyc.len());
            for i in 0..cyc.len() {
                let a = cyc[i];
                let b = cyc[(i + 1) % cyc.len()];
                out.push((a.min(b), a.max(b)));
            }
            out
        }
    }
}
