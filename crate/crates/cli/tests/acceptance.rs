//! Acceptance suite: one test per criterion, each printing a PASS or FAIL
//! line (visible with `--nocapture`) and asserting it.
//!
//! The expensive graph families are swept once and shared: every labeled
//! graph on up to six vertices, plus six fixed-seed random families at
//! seven to nine vertices. All numeric claims are exact integer equality.

use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigInt;

use kegraph::{
    det_bareiss, det_sachs, disjoint_union, emit_graph6, enumerate_labeled_graphs,
    is_koenig_egervary, max_sachs_order, maximum_matching, perm_ryser, perm_sachs,
    pf_pff_partition, Caps, Graph, IntMatrix,
};
use kegraph_cli::{
    search, sweep, Predicate, SweepReport, SweepSource, DET_ORACLE_AGREEMENT,
    FLOWER_POSY_KE_EQUIVALENCE, MATCHING_DIFFERENCE_ALTERNATION, MAX_SACHS_NO_ODD_CYCLE,
    MAX_SACHS_ORDER_MATCHES_MATCHING, NO_CROSSING_SACHS, PERM_ORACLE_AGREEMENT,
    PF_DET_FACTORIZATION, PF_MATCHING_ADDITIVITY, PF_PERM_FACTORIZATION, SD_DET_FACTORIZATION,
};

/// Graphs on up to six vertices, 33868 in total.
const EXHAUSTIVE_TOTAL: u64 = 1 + 1 + 2 + 8 + 64 + 1024 + 32768;

const RANDOM_SAMPLES: u64 = 10_000;
const RANDOM_SPECS: [(usize, f64, u64); 6] = [
    (7, 0.3, 70_301),
    (7, 0.5, 70_501),
    (8, 0.3, 80_301),
    (8, 0.5, 80_501),
    (9, 0.3, 90_301),
    (9, 0.5, 90_501),
];

fn exhaustive_reports() -> &'static [SweepReport] {
    static CELL: OnceLock<Vec<SweepReport>> = OnceLock::new();
    CELL.get_or_init(|| {
        (0..=6)
            .map(|n| sweep(&SweepSource::Exhaustive { n }, &Caps::default(), None).unwrap())
            .collect()
    })
}

fn random_reports() -> &'static [SweepReport] {
    static CELL: OnceLock<Vec<SweepReport>> = OnceLock::new();
    CELL.get_or_init(|| {
        RANDOM_SPECS
            .iter()
            .map(|&(n, p, seed)| {
                let source = SweepSource::Random { n, samples: RANDOM_SAMPLES, p, seed };
                sweep(&source, &Caps::default(), None).unwrap()
            })
            .collect()
    })
}

/// Summed (pass, fail, not-applicable, cap-exceeded) for one check id.
fn tally<'a>(
    reports: impl IntoIterator<Item = &'a SweepReport>,
    id: &str,
) -> (u64, u64, u64, u64) {
    let mut t = (0u64, 0u64, 0u64, 0u64);
    for r in reports {
        let c = r.checks.iter().find(|c| c.id == id).unwrap();
        t.0 += c.pass;
        t.1 += c.fail;
        t.2 += c.not_applicable;
        t.3 += c.cap_exceeded;
    }
    t
}

/// Exhaustive families through n = 6 followed by the six random families.
fn full_scope() -> impl Iterator<Item = &'static SweepReport> {
    exhaustive_reports().iter().chain(random_reports())
}

fn verdict(criterion: usize, ok: bool, detail: &str) {
    let word = if ok { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {word} ({detail})");
    assert!(ok, "criterion {criterion} failed: {detail}");
}

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

fn domino() -> Graph {
    Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (0, 3), (3, 4), (4, 5), (2, 5)]).unwrap()
}

fn det_of(g: &Graph) -> BigInt {
    det_bareiss(&IntMatrix::adjacency(g))
}

#[test]
fn criterion_01_sachs_expansion_matches_matrix_oracles_through_n6() {
    let started = Instant::now();
    let mut graphs = 0u64;
    let mut first_violation = None;
    for n in 0..=6 {
        for g in enumerate_labeled_graphs(n).unwrap() {
            graphs += 1;
            let m = IntMatrix::adjacency(&g);
            let det_ok = det_sachs(&g) == det_bareiss(&m);
            let perm_ok = perm_sachs(&g) == perm_ryser(&m).unwrap();
            if !(det_ok && perm_ok) && first_violation.is_none() {
                first_violation = Some(emit_graph6(&g));
            }
        }
    }
    let secs = started.elapsed().as_secs_f64();
    let ok = first_violation.is_none() && graphs == EXHAUSTIVE_TOTAL && secs < 120.0;
    verdict(
        1,
        ok,
        &format!(
            "det and perm agree on {graphs} graphs in {secs:.1}s{}",
            first_violation
                .map(|g| format!(", first violation {g}"))
                .unwrap_or_default()
        ),
    );
}

#[test]
fn criterion_02_determinant_and_permanent_factorize_for_ke_graphs() {
    let det = tally(full_scope(), PF_DET_FACTORIZATION);
    let perm = tally(full_scope(), PF_PERM_FACTORIZATION);
    let graphs: u64 = full_scope().map(|r| r.graphs).sum();
    let ok = det.1 == 0 && det.3 == 0 && perm.1 == 0 && perm.3 == 0 && det.0 > 0
        && graphs == EXHAUSTIVE_TOTAL + 6 * RANDOM_SAMPLES;
    verdict(
        2,
        ok,
        &format!(
            "{} KE graphs across {graphs} instances, det fails {} caps {}, perm fails {} caps {}",
            det.0, det.1, det.3, perm.1, perm.3
        ),
    );
}

#[test]
fn criterion_03_spanning_sachs_subgraphs_avoid_crossing_edges() {
    let t = tally(full_scope(), NO_CROSSING_SACHS);
    let ok = t.1 == 0 && t.3 == 0 && t.0 > 0;
    verdict(
        3,
        ok,
        &format!("{} KE graphs with perfect matching, fails {} caps {}", t.0, t.1, t.3),
    );
}

#[test]
fn criterion_04_max_sachs_subgraphs_have_no_odd_cycles_and_order_2mu() {
    let odd = tally(exhaustive_reports(), MAX_SACHS_NO_ODD_CYCLE);
    let order = tally(exhaustive_reports(), MAX_SACHS_ORDER_MATCHES_MATCHING);
    let k3 = k3();
    let k3_order = max_sachs_order(&k3).unwrap();
    let k3_mu = maximum_matching(&k3).len();
    let k3_separates = k3_order == 3
        && 2 * k3_mu == 2
        && k3_order != 2 * k3_mu
        && !is_koenig_egervary(&k3).unwrap();
    let ok = odd.1 == 0 && odd.3 == 0 && order.1 == 0 && order.3 == 0 && odd.0 > 0 && k3_separates;
    verdict(
        4,
        ok,
        &format!(
            "{} KE graphs clean, K3 yields order {k3_order} against 2*matching {}",
            odd.0,
            2 * k3_mu
        ),
    );
}

#[test]
fn criterion_05_matching_number_splits_across_the_partition() {
    let t = tally(full_scope(), PF_MATCHING_ADDITIVITY);
    let ok = t.1 == 0 && t.3 == 0 && t.0 > 0;
    verdict(
        5,
        ok,
        &format!("{} KE graphs with perfect matching, fails {} caps {}", t.0, t.1, t.3),
    );
}

#[test]
fn criterion_06_flower_or_posy_existence_is_matching_free_and_marks_non_ke() {
    let t = tally(exhaustive_reports(), FLOWER_POSY_KE_EQUIVALENCE);
    let ok = t.1 == 0 && t.3 == 0 && t.0 == EXHAUSTIVE_TOTAL;
    verdict(
        6,
        ok,
        &format!(
            "{} graphs, every maximum matching agrees with the independence oracle, fails {}",
            t.0, t.1
        ),
    );
}

#[test]
fn criterion_07_matching_differences_decompose_as_the_lemma_says() {
    let through_n5 = &exhaustive_reports()[..=5];
    let t = tally(through_n5, MATCHING_DIFFERENCE_ALTERNATION);
    let ok = t.1 == 0 && t.3 == 0 && t.0 == 1100;
    verdict(
        7,
        ok,
        &format!("{} graphs, all maximum-matching pairs classified, fails {}", t.0, t.1),
    );
}

#[test]
fn criterion_08_named_fixtures_have_their_exact_values() {
    let mut ok = true;
    let mut notes = Vec::new();

    let paw = paw();
    let paw_part = pf_pff_partition(&paw).unwrap();
    if !(is_koenig_egervary(&paw).unwrap()
        && paw_part.block_a() == paw.vertices()
        && det_of(&paw) == BigInt::from(1))
    {
        ok = false;
        notes.push("paw");
    }

    let c4 = c4();
    let c4_part = pf_pff_partition(&c4).unwrap();
    if !(c4_part.block_a().is_empty()
        && det_of(&c4) == BigInt::from(0)
        && perm_ryser(&IntMatrix::adjacency(&c4)).unwrap() == BigInt::from(4))
    {
        ok = false;
        notes.push("C4");
    }

    let bowtie = bowtie();
    if !(!is_koenig_egervary(&bowtie).unwrap() && det_of(&bowtie) == BigInt::from(-4)) {
        ok = false;
        notes.push("bowtie");
    }

    let domino = domino();
    let domino_part = pf_pff_partition(&domino).unwrap();
    if !(is_koenig_egervary(&domino).unwrap()
        && maximum_matching(&domino).is_perfect()
        && domino_part.block_a().is_empty()
        && det_of(&domino) == BigInt::from(-1))
    {
        ok = false;
        notes.push("domino");
    }

    let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
    let union = disjoint_union(&paw, &k2).unwrap();
    let union_part = pf_pff_partition(&union).unwrap();
    let (pf_block, _) = kegraph::induced_subgraph(&union, union_part.block_a()).unwrap();
    let (pff_block, _) = kegraph::induced_subgraph(&union, union_part.block_b()).unwrap();
    if !(union_part.block_a().to_vec() == vec![0, 1, 2, 3]
        && det_of(&union) == BigInt::from(-1)
        && det_of(&pf_block) == BigInt::from(1)
        && det_of(&pff_block) == BigInt::from(-1))
    {
        ok = false;
        notes.push("paw plus K2");
    }

    let empty = Graph::empty(0).unwrap();
    if !(det_of(&empty) == BigInt::from(1)
        && det_sachs(&empty) == BigInt::from(1)
        && perm_sachs(&empty) == BigInt::from(1)
        && perm_ryser(&IntMatrix::adjacency(&empty)).unwrap() == BigInt::from(1))
    {
        ok = false;
        notes.push("empty graph");
    }

    let detail = if notes.is_empty() {
        "paw, C4, bowtie, domino, paw plus K2 and the empty graph all exact".to_string()
    } else {
        format!("wrong values on: {}", notes.join(", "))
    };
    verdict(8, ok, &detail);
}

#[test]
fn criterion_09_determinant_factorizes_across_the_structural_partition() {
    let t = tally(exhaustive_reports(), SD_DET_FACTORIZATION);
    let ok = t.1 == 0 && t.3 == 0 && t.0 == EXHAUSTIVE_TOTAL;
    verdict(9, ok, &format!("{} graphs, fails {} caps {}", t.0, t.1, t.3));
}

#[test]
fn criterion_10_fixed_seed_reports_are_byte_identical() {
    let caps = Caps::default();
    let source = SweepSource::Random { n: 9, samples: 1000, p: 0.3, seed: 7 };
    let sweep_a = serde_json::to_string_pretty(&sweep(&source, &caps, None).unwrap()).unwrap();
    let sweep_b = serde_json::to_string_pretty(&sweep(&source, &caps, Some(2)).unwrap()).unwrap();

    let family = SweepSource::Exhaustive { n: 5 };
    let search_a = serde_json::to_string_pretty(
        &search(Predicate::UnimodularPfFull, &family, &caps, None).unwrap(),
    )
    .unwrap();
    let search_b = serde_json::to_string_pretty(
        &search(Predicate::UnimodularPfFull, &family, &caps, Some(3)).unwrap(),
    )
    .unwrap();

    let ok = sweep_a == sweep_b && search_a == search_b;
    verdict(
        10,
        ok,
        &format!(
            "sweep report {} bytes and search report {} bytes reproduce exactly",
            sweep_a.len(),
            search_a.len()
        ),
    );
}

#[test]
fn exhaustive_sweeps_never_fail_any_check() {
    let mut fails = 0u64;
    for r in exhaustive_reports() {
        fails += r.failures.len() as u64;
        for c in &r.checks {
            fails += c.fail;
        }
    }
    assert_eq!(fails, 0);
    let oracle_det = tally(exhaustive_reports(), DET_ORACLE_AGREEMENT);
    let oracle_perm = tally(exhaustive_reports(), PERM_ORACLE_AGREEMENT);
    assert_eq!(oracle_det.0, EXHAUSTIVE_TOTAL);
    assert_eq!(oracle_perm.0, EXHAUSTIVE_TOTAL);
}
