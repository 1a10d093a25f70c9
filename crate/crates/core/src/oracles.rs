//! Independent reference computations used to cross-check the structural
//! algorithms: fraction-free determinant, inclusion-exclusion permanent, and
//! brute-force independence and matching numbers.  These deliberately share
//! no code with the combinatorial side of the crate.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::Graph;

/// Largest `n` the exponential-time oracles accept.
pub const ORACLE_SIZE_CAP: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph on {n} vertices exceeds the oracle cap of {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
}

/// Dense square integer matrix in row-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    a: Vec<i64>,
}

impl IntMatrix {
    pub fn new(n: usize, entries: Vec<i64>) -> IntMatrix {
        assert_eq!(entries.len(), n * n, "entry count must be n^2");
        IntMatrix { n, a: entries }
    }

    /// 0/1 adjacency matrix of `g`.
    pub fn adjacency(g: &Graph) -> IntMatrix {
        let n = g.n();
        let mut a = vec![0i64; n * n];
        for (u, v) in g.edges() {
            a[u * n + v] = 1;
            a[v * n + u] = 1;
        }
        IntMatrix { n, a }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }
}

/// Determinant by the Bareiss fraction-free elimination.  Attempts the whole
/// elimination in `i128` with overflow checks and falls back to arbitrary
/// precision if anything overflows, so the result is always exact.
pub fn det_bareiss(m: &IntMatrix) -> BigInt {
    if let Some(d) = det_bareiss_i128(m) {
        return BigInt::from(d);
    }
    det_bareiss_big(m)
}

fn det_bareiss_i128(m: &IntMatrix) -> Option<i128> {
    let n = m.n;
    if n == 0 {
        return Some(1);
    }
    let mut a: Vec<i128> = m.a.iter().map(|&x| x as i128).collect();
    let at = |a: &[i128], i: usize, j: usize| a[i * n + j];
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if at(&a, k, k) == 0 {
            let swap = (k + 1..n).find(|&i| at(&a, i, k) != 0)?;
            for j in 0..n {
                a.swap(k * n + j, swap * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = at(&a, i, j)
                    .checked_mul(at(&a, k, k))?
                    .checked_sub(at(&a, i, k).checked_mul(at(&a, k, j))?)?;
                a[i * n + j] = num / prev;
            }
            a[i * n + k] = 0;
        }
        prev = at(&a, k, k);
    }
    Some(sign * at(&a, n - 1, n - 1))
}

fn det_bareiss_big(m: &IntMatrix) -> BigInt {
    let n = m.n;
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<BigInt> = m.a.iter().map(|&x| BigInt::from(x)).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&i| !a[i * n + k].is_zero()) {
                Some(swap) => {
                    for j in 0..n {
                        a.swap(k * n + j, swap * n + j);
                    }
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = num / &prev;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = a[k * n + k].clone();
    }
    sign * a[(n - 1) * n + (n - 1)].clone()
}

/// Permanent by Ryser's formula with Gray-code subset updates.  Exponential
/// in `n`, hence the size cap.
pub fn perm_ryser(m: &IntMatrix) -> Result<BigInt, OracleError> {
    let n = m.n;
    if n > ORACLE_SIZE_CAP {
        return Err(OracleError::SizeCapExceeded { n, cap: ORACLE_SIZE_CAP });
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    if let Some(p) = perm_ryser_i128(m) {
        return Ok(BigInt::from(p));
    }
    Ok(perm_ryser_big(m))
}

fn perm_ryser_i128(m: &IntMatrix) -> Option<i128> {
    let n = m.n;
    let mut rows = vec![0i128; n];
    let mut total = 0i128;
    for t in 1u64..1 << n {
        let j = t.trailing_zeros() as usize;
        let gray = (t ^ (t >> 1)) as u32;
        if gray & (1 << j) != 0 {
            for i in 0..n {
                rows[i] = rows[i].checked_add(m.get(i, j) as i128)?;
            }
        } else {
            for i in 0..n {
                rows[i] = rows[i].checked_sub(m.get(i, j) as i128)?;
            }
        }
        let mut prod = 1i128;
        for &r in &rows {
            prod = prod.checked_mul(r)?;
        }
        let term_sign = if gray.count_ones() % 2 == 0 { 1 } else { -1 };
        total = total.checked_add(term_sign * prod)?;
    }
    let outer = if n % 2 == 0 { 1 } else { -1 };
    Some(outer * total)
}

fn perm_ryser_big(m: &IntMatrix) -> BigInt {
    let n = m.n;
    let mut rows = vec![BigInt::zero(); n];
    let mut total = BigInt::zero();
    for t in 1u64..1 << n {
        let j = t.trailing_zeros() as usize;
        let gray = (t ^ (t >> 1)) as u32;
        if gray & (1 << j) != 0 {
            for i in 0..n {
                rows[i] += m.get(i, j);
            }
        } else {
            for i in 0..n {
                rows[i] -= m.get(i, j);
            }
        }
        let mut prod = BigInt::one();
        for r in &rows {
            prod *= r;
        }
        if gray.count_ones() % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    if n % 2 == 0 {
        total
    } else {
        -total
    }
}

/// Independence number by branch and bound over vertex subsets.
pub fn alpha_bruteforce(g: &Graph) -> Result<usize, OracleError> {
    let n = g.n();
    if n > ORACLE_SIZE_CAP {
        return Err(OracleError::SizeCapExceeded { n, cap: ORACLE_SIZE_CAP });
    }
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v).0).collect();

    fn rec(adj: &[u64], mut cand: u64, size: usize, best: &mut usize) {
        if size > *best {
            *best = size;
        }
        while cand != 0 {
            if size + cand.count_ones() as usize <= *best {
                return;
            }
            let v = cand.trailing_zeros() as usize;
            cand &= !(1u64 << v);
            rec(adj, cand & !adj[v], size + 1, best);
        }
    }

    let mut best = 0;
    rec(&adj, if n == 0 { 0 } else { (!0u64) >> (64 - n) }, 0, &mut best);
    Ok(best)
}

/// Matching number by backtracking over edge subsets, independent of the
/// augmenting-path solver.
pub fn mu_bruteforce(g: &Graph) -> Result<usize, OracleError> {
    let n = g.n();
    if n > ORACLE_SIZE_CAP {
        return Err(OracleError::SizeCapExceeded { n, cap: ORACLE_SIZE_CAP });
    }
    let edges = g.edges();

    fn rec(
        edges: &[(usize, usize)],
        n: usize,
        from: usize,
        used: u64,
        size: usize,
        best: &mut usize,
    ) {
        if size > *best {
            *best = size;
        }
        let free = n - used.count_ones() as usize;
        if size + free / 2 <= *best {
            return;
        }
        for j in from..edges.len() {
            let (u, v) = edges[j];
            let bits = 1u64 << u | 1u64 << v;
            if used & bits != 0 {
                continue;
            }
            rec(edges, n, j + 1, used | bits, size + 1, best);
        }
    }

    let mut best = 0;
    rec(&edges, n, 0, 0, 0, &mut best);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_labeled_graphs, Graph};

    fn det_i64(m: &IntMatrix) -> i64 {
        // Cofactor expansion, for cross-checking the elimination on tiny
        // inputs only.
        fn rec(n: usize, a: &[i64], rows: &mut Vec<usize>, col: usize) -> i64 {
            if col == n {
                return 1;
            }
            let mut acc = 0;
            for idx in 0..rows.len() {
                let r = rows.remove(idx);
                let entry = a[r * n + col];
                if entry != 0 {
                    let minor = rec(n, a, rows, col + 1);
                    let sign = if idx % 2 == 0 { 1 } else { -1 };
                    acc += sign * entry * minor;
                }
                rows.insert(idx, r);
            }
            acc
        }
        let mut rows: Vec<usize> = (0..m.n).collect();
        rec(m.n, &m.a, &mut rows, 0)
    }

    fn perm_i64(m: &IntMatrix) -> i64 {
        fn rec(n: usize, a: &[i64], rows: &mut Vec<usize>, col: usize) -> i64 {
            if col == n {
                return 1;
            }
            let mut acc = 0;
            for idx in 0..rows.len() {
                let r = rows.remove(idx);
                let entry = a[r * n + col];
                if entry != 0 {
                    acc += entry * rec(n, a, rows, col + 1);
                }
                rows.insert(idx, r);
            }
            acc
        }
        let mut rows: Vec<usize> = (0..m.n).collect();
        rec(m.n, &m.a, &mut rows, 0)
    }

    fn adjacency_fixtures() -> Vec<(&'static str, Graph, i64, i64)> {
        // (name, graph, det, perm) of the adjacency matrix.
        vec![
            (
                "paw",
                Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap(),
                1,
                1,
            ),
            (
                "c4",
                Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap(),
                0,
                4,
            ),
            (
                "k3",
                Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap(),
                2,
                2,
            ),
            (
                "bowtie",
                Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
                    .unwrap(),
                -4,
                4,
            ),
            (
                "dumbbell",
                Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)])
                    .unwrap(),
                3,
                5,
            ),
            (
                "domino",
                Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (0, 3), (3, 4), (4, 5), (2, 5)])
                    .unwrap(),
                -1,
                9,
            ),
            ("empty", Graph::empty(0).unwrap(), 1, 1),
            ("single", Graph::empty(1).unwrap(), 0, 0),
        ]
    }

    #[test]
    fn determinant_fixtures() {
        for (name, g, det, _) in adjacency_fixtures() {
            assert_eq!(
                det_bareiss(&IntMatrix::adjacency(&g)),
                BigInt::from(det),
                "{name}"
            );
        }
    }

    #[test]
    fn permanent_fixtures() {
        for (name, g, _, perm) in adjacency_fixtures() {
            assert_eq!(
                perm_ryser(&IntMatrix::adjacency(&g)).unwrap(),
                BigInt::from(perm),
                "{name}"
            );
        }
    }

    #[test]
    fn determinant_handles_row_swaps_and_signs() {
        let m = IntMatrix::new(3, vec![0, 1, 0, 1, 0, 0, 0, 0, 1]);
        assert_eq!(det_bareiss(&m), BigInt::from(-1));
        let m = IntMatrix::new(2, vec![0, 0, 0, 7]);
        assert_eq!(det_bareiss(&m), BigInt::from(0));
        let m = IntMatrix::new(3, vec![2, -1, 3, 0, 5, 1, -2, 4, 2]);
        assert_eq!(det_bareiss(&m), BigInt::from(det_i64(&m)));
    }

    #[test]
    fn big_fallback_matches_small_path() {
        // Large entries overflow the i128 elimination and exercise the
        // arbitrary-precision fallback; compare against a scaled identity.
        let s = 1i64 << 62;
        let m = IntMatrix::new(3, vec![s, 0, 0, 0, s, 0, 0, 0, s]);
        let expect = BigInt::from(s) * BigInt::from(s) * BigInt::from(s);
        assert_eq!(det_bareiss(&m), expect);
        assert_eq!(perm_ryser(&m).unwrap(), expect);
    }

    #[test]
    fn oracles_agree_with_naive_expansions_exhaustively() {
        for n in 0..=5 {
            for g in enumerate_labeled_graphs(n).unwrap() {
                let m = IntMatrix::adjacency(&g);
                assert_eq!(det_bareiss(&m), BigInt::from(det_i64(&m)), "{:?}", g);
                assert_eq!(
                    perm_ryser(&m).unwrap(),
                    BigInt::from(perm_i64(&m)),
                    "{:?}",
                    g
                );
            }
        }
    }

    #[test]
    fn alpha_fixtures() {
        let fixtures = adjacency_fixtures();
        let expect = [2usize, 2, 1, 2, 2, 3, 0, 1];
        for ((name, g, _, _), want) in fixtures.into_iter().zip(expect) {
            assert_eq!(alpha_bruteforce(&g).unwrap(), want, "{name}");
        }
    }

    #[test]
    fn mu_fixtures() {
        let fixtures = adjacency_fixtures();
        let expect = [2usize, 2, 1, 2, 3, 3, 0, 0];
        for ((name, g, _, _), want) in fixtures.into_iter().zip(expect) {
            assert_eq!(mu_bruteforce(&g).unwrap(), want, "{name}");
        }
    }

    #[test]
    fn size_caps_are_enforced() {
        let g = Graph::empty(21).unwrap();
        assert_eq!(
            alpha_bruteforce(&g),
            Err(OracleError::SizeCapExceeded { n: 21, cap: 20 })
        );
        assert_eq!(
            mu_bruteforce(&g),
            Err(OracleError::SizeCapExceeded { n: 21, cap: 20 })
        );
        assert_eq!(
            perm_ryser(&IntMatrix::adjacency(&g)),
            Err(OracleError::SizeCapExceeded { n: 21, cap: 20 })
        );
        // The determinant has no cap: polynomial time.
        assert_eq!(det_bareiss(&IntMatrix::adjacency(&g)), BigInt::from(0));
    }

    #[test]
    fn complete_graph_alpha_mu() {
        let mut edges = Vec::new();
        for u in 0..8 {
            for v in u + 1..8 {
                edges.push((u, v));
            }
        }
        let k8 = Graph::from_edges(8, &edges).unwrap();
        assert_eq!(alpha_bruteforce(&k8).unwrap(), 1);
        assert_eq!(mu_bruteforce(&k8).unwrap(), 4);
    }
}
