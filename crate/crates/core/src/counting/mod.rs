//! Exact spanning-tree counts, Fibonacci numbers and the Fibonacci upper
//! bound for outerplane multigraphs.

mod enumerate;

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::dualtree::{is_path_graph, weak_dual};
use crate::embedgraph::{build_embedding, EmbeddedGraph, MultiGraph, TriangulationMode};

pub use enumerate::{block_joins, canonical_outerplane_key, enumerate_outerplane, OuterplaneGraph, OuterplaneSpec};

pub type BigCount = BigUint;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("a path of faces has at most two ends, got {0} digon ends")]
    TooManyDigons(usize),
    #[error("need at least one triangle")]
    NoFaces,
}

/// Memoized Fibonacci numbers `f_0 = 0, f_1 = 1, f_{k+1} = f_k + f_{k-1}`.
#[derive(Clone, Debug)]
pub struct FibTable {
    values: Vec<BigUint>,
}

impl Default for FibTable {
    fn default() -> Self {
        FibTable {
            values: vec![BigUint::zero(), BigUint::one()],
        }
    }
}

impl FibTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, k: usize) -> &BigUint {
        while self.values.len() <= k {
            let n = self.values.len();
            let next = &self.values[n - 1] + &self.values[n - 2];
            self.values.push(next);
        }
        &self.values[k]
    }
}

pub fn fib(k: usize) -> BigCount {
    FibTable::new().get(k).clone()
}

/// Determinant of the reduced Laplacian by fraction-free elimination.
/// Parallel edges add multiplicity and loops are ignored; disconnected
/// graphs yield 0.
pub fn count_matrix_tree(g: &MultiGraph) -> BigCount {
    let n = g.n();
    if n == 0 {
        return BigUint::zero();
    }
    let size = n - 1;
    let mut a = vec![vec![BigInt::zero(); size]; size];
    for &(u, v) in g.edges() {
        if u == v {
            continue;
        }
        if u < size {
            a[u][u] += 1;
        }
        if v < size {
            a[v][v] += 1;
        }
        if u < size && v < size {
            a[u][v] -= 1;
            a[v][u] -= 1;
        }
    }
    let det = bareiss_determinant(a);
    match det.sign() {
        Sign::Minus => panic!("Laplacian minor has negative determinant {det}"),
        _ => det.to_biguint().unwrap(),
    }
}

fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Deletion-contraction `t(G) = t(G - e) + t(G / e)` with loops dropped as
/// they appear and a memo keyed on a relabeled edge multiset.
pub fn count_del_contract(g: &MultiGraph) -> BigCount {
    if g.n() == 0 {
        return BigUint::zero();
    }
    let edges: Vec<(usize, usize)> = g.edges().iter().copied().filter(|&(u, v)| u != v).collect();
    let mut memo = HashMap::new();
    del_contract(g.n(), edges, &mut memo)
}

type MemoKey = (usize, Vec<(usize, usize)>);

fn canonical_key(n: usize, edges: &[(usize, usize)]) -> MemoKey {
    let mut deg = vec![0usize; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
    let mut relabel = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        relabel[v] = i;
    }
    let mut out: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (relabel[u], relabel[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    out.sort_unstable();
    (n, out)
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

fn del_contract(n: usize, edges: Vec<(usize, usize)>, memo: &mut HashMap<MemoKey, BigUint>) -> BigUint {
    if n == 1 {
        return BigUint::one();
    }
    if edges.len() + 1 < n || !is_connected(n, &edges) {
        return BigUint::zero();
    }
    let key = canonical_key(n, &edges);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let (_, canon) = &key;
    let (a, b) = canon[0];
    let deleted: Vec<(usize, usize)> = canon[1..].to_vec();
    // merge b into a, shift vertices above b down, drop new loops
    let squash = |x: usize| {
        let x = if x == b { a } else { x };
        if x > b {
            x - 1
        } else {
            x
        }
    };
    let contracted: Vec<(usize, usize)> = canon[1..]
        .iter()
        .map(|&(u, v)| (squash(u), squash(v)))
        .filter(|&(u, v)| u != v)
        .collect();
    let total = del_contract(n, deleted, memo) + del_contract(n - 1, contracted, memo);
    memo.insert(key, total.clone());
    total
}

/// Whether a plane multigraph has every digon sharing an edge with the
/// outer face.
pub fn digons_touch_outer(e: &EmbeddedGraph) -> bool {
    e.inner_faces()
        .filter(|f| f.len() == 2)
        .all(|f| f.edges().any(|x| e.on_outer_face(x)))
}

/// Structural equality predicate of the Fibonacci bound: a triangulation
/// (inner faces of length at most 3) whose weak dual is a path and whose
/// digons all touch the outer face. The path condition includes
/// 2-connectivity.
pub fn extremal_predicate(e: &EmbeddedGraph) -> bool {
    e.graph().is_two_connected()
        && e.is_triangulation(TriangulationMode::Multigraph)
        && is_path_graph(&weak_dual(e))
        && digons_touch_outer(e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibReport {
    /// Number of non-loop edges.
    pub m: usize,
    pub trees: BigCount,
    /// `f_{m+1}`.
    pub bound: BigCount,
    pub equality: bool,
    pub predicate: bool,
}

impl FibReport {
    /// Bound holds and equality occurs exactly when the predicate holds.
    pub fn consistent(&self) -> bool {
        self.trees <= self.bound && self.equality == self.predicate
    }
}

impl fmt::Display for FibReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        write!(
            f,
            "t={} bound=f_{}={} equality={} predicate={}",
            self.trees,
            self.m + 1,
            self.bound,
            yn(self.equality),
            yn(self.predicate)
        )
    }
}

/// Evaluates `t(G) <= f_{m+1}` and the equality characterization. Loops do
/// not count towards `m`.
pub fn check_fib_bound(e: &EmbeddedGraph) -> FibReport {
    let m = e.graph().non_loop_count();
    let trees = count_matrix_tree(e.graph());
    let bound = fib(m + 1);
    FibReport {
        m,
        equality: trees == bound,
        trees,
        bound,
        predicate: extremal_predicate(e),
    }
}

/// A fan-shaped triangulation with `triangles` triangles in a row, plus a
/// digon glued to an outer edge of each of `digon_ends` end triangles.
pub fn extremal_family(triangles: usize, digon_ends: usize) -> Result<EmbeddedGraph, FamilyError> {
    if digon_ends > 2 {
        return Err(FamilyError::TooManyDigons(digon_ends));
    }
    if triangles == 0 {
        return Err(FamilyError::NoFaces);
    }
    let n = triangles + 2;
    let mut edges = Vec::new();
    for i in 1..n {
        edges.push((0, i));
        if i + 1 < n {
            edges.push((i, i + 1));
        }
    }
    if digon_ends >= 1 {
        edges.push((0, 1));
    }
    if digon_ends == 2 {
        // the last triangle's outer path edge; for a single triangle this is
        // a different side than 0-1
        edges.push((n - 2, n - 1));
    }
    let g = MultiGraph::new(n, edges).unwrap();
    let order: Vec<usize> = (0..n).collect();
    Ok(build_embedding(&g, &order).expect("fans are outerplane"))
}

/// Checks `f_i * f_j <= f_{i+j-1}` with equality exactly when `i == 1` or
/// `j == 1`.
pub fn check_fib_product(i: usize, j: usize) -> bool {
    assert!(i >= 1 && j >= 1);
    let mut t = FibTable::new();
    let lhs = t.get(i).clone() * t.get(j);
    let rhs = t.get(i + j - 1).clone();
    lhs <= rhs && ((lhs == rhs) == (i == 1 || j == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedgraph::named;

    #[test]
    fn fibonacci_values() {
        assert_eq!(fib(0), BigUint::from(0u32));
        assert_eq!(fib(1), BigUint::from(1u32));
        assert_eq!(fib(8), BigUint::from(21u32));
        assert_eq!(fib(10), BigUint::from(55u32));
        let mut t = FibTable::new();
        for k in 2..200 {
            let want = t.get(k - 1).clone() + t.get(k - 2);
            assert_eq!(t.get(k), &want);
        }
    }

    #[test]
    fn matrix_tree_counts() {
        assert_eq!(count_matrix_tree(&named::triangle().0), BigUint::from(3u32));
        assert_eq!(count_matrix_tree(&named::diamond().0), BigUint::from(8u32));
        for k in 1..8 {
            assert_eq!(count_matrix_tree(&named::parallel(k).0), BigUint::from(k));
        }
        assert_eq!(count_matrix_tree(&named::complete(5)), BigUint::from(125u32));
        let disconnected = MultiGraph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert!(count_matrix_tree(&disconnected).is_zero());
        let with_loop = MultiGraph::new(3, vec![(0, 0), (0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(count_matrix_tree(&with_loop), BigUint::from(3u32));
    }

    #[test]
    fn del_contract_counts() {
        assert_eq!(count_del_contract(&named::parallel(2).0), BigUint::from(2u32));
        assert_eq!(count_del_contract(&named::fan(5).0), BigUint::from(21u32));
        assert_eq!(count_del_contract(&named::fan(6).0), BigUint::from(55u32));
        assert_eq!(count_del_contract(&named::complete(5)), BigUint::from(125u32));
        assert_eq!(count_del_contract(&named::diamond().0), BigUint::from(8u32));
    }

    #[test]
    fn fib_bound_cases() {
        let (g, o) = named::fan(6);
        let r = check_fib_bound(&build_embedding(&g, &o).unwrap());
        assert!(r.equality && r.predicate && r.consistent());
        assert_eq!(r.to_string(), "t=55 bound=f_10=55 equality=yes predicate=yes");

        let (g, o) = named::cycle(4);
        let r = check_fib_bound(&build_embedding(&g, &o).unwrap());
        assert_eq!(r.to_string(), "t=4 bound=f_5=5 equality=no predicate=no");

        // central triangle with three ears: weak dual is a star
        let g = MultiGraph::new(
            6,
            vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 2), (2, 4), (4, 0)],
        )
        .unwrap();
        let r = check_fib_bound(&build_embedding(&g, &[0, 1, 2, 3, 4, 5]).unwrap());
        assert!(!r.equality && !r.predicate && r.consistent());
        assert!(r.trees < r.bound);
    }

    #[test]
    fn extremal_family_members() {
        for k in 1..7 {
            for d in 0..=2 {
                let e = extremal_family(k, d).unwrap();
                let r = check_fib_bound(&e);
                assert!(r.equality && r.predicate, "k={k} d={d}: {r}");
            }
        }
        let tri = extremal_family(1, 0).unwrap();
        assert_eq!(check_fib_bound(&tri).trees, BigUint::from(3u32));
        let pair = extremal_family(1, 1).unwrap();
        assert_eq!(pair.graph().m(), 4);
        assert_eq!(check_fib_bound(&pair).trees, fib(5));
        assert_eq!(extremal_family(2, 3).unwrap_err(), FamilyError::TooManyDigons(3));
    }

    #[test]
    fn fib_product_lemma() {
        assert!(check_fib_product(1, 7));
        assert!(check_fib_product(2, 2));
        for i in 1..=30 {
            for j in 1..=30 {
                assert!(check_fib_product(i, j), "{i} {j}");
            }
        }
    }
}
