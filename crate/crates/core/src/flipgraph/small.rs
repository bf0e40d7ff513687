use std::collections::HashSet;

use itertools::Itertools;

use super::{Digraph, FlipError};
use crate::embedgraph::MultiGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmallFilter {
    All,
    TwoConnected,
    /// Has a vertex order on a circle with no crossing edges.
    Outerplane,
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).tuple_combinations().collect()
}

/// Smallest edge bit mask over all vertex permutations.
pub fn canonical_form(n: usize, edges: &[(usize, usize)]) -> u64 {
    let ps = pairs(n);
    let bit = |a: usize, b: usize| ps.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
    (0..n)
        .permutations(n)
        .map(|perm| edges.iter().fold(0u64, |m, &(a, b)| m | 1 << bit(perm[a], perm[b])))
        .min()
        .unwrap_or(0)
}

fn crossing(order_pos: &[usize], edges: &[(usize, usize)]) -> bool {
    let chords: Vec<(usize, usize)> = edges
        .iter()
        .filter(|(a, b)| a != b)
        .map(|&(a, b)| {
            let (x, y) = (order_pos[a], order_pos[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    chords
        .iter()
        .tuple_combinations()
        .any(|(&(a, b), &(c, d))| (a < c && c < b && b < d) || (c < a && a < d && d < b))
}

/// A cyclic vertex order in which no two edges cross, if one exists. Vertex
/// 0 comes first; the first order found in lexicographic order is returned.
pub fn outerplane_order(g: &MultiGraph) -> Option<Vec<usize>> {
    let n = g.n();
    if n <= 3 {
        return Some((0..n).collect());
    }
    let mut pos = vec![0; n];
    for rest in (1..n).permutations(n - 1) {
        let order: Vec<usize> = std::iter::once(0).chain(rest).collect();
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        if !crossing(&pos, g.edges()) {
            return Some(order);
        }
    }
    None
}

/// Simple graphs on `n` labeled vertices, one per edge subset of `K_n`, in
/// order of subset mask, filtered and optionally reduced to one graph per
/// isomorphism class.
pub fn enumerate_small_graphs(n: usize, filter: SmallFilter, dedup: bool) -> Result<Vec<MultiGraph>, FlipError> {
    if n > 7 {
        return Err(FlipError::SizeGuard(n));
    }
    let ps = pairs(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << ps.len() {
        let edges: Vec<(usize, usize)> = (0..ps.len()).filter(|&i| mask >> i & 1 == 1).map(|i| ps[i]).collect();
        let g = MultiGraph::new(n, edges).unwrap();
        let keep = match filter {
            SmallFilter::All => true,
            SmallFilter::TwoConnected => n >= 2 && g.is_two_connected(),
            SmallFilter::Outerplane => outerplane_order(&g).is_some(),
        };
        if !keep || (dedup && !seen.insert(canonical_form(n, g.edges()))) {
            continue;
        }
        out.push(g);
    }
    Ok(out)
}

fn canonical_digraph(n: usize, arcs: &[(usize, usize)]) -> u64 {
    (0..n)
        .permutations(n)
        .map(|perm| arcs.iter().fold(0u64, |m, &(a, b)| m | 1 << (perm[a] * n + perm[b])))
        .min()
        .unwrap_or(0)
}

/// Digraphs without loops or repeated arcs on `n` vertices whose underlying
/// graph is 2-connected, one per isomorphism class when `dedup` is set.
/// Opposite arcs between the same pair are allowed.
pub fn enumerate_small_digraphs(n: usize, dedup: bool) -> Result<Vec<Digraph>, FlipError> {
    if n > 5 {
        return Err(FlipError::SizeGuard(n));
    }
    let ordered: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << ordered.len() {
        let arcs: Vec<(usize, usize)> = (0..ordered.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| ordered[i])
            .collect();
        let d = Digraph::new(n, arcs);
        if n < 2 || !d.underlying().is_two_connected() {
            continue;
        }
        if dedup && !seen.insert(canonical_digraph(n, &d.arcs)) {
            continue;
        }
        out.push(d);
    }
    Ok(out)
}
