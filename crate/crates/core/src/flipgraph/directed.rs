use std::collections::HashMap;

use crate::bits::BitSet;

use super::{FlipError, FlipGraph, Restriction, MAX_TREES};

/// Directed multigraph; arcs run `tail -> head`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize, arcs: Vec<(usize, usize)>) -> Self {
        assert!(arcs.iter().all(|&(a, b)| a < n && b < n), "arc endpoint out of range");
        Digraph { n, arcs }
    }

    /// The underlying undirected multigraph.
    pub fn underlying(&self) -> crate::embedgraph::MultiGraph {
        crate::embedgraph::MultiGraph::new(self.n, self.arcs.clone()).unwrap()
    }

    fn in_arcs(&self, root: usize) -> Vec<Vec<usize>> {
        let mut ins = vec![Vec::new(); self.n];
        for (i, &(a, b)) in self.arcs.iter().enumerate() {
            if a != b && b != root {
                ins[b].push(i);
            }
        }
        ins
    }
}

/// Arc set of a spanning tree directed away from `root`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arborescence {
    pub arcs: BitSet,
    pub root: usize,
}

fn reaches_all(d: &Digraph, root: usize, arcs: &BitSet) -> bool {
    let mut out = vec![Vec::new(); d.n];
    for i in arcs.iter() {
        let (a, b) = d.arcs[i];
        out[a].push(b);
    }
    let mut seen = vec![false; d.n];
    seen[root] = true;
    let mut stack = vec![root];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in &out[u] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == d.n
}

/// All arborescences of `d` rooted at `root`: one in-arc per non-root vertex,
/// kept when every vertex is reachable from the root.
pub fn enumerate_arborescences(d: &Digraph, root: usize) -> Result<Vec<Arborescence>, FlipError> {
    let ins = d.in_arcs(root);
    let others: Vec<usize> = (0..d.n).filter(|&v| v != root).collect();
    if others.iter().any(|&v| ins[v].is_empty()) {
        return Ok(Vec::new());
    }
    let product = others
        .iter()
        .try_fold(1u64, |acc, &v| acc.checked_mul(ins[v].len() as u64));
    if product.is_none_or(|p| p > MAX_TREES * 16) {
        return Err(FlipError::TooLarge(product.map_or_else(|| u64::MAX.into(), Into::into)));
    }
    let mut choice = vec![0usize; others.len()];
    let mut out = Vec::new();
    loop {
        let arcs = BitSet::from_positions(d.arcs.len(), others.iter().zip(&choice).map(|(&v, &c)| ins[v][c]));
        if reaches_all(d, root, &arcs) {
            out.push(Arborescence { arcs, root });
        }
        // odometer over the in-arc choices
        let mut k = 0;
        loop {
            if k == others.len() {
                return Ok(out);
            }
            choice[k] += 1;
            if choice[k] < ins[others[k]].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Arborescences adjacent when they differ in the in-arc of one vertex.
pub fn arborescence_flip_graph(d: &Digraph, root: usize) -> Result<FlipGraph, FlipError> {
    let arbs = enumerate_arborescences(d, root)?;
    let ins = d.in_arcs(root);
    let index: HashMap<&BitSet, usize> = arbs.iter().enumerate().map(|(i, a)| (&a.arcs, i)).collect();
    let mut edges = Vec::new();
    for (i, a) in arbs.iter().enumerate() {
        for x in a.arcs.iter() {
            let head = d.arcs[x].1;
            for &y in &ins[head] {
                if y == x {
                    continue;
                }
                let mut b = a.arcs.clone();
                b.remove(x);
                b.insert(y);
                if let Some(&j) = index.get(&b) {
                    if i < j {
                        edges.push((i, j, (x.min(y) + 1, x.max(y) + 1)));
                    }
                }
            }
        }
    }
    let nodes = arbs.into_iter().map(|a| a.arcs).collect();
    Ok(FlipGraph::from_edges(nodes, edges, Restriction::ArcExchange))
}
