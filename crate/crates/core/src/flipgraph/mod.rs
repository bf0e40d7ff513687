//! Brute-force oracles: all spanning trees and arborescences, flip graphs
//! under exchange restrictions, Hamilton search on them, small-graph
//! enumeration and the open-problem experiments.

mod directed;
mod experiment;
mod hamilton;
mod small;

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use thiserror::Error;

use crate::bits::BitSet;
use crate::counting::count_matrix_tree;
use crate::embedgraph::{EmbeddedGraph, MultiGraph};
use crate::labeling::EdgeLabeling;
use crate::spanning::DisjointSets;
use crate::treegen::{ClassFilter, Classifier, LabeledGraph, SpanningTree};

pub use directed::{arborescence_flip_graph, enumerate_arborescences, Arborescence, Digraph};
pub use experiment::{experiment_open_problems, Experiment, ExperimentRecord, ExperimentReport, Outcome, Scope};
pub use hamilton::{hamilton_path, is_hamilton, Budget, HamiltonOutcome};
pub use small::{canonical_form, enumerate_small_digraphs, enumerate_small_graphs, outerplane_order, SmallFilter};

/// Largest tree count the brute-force enumerators will produce.
pub const MAX_TREES: u64 = 2_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FlipError {
    #[error("graph has {0} spanning trees, more than the brute-force limit; use the greedy generator instead")]
    TooLarge(BigUint),
    #[error("restriction {0} needs an embedding")]
    NeedsEmbedding(ClassFilter),
    #[error("small-graph enumeration supports n <= 7, got {0}")]
    SizeGuard(usize),
}

/// All spanning trees of `g` as bit sets over edge ids, in lexicographic
/// order of inclusion (lower edge ids chosen first).
pub fn enumerate_spanning_trees(g: &MultiGraph) -> Result<Vec<BitSet>, FlipError> {
    let count = count_matrix_tree(g);
    if count > BigUint::from(MAX_TREES) {
        return Err(FlipError::TooLarge(count));
    }
    let mut out = Vec::new();
    if g.n() == 0 {
        return Ok(out);
    }
    let mut chosen = BitSet::new(g.m());
    extend(g, 0, &mut chosen, 0, &mut out);
    Ok(out)
}

fn extend(g: &MultiGraph, pos: usize, chosen: &mut BitSet, size: usize, out: &mut Vec<BitSet>) {
    if size + 1 == g.n() {
        out.push(chosen.clone());
        return;
    }
    if pos == g.m() {
        return;
    }
    // can chosen + remaining edges still connect everything?
    let mut dsu = DisjointSets::new(g.n());
    let mut parts = g.n();
    for e in chosen.iter().chain(pos..g.m()) {
        let (u, v) = g.edge(e);
        if dsu.union(u, v) {
            parts -= 1;
        }
    }
    if parts > 1 {
        return;
    }
    let (u, v) = g.edge(pos);
    if u != v {
        let mut dsu = DisjointSets::new(g.n());
        let acyclic = chosen.iter().all(|e| {
            let (a, b) = g.edge(e);
            dsu.union(a, b)
        }) && dsu.union(u, v);
        if acyclic {
            chosen.insert(pos);
            extend(g, pos + 1, chosen, size + 1, out);
            chosen.remove(pos);
        }
    }
    extend(g, pos + 1, chosen, size, out);
}

/// Edge restriction of a flip graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Restriction {
    Class(ClassFilter),
    /// Arborescences: the two arcs share their head.
    ArcExchange,
}

/// Graph on spanning trees (or arborescences), adjacent when they differ in
/// one permitted exchange.
#[derive(Clone, Debug)]
pub struct FlipGraph {
    /// Node bit sets; label space for spanning trees, arc ids for
    /// arborescences.
    pub nodes: Vec<BitSet>,
    /// `(a, b, {x, y})` with `a < b`, `x < y` the 1-based exchanged labels.
    pub edges: Vec<(usize, usize, (usize, usize))>,
    pub restriction: Restriction,
    adj: Vec<Vec<usize>>,
}

impl FlipGraph {
    pub(crate) fn from_edges(
        nodes: Vec<BitSet>,
        mut edges: Vec<(usize, usize, (usize, usize))>,
        restriction: Restriction,
    ) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); nodes.len()];
        for &(a, b, _) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        FlipGraph {
            nodes,
            edges,
            restriction,
            adj,
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    pub fn index_of(&self, bits: &BitSet) -> Option<usize> {
        self.nodes.iter().position(|x| x == bits)
    }

    /// Graphviz rendering; nodes show their bit vector, edges the exchanged
    /// pair.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph flip {\n");
        for (i, b) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  {i} [label=\"{b}\"];");
        }
        for &(a, b, (x, y)) in &self.edges {
            let _ = writeln!(s, "  {a} -- {b} [label=\"{{{x},{y}}}\"];");
        }
        s.push_str("}\n");
        s
    }

    /// `nodes N`, one line per node, `edges M`, one `a b x y` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "nodes {}", self.nodes.len());
        for (i, b) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "{i} {b}");
        }
        let _ = writeln!(s, "edges {}", self.edges.len());
        for &(a, b, (x, y)) in &self.edges {
            let _ = writeln!(s, "{a} {b} {x} {y}");
        }
        s
    }
}

/// Flip graph of `g` with nodes in label space. Face restrictions need
/// `embedding`.
pub fn build_flip_graph(
    g: &MultiGraph,
    embedding: Option<&EmbeddedGraph>,
    labeling: &EdgeLabeling,
    restriction: ClassFilter,
) -> Result<FlipGraph, FlipError> {
    let classifier = match embedding {
        Some(e) => Classifier::from_embedding(e, labeling),
        None if restriction.needs_faces() => return Err(FlipError::NeedsEmbedding(restriction)),
        None => Classifier::from_graph(g, labeling),
    };
    let lg = LabeledGraph::new(g, labeling);
    let nodes: Vec<BitSet> = enumerate_spanning_trees(g)?
        .iter()
        .map(|t| {
            lg.tree_from_edge_ids(t)
                .expect("enumerated trees are spanning")
                .into_bits()
        })
        .collect();
    let index: HashMap<&BitSet, usize> = nodes.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut edges = Vec::new();
    let mut buf = Vec::new();
    for (i, b) in nodes.iter().enumerate() {
        buf.clear();
        let t = SpanningTree::from_bits_unchecked(b.clone());
        lg.exchanges_into(&t, &mut buf);
        for &ex in &buf {
            if !restriction.admits(classifier.classify(ex)) {
                continue;
            }
            let j = index[t.apply(ex).bits()];
            if i < j {
                edges.push((i, j, ex.pair()));
            }
        }
    }
    Ok(FlipGraph::from_edges(nodes, edges, Restriction::Class(restriction)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedgraph::{build_embedding, named};

    #[test]
    fn tree_counts() {
        assert_eq!(enumerate_spanning_trees(&named::diamond().0).unwrap().len(), 8);
        assert_eq!(enumerate_spanning_trees(&named::fan(5).0).unwrap().len(), 21);
        assert_eq!(enumerate_spanning_trees(&named::triangle().0).unwrap().len(), 3);
        assert_eq!(enumerate_spanning_trees(&named::parallel(4).0).unwrap().len(), 4);
        let g = MultiGraph::new(3, vec![(0, 1), (1, 1)]).unwrap();
        assert!(enumerate_spanning_trees(&g).unwrap().is_empty());
    }

    #[test]
    fn guard_trips_on_large_graphs() {
        let g = named::complete(10);
        assert!(matches!(enumerate_spanning_trees(&g), Err(FlipError::TooLarge(_))));
    }

    #[test]
    fn diamond_flip_graphs() {
        let (g, order) = named::diamond();
        let e = build_embedding(&g, &order).unwrap();
        let l = EdgeLabeling::identity(5);
        let any = build_flip_graph(&g, Some(&e), &l, ClassFilter::Any).unwrap();
        assert_eq!(any.node_count(), 8);
        let pivot = build_flip_graph(&g, None, &l, ClassFilter::Pivot).unwrap();
        let dropped: Vec<_> = any
            .edges
            .iter()
            .filter(|x| !pivot.edges.contains(x))
            .map(|x| x.2)
            .collect();
        assert!(!dropped.is_empty());
        assert!(dropped.iter().all(|&p| p == (1, 5) || p == (2, 4)));
        assert!(pivot.edges.iter().all(|x| x.2 != (1, 5) && x.2 != (2, 4)));
        assert_eq!(
            build_flip_graph(&g, None, &l, ClassFilter::Face).unwrap_err(),
            FlipError::NeedsEmbedding(ClassFilter::Face)
        );
    }

    #[test]
    fn triangle_flip_graph_is_a_triangle() {
        let (g, order) = named::triangle();
        let e = build_embedding(&g, &order).unwrap();
        let fg = build_flip_graph(&g, Some(&e), &EdgeLabeling::identity(3), ClassFilter::Paf).unwrap();
        assert_eq!((fg.node_count(), fg.edge_count()), (3, 3));
        assert!(fg.to_dot().contains("label=\"{1,2}\""));
    }
}
