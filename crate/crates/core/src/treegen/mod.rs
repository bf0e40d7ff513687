//! Spanning trees as characteristic vectors, edge exchanges and their
//! classification, the greedy exchange generator and listing verification.
//!
//! Everything here works in label space: bit `l - 1` of a tree is the edge
//! with label `l`, and exchanges name edges by label.

mod format;
mod greedy;
mod verify;

use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::bits::BitSet;
use crate::embedgraph::{EmbeddedGraph, MultiGraph};
use crate::labeling::EdgeLabeling;
use crate::spanning::RootedTree;

pub use format::{parse_listing, write_listing, ListingFile, ListingParseError};
pub use greedy::{algorithm_g, tiebreak_closest, tiebreak_prefer, GenError, Generator, TieBreak};
pub use verify::{verify_genlex, verify_genlex_brute_force, verify_gray, GrayReport, GrayViolation};

/// A spanning tree as its characteristic vector over labels.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanningTree(BitSet);

impl SpanningTree {
    /// Checks that `bits` selects a spanning tree of `lg`.
    pub fn new(lg: &LabeledGraph, bits: BitSet) -> Option<Self> {
        crate::spanning::is_spanning_tree(&lg.graph, &bits).then_some(SpanningTree(bits))
    }

    /// From a list of labels.
    pub fn from_labels(lg: &LabeledGraph, labels: &[usize]) -> Option<Self> {
        if labels.iter().any(|&l| l == 0 || l > lg.m()) {
            return None;
        }
        Self::new(lg, BitSet::from_positions(lg.m(), labels.iter().map(|l| l - 1)))
    }

    /// The tree taking the smallest labels greedily (Kruskal order).
    pub fn first(lg: &LabeledGraph) -> Option<Self> {
        let mut dsu = crate::spanning::DisjointSets::new(lg.graph.n());
        let mut bits = BitSet::new(lg.m());
        for pos in 0..lg.m() {
            let (u, v) = lg.graph.edge(pos);
            if u != v && dsu.union(u, v) {
                bits.insert(pos);
            }
        }
        Self::new(lg, bits)
    }

    pub(crate) fn from_bits_unchecked(bits: BitSet) -> Self {
        SpanningTree(bits)
    }

    pub fn bits(&self) -> &BitSet {
        &self.0
    }

    pub fn into_bits(self) -> BitSet {
        self.0
    }

    pub fn contains_label(&self, label: usize) -> bool {
        self.0.contains(label - 1)
    }

    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|p| p + 1).collect()
    }

    /// The tree after applying an exchange (not re-validated).
    pub fn apply(&self, ex: Exchange) -> SpanningTree {
        let mut b = self.0.clone();
        b.remove(ex.removed - 1);
        b.insert(ex.added - 1);
        SpanningTree(b)
    }
}

impl fmt::Display for SpanningTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for SpanningTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree{:?}", self.labels())
    }
}

/// Removes the edge labeled `removed` and adds the edge labeled `added`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exchange {
    pub removed: usize,
    pub added: usize,
}

impl Exchange {
    #[inline]
    pub fn larger(self) -> usize {
        self.removed.max(self.added)
    }

    #[inline]
    pub fn smaller(self) -> usize {
        self.removed.min(self.added)
    }

    /// The unordered label pair, smaller first.
    pub fn pair(self) -> (usize, usize) {
        (self.smaller(), self.larger())
    }
}

impl fmt::Display for Exchange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "- {} + {}", self.removed, self.added)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExchangeClass {
    /// The two edges share an end vertex.
    pub pivot: bool,
    /// The two edges lie on a common face, outer face included.
    pub face: bool,
    /// The two edges lie on a common inner face.
    pub face_inner: bool,
}

impl ExchangeClass {
    pub fn paf(self) -> bool {
        self.pivot && self.face
    }

    pub fn pof(self) -> bool {
        self.pivot || self.face
    }

    pub fn names(self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.pivot {
            v.push("pivot");
        }
        if self.face {
            v.push("face");
        }
        if self.face_inner {
            v.push("inner");
        }
        if self.paf() {
            v.push("paf");
        }
        if self.pof() {
            v.push("pof");
        }
        v
    }
}

impl fmt::Display for ExchangeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names().join(" "))
    }
}

/// Exchange restriction used for Gray-code classes and flip-graph edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassFilter {
    Any,
    Pivot,
    Face,
    /// Common inner face only.
    InnerFace,
    Paf,
    Pof,
}

impl ClassFilter {
    pub fn admits(self, c: ExchangeClass) -> bool {
        match self {
            ClassFilter::Any => true,
            ClassFilter::Pivot => c.pivot,
            ClassFilter::Face => c.face,
            ClassFilter::InnerFace => c.face_inner,
            ClassFilter::Paf => c.paf(),
            ClassFilter::Pof => c.pof(),
        }
    }

    /// Whether the filter looks at faces and so needs an embedding.
    pub fn needs_faces(self) -> bool {
        !matches!(self, ClassFilter::Any | ClassFilter::Pivot)
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassFilter::Any => "any",
            ClassFilter::Pivot => "pivot",
            ClassFilter::Face => "face",
            ClassFilter::InnerFace => "inner",
            ClassFilter::Paf => "paf",
            ClassFilter::Pof => "pof",
        }
    }
}

impl FromStr for ClassFilter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "any" => ClassFilter::Any,
            "pivot" => ClassFilter::Pivot,
            "face" => ClassFilter::Face,
            "inner" => ClassFilter::InnerFace,
            "paf" => ClassFilter::Paf,
            "pof" => ClassFilter::Pof,
            _ => return Err(format!("unknown class {s:?} (any|pivot|face|inner|paf|pof)")),
        })
    }
}

impl fmt::Display for ClassFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Faces of one edge as (face, is_inner).
type EdgeFaces = SmallVec<[(usize, bool); 2]>;

/// Classifies pairs of edges given by label.
#[derive(Clone, Debug)]
pub struct Classifier {
    ends: Vec<(usize, usize)>,
    /// Faces per label; `None` without an embedding.
    faces: Option<Vec<EdgeFaces>>,
}

impl Classifier {
    /// Pivot information only.
    pub fn from_graph(g: &MultiGraph, labeling: &EdgeLabeling) -> Self {
        Classifier {
            ends: (1..=g.m()).map(|l| g.edge(labeling.edge(l))).collect(),
            faces: None,
        }
    }

    pub fn from_embedding(e: &EmbeddedGraph, labeling: &EdgeLabeling) -> Self {
        let g = e.graph();
        let faces = (1..=g.m())
            .map(|l| {
                let x = labeling.edge(l);
                let mut v = SmallVec::new();
                if !g.is_loop(x) {
                    let (a, b) = e.faces_of_edge(x);
                    v.push((a, a != e.outer_face()));
                    if b != a {
                        v.push((b, b != e.outer_face()));
                    }
                }
                v
            })
            .collect();
        Classifier {
            ends: (1..=g.m()).map(|l| g.edge(labeling.edge(l))).collect(),
            faces: Some(faces),
        }
    }

    pub fn has_faces(&self) -> bool {
        self.faces.is_some()
    }

    pub fn classify_labels(&self, a: usize, b: usize) -> ExchangeClass {
        let (u, v) = self.ends[a - 1];
        let (x, y) = self.ends[b - 1];
        let pivot = u == x || u == y || v == x || v == y;
        let (face, face_inner) = match &self.faces {
            None => (false, false),
            Some(fs) => {
                let mut face = false;
                let mut inner = false;
                for &(fa, ia) in &fs[a - 1] {
                    for &(fb, _) in &fs[b - 1] {
                        if fa == fb {
                            face = true;
                            inner |= ia;
                        }
                    }
                }
                (face, inner)
            }
        };
        ExchangeClass {
            pivot,
            face,
            face_inner,
        }
    }

    pub fn classify(&self, ex: Exchange) -> ExchangeClass {
        self.classify_labels(ex.removed, ex.added)
    }
}

/// Classifies an exchange of labeled edges of a plane graph.
pub fn classify_exchange(e: &EmbeddedGraph, labeling: &EdgeLabeling, ex: Exchange) -> ExchangeClass {
    Classifier::from_embedding(e, labeling).classify(ex)
}

/// A multigraph with its edges reordered by label: edge `l - 1` of `graph`
/// is the original edge labeled `l`.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    pub graph: MultiGraph,
    pub labeling: EdgeLabeling,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl LabeledGraph {
    pub fn new(g: &MultiGraph, labeling: &EdgeLabeling) -> Self {
        assert_eq!(g.m(), labeling.m(), "labeling size does not match the graph");
        let edges = (1..=g.m()).map(|l| g.edge(labeling.edge(l))).collect();
        let graph = MultiGraph::new(g.n(), edges).unwrap();
        let adjacency = graph.adjacency();
        LabeledGraph {
            graph,
            labeling: labeling.clone(),
            adjacency,
        }
    }

    pub fn m(&self) -> usize {
        self.graph.m()
    }

    pub fn adjacency(&self) -> &[Vec<(usize, usize)>] {
        &self.adjacency
    }

    /// Tree bits over labels from bits over original edge ids.
    pub fn tree_from_edge_ids(&self, ids: &BitSet) -> Option<SpanningTree> {
        SpanningTree::new(
            self,
            BitSet::from_positions(self.m(), ids.iter().map(|e| self.labeling.label(e) - 1)),
        )
    }

    /// Appends every valid exchange of `tree` to `out`, grouped by non-tree
    /// edge. For each non-loop edge `f` outside the tree, each edge `e` on the
    /// tree path between the ends of `f` gives the exchange `- e + f`.
    pub fn exchanges_into(&self, tree: &SpanningTree, out: &mut Vec<Exchange>) {
        let rt = RootedTree::new(&self.graph, &self.adjacency, tree.bits());
        for pos in 0..self.m() {
            if tree.bits().contains(pos) {
                continue;
            }
            let (u, v) = self.graph.edge(pos);
            if u == v {
                continue;
            }
            for e in rt.path(u, v) {
                out.push(Exchange {
                    removed: e + 1,
                    added: pos + 1,
                });
            }
        }
    }
}

/// All valid exchanges of `tree` under `labeling`.
pub fn valid_exchanges(g: &MultiGraph, labeling: &EdgeLabeling, tree: &SpanningTree) -> Vec<Exchange> {
    let lg = LabeledGraph::new(g, labeling);
    let mut out = Vec::new();
    lg.exchanges_into(tree, &mut out);
    out
}

/// Whether `bits` (indexed by edge id) is a spanning tree of `g`.
pub fn is_spanning_tree(g: &MultiGraph, bits: &BitSet) -> bool {
    crate::spanning::is_spanning_tree(g, bits)
}

/// Consecutive trees with the exchange applied between them.
#[derive(Clone, Debug)]
pub struct Listing {
    pub labeling: EdgeLabeling,
    pub initial: SpanningTree,
    pub trees: Vec<SpanningTree>,
    pub steps: Vec<(Exchange, ExchangeClass)>,
}

impl Listing {
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn bits(&self) -> Vec<BitSet> {
        self.trees.iter().map(|t| t.bits().clone()).collect()
    }

    /// Whether every step belongs to the given class.
    pub fn all_steps(&self, filter: ClassFilter) -> bool {
        self.steps.iter().all(|&(_, c)| filter.admits(c))
    }
}
