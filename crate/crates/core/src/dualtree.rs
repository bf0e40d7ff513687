//! Duals of outerplane graphs and the labelings derived from them.
//!
//! The split dual replaces the outer-face vertex of the dual by one leaf per
//! outer edge, which turns the dual of a 2-connected outerplane graph into a
//! tree. Rooting that tree at a leaf and numbering its edges in depth-first
//! order, visiting the children of every face counterclockwise, gives the
//! dual-tree labeling. Faces and vertices then see their edges in a
//! constrained label order, which [`check_lemma_labels`] and
//! [`check_lemma_neighbors`] verify, and which [`alternative_pof_exchange`]
//! exploits to trade any exchange for a pivot or face exchange.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::bits::BitSet;
use crate::embedgraph::{blocks, build_embedding, Dart, EmbedError, EmbeddedGraph, MultiGraph, TriangulationMode};
use crate::labeling::EdgeLabeling;
use crate::spanning::{fundamental_path, is_spanning_tree};
use crate::treegen::Exchange;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DualError {
    #[error("graph is not 2-connected; label its blocks separately")]
    NotTwoConnected,
    #[error("graph has no edges")]
    NoEdges,
    #[error("node {0} is not a leaf of the split dual")]
    RootNotLeaf(usize),
    #[error("leaf index {index} out of range ({leaves} leaves)")]
    LeafOutOfRange { index: usize, leaves: usize },
    #[error("block embedding failed: {0}")]
    Block(#[from] EmbedError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExchangeError {
    #[error("exchange {0} is not valid for the given tree")]
    Invalid(Exchange),
    #[error("exchange {0} involves the root edge and has no smaller partner")]
    RootEdge(Exchange),
    #[error("constructed alternative {alt} for {ex} is not a valid exchange")]
    Construction { ex: Exchange, alt: Exchange },
}

/// The split dual of a 2-connected outerplane graph. Nodes `0..faces` are the
/// inner faces; the remaining nodes are leaves, one per outer edge, listed in
/// counterclockwise order starting with the default root.
#[derive(Clone, Debug)]
pub struct SplitDual {
    m: usize,
    inner: usize,
    node_face: Vec<Option<usize>>,
    leaf_dart: Vec<Dart>,
    dart_node: Vec<usize>,
    node_edges: Vec<Vec<usize>>,
}

impl SplitDual {
    pub fn node_count(&self) -> usize {
        self.node_edges.len()
    }

    pub fn edge_count(&self) -> usize {
        self.node_edges.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn inner_count(&self) -> usize {
        self.inner
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_dart.len()
    }

    /// Node id of leaf number `index`.
    pub fn leaf(&self, index: usize) -> Result<usize, DualError> {
        if index < self.leaf_count() {
            Ok(self.inner + index)
        } else {
            Err(DualError::LeafOutOfRange {
                index,
                leaves: self.leaf_count(),
            })
        }
    }

    pub fn is_leaf(&self, node: usize) -> bool {
        node >= self.inner && node < self.node_count()
    }

    /// The outer dart a leaf was split off for.
    pub fn leaf_dart(&self, node: usize) -> Dart {
        self.leaf_dart[node - self.inner]
    }

    /// Face id of an inner-face node.
    pub fn face(&self, node: usize) -> Option<usize> {
        self.node_face[node]
    }

    /// Primal edges incident to a node, counterclockwise around it.
    pub fn node_edges(&self, node: usize) -> &[usize] {
        &self.node_edges[node]
    }

    /// Node on the left of a dart.
    pub fn dart_node(&self, d: Dart) -> usize {
        self.dart_node[d.index()]
    }

    /// The two split-dual endpoints of the edge dual to primal edge `e`.
    pub fn ends(&self, e: usize) -> (usize, usize) {
        let d = Dart { edge: e, forward: true };
        (self.dart_node(d), self.dart_node(d.reversed()))
    }

    fn other_end(&self, e: usize, node: usize) -> usize {
        let (a, b) = self.ends(e);
        if a == node {
            b
        } else {
            a
        }
    }

    /// Whether the split dual is a tree (connected and acyclic).
    pub fn is_tree(&self) -> bool {
        let nodes = self.node_count();
        if nodes == 0 || self.edge_count() + 1 != nodes {
            return false;
        }
        let mut seen = vec![false; nodes];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &e in &self.node_edges[x] {
                let y = self.other_end(e, x);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == nodes
    }

    /// Number of primal edges (including loops) of the underlying graph.
    pub fn primal_edge_count(&self) -> usize {
        self.m
    }
}

/// The weak dual: one node per inner face, one edge per primal edge between
/// two inner faces.
pub fn weak_dual(e: &EmbeddedGraph) -> MultiGraph {
    let mut node = vec![usize::MAX; e.faces().len()];
    let mut k = 0;
    for f in e.inner_faces() {
        node[f.id] = k;
        k += 1;
    }
    let g = e.graph();
    let edges = (0..g.m())
        .filter(|&x| !g.is_loop(x))
        .filter_map(|x| {
            let (a, b) = e.faces_of_edge(x);
            (a != e.outer_face() && b != e.outer_face() && a != b).then(|| (node[a], node[b]))
        })
        .collect();
    MultiGraph::new(k, edges).unwrap()
}

/// Whether a graph is a path (a single node counts; the empty graph counts).
pub fn is_path_graph(g: &MultiGraph) -> bool {
    if g.n() == 0 {
        return true;
    }
    if g.m() + 1 != g.n() || !g.is_connected() {
        return false;
    }
    let mut deg = vec![0; g.n()];
    for &(u, v) in g.edges() {
        deg[u] += 1;
        deg[v] += 1;
    }
    deg.iter().all(|&d| d <= 2)
}

pub fn split_dual(e: &EmbeddedGraph) -> Result<SplitDual, DualError> {
    let g = e.graph();
    if g.non_loop_count() == 0 {
        return Err(DualError::NoEdges);
    }
    if !g.is_two_connected() {
        return Err(DualError::NotTwoConnected);
    }
    let mut node_face = Vec::new();
    let mut face_node = vec![usize::MAX; e.faces().len()];
    for f in e.inner_faces() {
        face_node[f.id] = node_face.len();
        node_face.push(Some(f.id));
    }
    let inner = node_face.len();

    // outer darts in counterclockwise order, starting at the lexicographically
    // smallest outer edge
    let mut outer: Vec<Dart> = e.faces()[e.outer_face()].boundary.clone();
    outer.reverse();
    let key = |d: &Dart| {
        let (u, v) = g.edge(d.edge);
        (u.min(v), u.max(v), d.edge, d.forward)
    };
    let start = (0..outer.len()).min_by_key(|&i| key(&outer[i])).unwrap_or(0);
    outer.rotate_left(start);

    let mut dart_node = vec![usize::MAX; 2 * g.m()];
    for (i, &d) in outer.iter().enumerate() {
        dart_node[d.index()] = inner + i;
        node_face.push(None);
    }
    for x in 0..g.m() {
        if g.is_loop(x) {
            continue;
        }
        for fwd in [true, false] {
            let d = Dart { edge: x, forward: fwd };
            if dart_node[d.index()] == usize::MAX {
                dart_node[d.index()] = face_node[e.face_of(d)];
            }
        }
    }
    let mut node_edges: Vec<Vec<usize>> = vec![Vec::new(); node_face.len()];
    for f in e.inner_faces() {
        node_edges[face_node[f.id]] = f.edges().collect();
    }
    for (i, d) in outer.iter().enumerate() {
        node_edges[inner + i].push(d.edge);
    }
    Ok(SplitDual {
        m: g.m(),
        inner,
        node_face,
        leaf_dart: outer,
        dart_node,
        node_edges,
    })
}

/// A split dual with all edges directed away from a root leaf.
#[derive(Clone, Debug)]
pub struct OrientedSplitDual {
    split: SplitDual,
    root: usize,
    parent_edge: Vec<Option<usize>>,
    head: Vec<usize>,
}

impl OrientedSplitDual {
    pub fn split(&self) -> &SplitDual {
        &self.split
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// The edge dual to which points into `node` (None for the root).
    pub fn parent_edge(&self, node: usize) -> Option<usize> {
        self.parent_edge[node]
    }

    /// Node the dual of primal edge `e` points to.
    pub fn head(&self, e: usize) -> usize {
        self.head[e]
    }

    /// Node the dual of primal edge `e` points away from.
    pub fn tail(&self, e: usize) -> usize {
        self.split.other_end(e, self.head[e])
    }
}

pub fn orient_split_dual(s: &SplitDual, root: usize) -> Result<OrientedSplitDual, DualError> {
    if !s.is_leaf(root) {
        return Err(DualError::RootNotLeaf(root));
    }
    let mut parent_edge = vec![None; s.node_count()];
    let mut head = vec![usize::MAX; s.m];
    let mut seen = vec![false; s.node_count()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &e in &s.node_edges[x] {
            let y = s.other_end(e, x);
            if !seen[y] {
                seen[y] = true;
                parent_edge[y] = Some(e);
                head[e] = y;
                queue.push_back(y);
            }
        }
    }
    Ok(OrientedSplitDual {
        split: s.clone(),
        root,
        parent_edge,
        head,
    })
}

/// Dual-tree labeling: depth-first over the oriented split dual from its
/// root, visiting the edges of each face counterclockwise after the edge it
/// was entered by. Loops, which the dual ignores, take the largest labels.
pub fn dual_tree_labeling(o: &OrientedSplitDual) -> EdgeLabeling {
    let s = &o.split;
    let mut order = Vec::with_capacity(s.m);
    let root_edge = s.node_edges[o.root][0];
    order.push(root_edge);
    // explicit stack of (node, entering edge, next offset)
    let mut stack = vec![(s.other_end(root_edge, o.root), root_edge, 1usize)];
    while let Some(top) = stack.last_mut() {
        let (x, entry, k) = *top;
        let around = &s.node_edges[x];
        if k >= around.len() {
            stack.pop();
            continue;
        }
        top.2 += 1;
        let start = around.iter().position(|&e| e == entry).unwrap();
        let e = around[(start + k) % around.len()];
        order.push(e);
        let y = s.other_end(e, x);
        if !s.is_leaf(y) {
            stack.push((y, e, 1));
        }
    }
    let mut placed = vec![false; s.m];
    for &e in &order {
        placed[e] = true;
    }
    order.extend((0..s.m).filter(|&e| !placed[e]));
    EdgeLabeling::from_order(&order).expect("depth-first order visits every edge once")
}

/// Builds the dual-tree labeling of a 2-connected outerplane graph rooted at
/// leaf number `leaf` (0 is the default root).
pub fn labeling_for_root(e: &EmbeddedGraph, leaf: usize) -> Result<(OrientedSplitDual, EdgeLabeling), DualError> {
    let s = split_dual(e)?;
    let root = s.leaf(leaf)?;
    let o = orient_split_dual(&s, root)?;
    let l = dual_tree_labeling(&o);
    Ok((o, l))
}

/// Dual-tree labeling of every block with its default root, blocks taking
/// consecutive label ranges.
pub fn labeling_per_block(e: &EmbeddedGraph) -> Result<EdgeLabeling, DualError> {
    let g = e.graph();
    let mut order = Vec::with_capacity(g.m());
    for b in blocks(g) {
        let local_order: Vec<usize> = e.outer_order().iter().filter_map(|&v| b.local_vertex(v)).collect();
        let be = build_embedding(&b.graph, &local_order)?;
        let (_, l) = labeling_for_root(&be, 0)?;
        order.extend((1..=b.graph.m()).map(|k| b.edges[l.edge(k)]));
    }
    let mut placed = vec![false; g.m()];
    for &x in &order {
        placed[x] = true;
    }
    order.extend((0..g.m()).filter(|&x| !placed[x]));
    Ok(EdgeLabeling::from_order(&order).expect("blocks partition the non-loop edges"))
}

/// An inner face with its boundary starting at the edge whose dual points
/// into the face, then counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedFace {
    pub face: usize,
    pub node: usize,
    pub edges: Vec<usize>,
}

pub fn oriented_faces(e: &EmbeddedGraph, o: &OrientedSplitDual) -> Vec<OrientedFace> {
    let s = &o.split;
    e.inner_faces()
        .map(|f| {
            let node = (0..s.inner).find(|&x| s.node_face[x] == Some(f.id)).unwrap();
            let mut edges = s.node_edges[node].clone();
            let entry = o.parent_edge[node].expect("inner faces are never the root");
            let start = edges.iter().position(|&x| x == entry).unwrap();
            edges.rotate_left(start);
            OrientedFace {
                face: f.id,
                node,
                edges,
            }
        })
        .collect()
}

/// Primal edges of the maximal split-dual subtree that contains the dual of
/// `face.edges[i - 1]` and no other boundary edge of the face (`i` is
/// 1-based). Returned sorted by edge id.
pub fn lobe(o: &OrientedSplitDual, face: &OrientedFace, i: usize) -> Vec<usize> {
    assert!(
        i >= 1 && i <= face.edges.len(),
        "lobe index {i} out of 1..={}",
        face.edges.len()
    );
    let s = &o.split;
    let first = face.edges[i - 1];
    let mut out = vec![first];
    let mut seen = vec![false; s.node_count()];
    seen[face.node] = true;
    let start = s.other_end(first, face.node);
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &e in &s.node_edges[x] {
            let y = s.other_end(e, x);
            if !seen[y] {
                seen[y] = true;
                out.push(e);
                stack.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Edges around a vertex in clockwise order, from one outer-face edge to the
/// other. `ccw[k]` says whether the dual of `edges[k]` runs counterclockwise
/// around the vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceList {
    pub vertex: usize,
    pub edges: Vec<usize>,
    pub ccw: Vec<bool>,
}

pub fn incidence_list(e: &EmbeddedGraph, o: &OrientedSplitDual, v: usize) -> IncidenceList {
    let edges: Vec<usize> = e.rotation(v).iter().rev().copied().collect();
    let ccw = edges
        .iter()
        .map(|&x| {
            // the dart leaving v has the face before x (clockwise) on its left
            let before = o.split.dart_node(e.dart_from(v, x));
            o.head(x) == before
        })
        .collect();
    IncidenceList { vertex: v, edges, ccw }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaViolation {
    FaceOrder { face: usize, labels: Vec<usize> },
    LobeBelow { face: usize, index: usize, edge: usize },
    LobeAbove { face: usize, index: usize, edge: usize },
    FlagPattern { vertex: usize },
    LabelChain { vertex: usize, labels: Vec<usize> },
}

impl fmt::Display for LemmaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaViolation::FaceOrder { face, labels } => {
                write!(f, "face {face}: labels {labels:?} not increasing from the entry edge")
            }
            LemmaViolation::LobeBelow { face, index, edge } => {
                write!(
                    f,
                    "face {face}: edge {edge} in lobe {index} is labeled below the lobe's face edge"
                )
            }
            LemmaViolation::LobeAbove { face, index, edge } => {
                write!(
                    f,
                    "face {face}: edge {edge} in lobe {index} is labeled above the next face edge"
                )
            }
            LemmaViolation::FlagPattern { vertex } => {
                write!(f, "vertex {vertex}: ccw edges do not precede cw edges")
            }
            LemmaViolation::LabelChain { vertex, labels } => {
                write!(f, "vertex {vertex}: label chain {labels:?} not increasing")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    pub checked: usize,
    pub violations: Vec<LemmaViolation>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the face-order and lobe conditions for every inner face.
pub fn check_lemma_labels(e: &EmbeddedGraph, o: &OrientedSplitDual, labeling: &EdgeLabeling) -> LemmaReport {
    let mut report = LemmaReport::default();
    for face in oriented_faces(e, o) {
        report.checked += 1;
        let labels: Vec<usize> = face.edges.iter().map(|&x| labeling.label(x)).collect();
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            report.violations.push(LemmaViolation::FaceOrder {
                face: face.face,
                labels: labels.clone(),
            });
        }
        let t = face.edges.len();
        for i in 2..=t {
            let own = labels[i - 1];
            for x in lobe(o, &face, i) {
                if x == face.edges[i - 1] {
                    continue;
                }
                let l = labeling.label(x);
                if l <= own {
                    report.violations.push(LemmaViolation::LobeBelow {
                        face: face.face,
                        index: i,
                        edge: x,
                    });
                }
                if i < t && l >= labels[i] {
                    report.violations.push(LemmaViolation::LobeAbove {
                        face: face.face,
                        index: i,
                        edge: x,
                    });
                }
            }
        }
    }
    report
}

/// Checks, at every vertex, that ccw-edges precede cw-edges in the incidence
/// list and that the labels read backwards over the ccw prefix and then
/// forwards over the cw suffix increase.
pub fn check_lemma_neighbors(e: &EmbeddedGraph, o: &OrientedSplitDual, labeling: &EdgeLabeling) -> LemmaReport {
    let mut report = LemmaReport::default();
    for v in 0..e.graph().n() {
        let inc = incidence_list(e, o, v);
        if inc.edges.is_empty() {
            continue;
        }
        report.checked += 1;
        let split = inc.ccw.iter().take_while(|&&c| c).count();
        if inc.ccw[split..].iter().any(|&c| c) {
            report.violations.push(LemmaViolation::FlagPattern { vertex: v });
            continue;
        }
        let chain: Vec<usize> = inc.edges[..split]
            .iter()
            .rev()
            .chain(&inc.edges[split..])
            .map(|&x| labeling.label(x))
            .collect();
        if chain.windows(2).any(|w| w[0] >= w[1]) {
            report.violations.push(LemmaViolation::LabelChain {
                vertex: v,
                labels: chain,
            });
        }
    }
    report
}

/// Given a valid exchange for `tree` (bits indexed by label), returns an
/// exchange with the same larger-labeled edge whose partner has a smaller
/// label and which is a pivot or face exchange (a pivot exchange when `e` is
/// a triangulation). `labeling` must be the dual-tree labeling of `o`.
pub fn alternative_pof_exchange(
    e: &EmbeddedGraph,
    o: &OrientedSplitDual,
    labeling: &EdgeLabeling,
    tree: &BitSet,
    ex: Exchange,
) -> Result<Exchange, ExchangeError> {
    let g = e.graph();
    let tree_ids = BitSet::from_positions(g.m(), tree.iter().map(|l| labeling.edge(l + 1)));
    let is_valid = |x: Exchange| {
        if !tree.contains(x.removed - 1) || tree.contains(x.added - 1) || g.is_loop(labeling.edge(x.added)) {
            return false;
        }
        let mut t = tree_ids.clone();
        t.remove(labeling.edge(x.removed));
        t.insert(labeling.edge(x.added));
        is_spanning_tree(g, &t)
    };
    if ex.removed == ex.added || ex.removed > g.m() || ex.added > g.m() || !is_valid(ex) {
        return Err(ExchangeError::Invalid(ex));
    }
    let f = labeling.edge(ex.larger());
    let small = labeling.edge(ex.smaller());

    let alpha = o.tail(f);
    let s = o.split();
    if s.is_leaf(alpha) {
        return Err(ExchangeError::RootEdge(ex));
    }
    let face = OrientedFace {
        face: s.face(alpha).unwrap(),
        node: alpha,
        edges: {
            let mut edges = s.node_edges(alpha).to_vec();
            let entry = o.parent_edge(alpha).unwrap();
            let start = edges.iter().position(|&x| x == entry).unwrap();
            edges.rotate_left(start);
            edges
        },
    };
    let i = face.edges.iter().position(|&x| x == f).unwrap() + 1;

    let f_in_tree = tree_ids.contains(f);
    let alt = if f_in_tree {
        // the face edge whose lobe holds the smaller edge
        let j = (1..=face.edges.len())
            .find(|&j| lobe(o, &face, j).binary_search(&small).is_ok())
            .expect("lobes partition the edges");
        Exchange {
            removed: ex.larger(),
            added: labeling.label(face.edges[j - 1]),
        }
    } else {
        // the cycle edge next to f inside the lobe of the preceding face edge
        let prev_lobe = lobe(o, &face, i - 1);
        let cycle = fundamental_path(g, &tree_ids, f);
        let d = cycle
            .iter()
            .copied()
            .filter(|&x| g.share_endpoint(x, f) && prev_lobe.binary_search(&x).is_ok())
            .min_by_key(|&x| labeling.label(x))
            .ok_or(ExchangeError::Invalid(ex))?;
        Exchange {
            removed: labeling.label(d),
            added: ex.larger(),
        }
    };
    if alt.smaller() >= alt.larger() || alt.larger() != ex.larger() || !is_valid(alt) {
        return Err(ExchangeError::Construction { ex, alt });
    }
    let (p, q) = (labeling.edge(alt.removed), labeling.edge(alt.added));
    let pivot = g.share_endpoint(p, q);
    let common_face = {
        let (a, b) = e.faces_of_edge(p);
        let (c, d) = e.faces_of_edge(q);
        a == c || a == d || b == c || b == d
    };
    if !(pivot || common_face) || (e.is_triangulation(TriangulationMode::Multigraph) && !pivot) {
        return Err(ExchangeError::Construction { ex, alt });
    }
    Ok(alt)
}
