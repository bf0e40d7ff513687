//! Enumeration of 2-connected outerplane multigraphs by gluing faces.
//!
//! Every 2-connected outerplane multigraph with at least two inner faces has
//! an inner face that meets the rest of the graph in a single edge (a leaf of
//! its weak dual tree). Removing that face leaves a smaller 2-connected
//! outerplane multigraph, so gluing polygons and digons onto outer edges,
//! starting from a single polygon, reaches every such graph. Vertices are
//! numbered by their position along the outer cycle.

use std::collections::HashSet;

use crate::embedgraph::{build_embedding, EmbeddedGraph, MultiGraph};

/// Which graphs [`enumerate_outerplane`] produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OuterplaneSpec {
    pub max_edges: usize,
    /// Longest inner face allowed.
    pub max_face: usize,
    /// Allow length-2 faces (parallel edges).
    pub digons: bool,
    /// Restrict inner faces to length 3 (and 2 when `digons` is set).
    pub triangulations_only: bool,
}

impl OuterplaneSpec {
    pub fn all(max_edges: usize) -> Self {
        OuterplaneSpec {
            max_edges,
            max_face: max_edges,
            digons: true,
            triangulations_only: false,
        }
    }

    pub fn simple(max_edges: usize) -> Self {
        OuterplaneSpec {
            digons: false,
            ..Self::all(max_edges)
        }
    }

    pub fn triangulations(max_edges: usize, digons: bool) -> Self {
        OuterplaneSpec {
            max_edges,
            max_face: 3,
            digons,
            triangulations_only: true,
        }
    }

    fn face_lengths(&self) -> impl Iterator<Item = usize> + '_ {
        let lo = if self.digons { 2 } else { 3 };
        let hi = if self.triangulations_only { 3 } else { self.max_face };
        lo..=hi.min(self.max_edges)
    }
}

/// A graph together with the outer order that embeds it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterplaneGraph {
    pub graph: MultiGraph,
    pub outer_order: Vec<usize>,
}

impl OuterplaneGraph {
    pub fn embedding(&self) -> EmbeddedGraph {
        build_embedding(&self.graph, &self.outer_order).expect("enumerated graphs are outerplane")
    }
}

/// Canonical form of an outerplane multigraph whose vertices are numbered
/// along the outer cycle: the smallest sorted edge list over all rotations
/// and reflections of the cycle.
pub fn canonical_outerplane_key(n: usize, edges: &[(usize, usize)]) -> (usize, Vec<(usize, usize)>) {
    let mut best: Option<Vec<(usize, usize)>> = None;
    for r in 0..n.max(1) {
        for reflect in [false, true] {
            let map = |p: usize| if reflect { (r + n - p) % n } else { (p + n - r) % n };
            let mut mapped: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (map(a), map(b));
                    (x.min(y), x.max(y))
                })
                .collect();
            mapped.sort_unstable();
            if best.as_ref().is_none_or(|b| mapped < *b) {
                best = Some(mapped);
            }
        }
    }
    (n, best.unwrap_or_default())
}

fn glue(n: usize, edges: &[(usize, usize)], p: usize, len: usize) -> (usize, Vec<(usize, usize)>) {
    let q = (p + 1) % n;
    if len == 2 {
        let mut out = edges.to_vec();
        out.push((p.min(q), p.max(q)));
        return (n, out);
    }
    let extra = len - 2;
    let shift = |x: usize| if x > p { x + extra } else { x };
    let mut out: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (shift(a), shift(b));
            (x.min(y), x.max(y))
        })
        .collect();
    let mut path = vec![p];
    path.extend(p + 1..=p + extra);
    path.push(shift(q));
    for w in path.windows(2) {
        out.push((w[0].min(w[1]), w[0].max(w[1])));
    }
    (n + extra, out)
}

/// All 2-connected loopless outerplane multigraphs with at most
/// `spec.max_edges` edges (including the single edge), one per isomorphism
/// class of outerplane embeddings, in order of increasing edge count.
pub fn enumerate_outerplane(spec: OuterplaneSpec) -> Vec<OuterplaneGraph> {
    let mut seen: HashSet<(usize, Vec<(usize, usize)>)> = HashSet::new();
    let mut found: Vec<(usize, Vec<(usize, usize)>)> = Vec::new();
    if spec.max_edges >= 1 {
        found.push((2, vec![(0, 1)]));
    }
    let mut frontier = Vec::new();
    for len in spec.face_lengths() {
        let edges: Vec<(usize, usize)> = if len == 2 {
            vec![(0, 1), (0, 1)]
        } else {
            (0..len).map(|i| (i.min((i + 1) % len), i.max((i + 1) % len))).collect()
        };
        let key = canonical_outerplane_key(len, &edges);
        if seen.insert(key.clone()) {
            frontier.push(key);
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (n, edges) in frontier {
            for p in 0..n {
                let q = (p + 1) % n;
                let (a, b) = (p.min(q), p.max(q));
                if !edges.contains(&(a, b)) {
                    continue;
                }
                for len in spec.face_lengths() {
                    if edges.len() + len - 1 > spec.max_edges {
                        continue;
                    }
                    let (n2, e2) = glue(n, &edges, p, len);
                    let key = canonical_outerplane_key(n2, &e2);
                    if seen.insert(key.clone()) {
                        next.push(key);
                    }
                }
            }
            found.push((n, edges));
        }
        frontier = next;
    }
    found.sort_by(|a, b| (a.1.len(), a.0, &a.1).cmp(&(b.1.len(), b.0, &b.1)));
    found
        .into_iter()
        .map(|(n, edges)| OuterplaneGraph {
            graph: MultiGraph::new(n, edges).unwrap(),
            outer_order: (0..n).collect(),
        })
        .collect()
}

/// Outerplane graphs with a cut vertex, made by identifying outer vertex 0
/// of two pieces, for every pair with at most `max_edges` edges in total.
pub fn block_joins(pieces: &[OuterplaneGraph], max_edges: usize) -> Vec<OuterplaneGraph> {
    let mut out = Vec::new();
    for (i, a) in pieces.iter().enumerate() {
        for b in &pieces[i..] {
            if a.graph.m() + b.graph.m() > max_edges {
                continue;
            }
            let na = a.graph.n();
            // b's vertex 0 becomes a's vertex 0, the rest follow a's vertices
            let map_b = |v: usize| if v == 0 { 0 } else { na + v - 1 };
            let mut edges = a.graph.edges().to_vec();
            edges.extend(b.graph.edges().iter().map(|&(u, v)| (map_b(u), map_b(v))));
            let n = na + b.graph.n() - 1;
            out.push(OuterplaneGraph {
                graph: MultiGraph::new(n, edges).unwrap(),
                outer_order: (0..n).collect(),
            });
        }
    }
    out
}
