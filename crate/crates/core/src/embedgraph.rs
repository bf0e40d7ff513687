//! Multigraphs, the edge-list text format, outerplane embeddings and blocks.
//!
//! An outerplane embedding is fully determined by the counterclockwise order
//! of the vertices along the outer face: place the vertices on a circle in
//! that order and draw every edge as a straight chord. Parallel edges are
//! drawn as nested arcs so that consecutive copies bound a digon.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge {edge} has endpoint {vertex} but the graph has {n} vertices")]
    EndpointOutOfRange { edge: usize, vertex: usize, n: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("outer order must list every vertex exactly once ({0})")]
    BadOuterOrder(String),
    #[error("edges {0} and {1} cross for the given outer order")]
    Crossing(usize, usize),
    #[error("graph is disconnected; embed each component separately")]
    Disconnected,
    #[error("face tracing violated Euler's formula: n={n} m={m} faces={faces}")]
    Euler { n: usize, m: usize, faces: usize },
    #[error("vertex {0} is not incident to the outer face")]
    NotOuterplane(usize),
}

/// An undirected multigraph. Edge identity is the position in `edges`;
/// parallel edges and loops are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        for (id, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::EndpointOutOfRange { edge: id, vertex: x, n });
                }
            }
        }
        Ok(MultiGraph { n, edges })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    #[inline]
    pub fn is_loop(&self, id: usize) -> bool {
        let (u, v) = self.edges[id];
        u == v
    }

    pub fn loops(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.m()).filter(|&e| self.is_loop(e))
    }

    pub fn non_loop_count(&self) -> usize {
        (0..self.m()).filter(|&e| !self.is_loop(e)).count()
    }

    /// Neighbour lists `(neighbour, edge id)`, loops omitted.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if u != v {
                adj[u].push((v, id));
                adj[v].push((u, id));
            }
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &(w, _) in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Connected with at most one block. A single vertex and a single edge
    /// both count.
    pub fn is_two_connected(&self) -> bool {
        self.is_connected() && blocks(self).len() <= 1
    }

    /// Endpoints shared by two edges (loops ignored).
    pub fn share_endpoint(&self, a: usize, b: usize) -> bool {
        let (u, v) = self.edges[a];
        let (x, y) = self.edges[b];
        u == x || u == y || v == x || v == y
    }

    /// Serializes into the edge-list text format.
    pub fn to_text(&self, outer: Option<&[usize]>) -> String {
        let mut s = format!("{} {}\n", self.n, self.m());
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        if let Some(order) = outer {
            s.push_str("outer:");
            for v in order {
                s.push_str(&format!(" {v}"));
            }
            s.push('\n');
        }
        s
    }
}

/// Contents of an edge-list file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: MultiGraph,
    pub outer: Option<Vec<usize>>,
    /// Set by a `directed` token on the header line; edges are then arcs
    /// `tail head`.
    pub directed: bool,
}

impl GraphFile {
    /// Parses the edge-list format:
    ///
    /// ```text
    /// # comment
    /// n m [directed]
    /// u v          (m lines, 0-based)
    /// outer: v0 v1 ... v_{n-1}   (optional)
    /// ```
    pub fn parse(text: &str) -> Result<GraphFile, ParseError> {
        let err = |line: usize, message: String| ParseError { line, message };
        let mut header: Option<(usize, usize, bool)> = None;
        let mut edges = Vec::new();
        let mut outer = None;
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("outer:") {
                if outer.is_some() {
                    return Err(err(line_no, "duplicate outer line".into()));
                }
                let order = rest
                    .split_whitespace()
                    .map(|t| t.parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| err(line_no, format!("bad vertex in outer order: {e}")))?;
                outer = Some((line_no, order));
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match header {
                None => {
                    let directed = match toks.len() {
                        2 => false,
                        3 if toks[2] == "directed" => true,
                        _ => {
                            return Err(err(
                                line_no,
                                format!("expected header \"n m [directed]\", got {line:?}"),
                            ))
                        }
                    };
                    let n = toks[0]
                        .parse()
                        .map_err(|e| err(line_no, format!("bad vertex count: {e}")))?;
                    let m = toks[1]
                        .parse()
                        .map_err(|e| err(line_no, format!("bad edge count: {e}")))?;
                    header = Some((n, m, directed));
                }
                Some((n, m, _)) => {
                    if toks.len() != 2 {
                        return Err(err(line_no, format!("expected \"u v\", got {line:?}")));
                    }
                    if edges.len() == m {
                        return Err(err(line_no, format!("more than {m} edge lines")));
                    }
                    let mut ends = [0usize; 2];
                    for (slot, t) in ends.iter_mut().zip(&toks) {
                        *slot = t.parse().map_err(|e| err(line_no, format!("bad vertex {t:?}: {e}")))?;
                        if *slot >= n {
                            return Err(err(line_no, format!("vertex {slot} out of range (n = {n})")));
                        }
                    }
                    edges.push((ends[0], ends[1]));
                }
            }
        }
        let (n, m, directed) = header.ok_or_else(|| err(last_line.max(1), "missing header".into()))?;
        if edges.len() != m {
            return Err(err(
                last_line.max(1),
                format!("header announces {m} edges but {} were given", edges.len()),
            ));
        }
        let outer = match outer {
            None => None,
            Some((line_no, order)) => {
                if let Some(&bad) = order.iter().find(|&&v| v >= n) {
                    return Err(err(line_no, format!("vertex {bad} out of range (n = {n})")));
                }
                Some(order)
            }
        };
        let graph = MultiGraph::new(n, edges).expect("endpoints validated while parsing");
        Ok(GraphFile { graph, outer, directed })
    }
}

/// Parses an edge-list description into a multigraph, ignoring any outer
/// order line.
pub fn parse_graph(text: &str) -> Result<MultiGraph, ParseError> {
    GraphFile::parse(text).map(|f| f.graph)
}

/// One traversal direction of an edge. `forward` runs from the first to the
/// second stored endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dart {
    pub edge: usize,
    pub forward: bool,
}

impl Dart {
    #[inline]
    pub fn index(self) -> usize {
        2 * self.edge + usize::from(!self.forward)
    }

    #[inline]
    pub fn from_index(i: usize) -> Dart {
        Dart {
            edge: i / 2,
            forward: i.is_multiple_of(2),
        }
    }

    #[inline]
    pub fn reversed(self) -> Dart {
        Dart {
            edge: self.edge,
            forward: !self.forward,
        }
    }

    #[inline]
    pub fn tail(self, g: &MultiGraph) -> usize {
        let (u, v) = g.edge(self.edge);
        if self.forward {
            u
        } else {
            v
        }
    }

    #[inline]
    pub fn head(self, g: &MultiGraph) -> usize {
        self.reversed().tail(g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// Darts with the face on their left. Inner faces run counterclockwise.
    pub boundary: Vec<Dart>,
    pub is_outer: bool,
}

impl Face {
    #[inline]
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.boundary.iter().map(|d| d.edge)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangulationMode {
    /// Every inner face is a triangle.
    Simple,
    /// Every inner face has length at most 3 (digons allowed).
    Multigraph,
}

/// A connected multigraph with an outerplane rotation system and its faces.
/// Loops are carried in `graph` but take no part in the embedding.
#[derive(Clone, Debug)]
pub struct EmbeddedGraph {
    graph: MultiGraph,
    outer_order: Vec<usize>,
    position: Vec<usize>,
    rotation: Vec<Vec<usize>>,
    rotation_index: Vec<usize>,
    faces: Vec<Face>,
    dart_face: Vec<usize>,
    outer_face: usize,
}

/// Builds the outerplane embedding in which the vertices appear on the outer
/// face in the given counterclockwise order.
pub fn build_embedding(g: &MultiGraph, outer_order: &[usize]) -> Result<EmbeddedGraph, EmbedError> {
    let n = g.n();
    if outer_order.len() != n {
        return Err(EmbedError::BadOuterOrder(format!(
            "{} entries for {n} vertices",
            outer_order.len()
        )));
    }
    let mut position = vec![usize::MAX; n];
    for (p, &v) in outer_order.iter().enumerate() {
        if v >= n {
            return Err(EmbedError::BadOuterOrder(format!("vertex {v} out of range")));
        }
        if position[v] != usize::MAX {
            return Err(EmbedError::BadOuterOrder(format!("vertex {v} repeated")));
        }
        position[v] = p;
    }
    if !g.is_connected() {
        return Err(EmbedError::Disconnected);
    }

    let chords: Vec<(usize, usize, usize)> = (0..g.m())
        .filter(|&e| !g.is_loop(e))
        .map(|e| {
            let (u, v) = g.edge(e);
            let (a, b) = (position[u], position[v]);
            (e, a.min(b), a.max(b))
        })
        .collect();
    for (i, &(e, a, b)) in chords.iter().enumerate() {
        for &(f, c, d) in &chords[i + 1..] {
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                return Err(EmbedError::Crossing(e.min(f), e.max(f)));
            }
        }
    }

    // Counterclockwise around the vertex at position p the other endpoints
    // appear at positions p+1, p+2, ..., p-1. Parallel copies are ordered by
    // id at their lower-position end and reversed at the other end.
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(e, _, _) in &chords {
        let (u, v) = g.edge(e);
        rotation[u].push(e);
        rotation[v].push(e);
    }
    for (v, rot) in rotation.iter_mut().enumerate() {
        let p = position[v];
        rot.sort_by_key(|&e| {
            let (a, b) = g.edge(e);
            let w = if a == v { b } else { a };
            let offset = (position[w] + n - p) % n;
            let tie = if p < position[w] { e as isize } else { -(e as isize) };
            (offset, tie)
        });
    }
    let mut rotation_index = vec![0; 2 * g.m()];
    for (v, rot) in rotation.iter().enumerate() {
        for (i, &e) in rot.iter().enumerate() {
            let d = Dart {
                edge: e,
                forward: g.edge(e).0 == v,
            };
            rotation_index[d.index()] = i;
        }
    }

    let mut emb = EmbeddedGraph {
        graph: g.clone(),
        outer_order: outer_order.to_vec(),
        position,
        rotation,
        rotation_index,
        faces: Vec::new(),
        dart_face: vec![usize::MAX; 2 * g.m()],
        outer_face: 0,
    };
    emb.trace_faces();

    let m = chords.len();
    if n + emb.faces.len() != m + 2 {
        return Err(EmbedError::Euler {
            n,
            m,
            faces: emb.faces.len(),
        });
    }
    let mut on_outer = vec![false; n];
    for d in &emb.faces[emb.outer_face].boundary {
        on_outer[d.tail(g)] = true;
    }
    if n > 1 {
        if let Some(v) = on_outer.iter().position(|&b| !b) {
            return Err(EmbedError::NotOuterplane(v));
        }
    }
    Ok(emb)
}

impl EmbeddedGraph {
    fn trace_faces(&mut self) {
        let g = &self.graph;
        let mut faces = Vec::new();
        for start in 0..2 * g.m() {
            if g.is_loop(start / 2) || self.dart_face[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut boundary = Vec::new();
            let mut d = Dart::from_index(start);
            loop {
                self.dart_face[d.index()] = id;
                boundary.push(d);
                d = self.next_in_face(d);
                if d.index() == start {
                    break;
                }
            }
            faces.push(Face {
                id,
                boundary,
                is_outer: false,
            });
        }
        let v0 = self.outer_order[0];
        let outer = match self.rotation[v0].last() {
            Some(&e) => {
                let d = Dart {
                    edge: e,
                    forward: g.edge(e).0 == v0,
                };
                self.dart_face[d.index()]
            }
            None => {
                faces.push(Face {
                    id: faces.len(),
                    boundary: Vec::new(),
                    is_outer: true,
                });
                faces.len() - 1
            }
        };
        faces[outer].is_outer = true;
        self.outer_face = outer;
        self.faces = faces;
    }

    /// The dart following `d` on the face to its left.
    #[inline]
    pub fn next_in_face(&self, d: Dart) -> Dart {
        let v = d.head(&self.graph);
        let rev = d.reversed();
        let rot = &self.rotation[v];
        let i = self.rotation_index[rev.index()];
        let e = rot[(i + rot.len() - 1) % rot.len()];
        Dart {
            edge: e,
            forward: self.graph.edge(e).0 == v,
        }
    }

    #[inline]
    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    #[inline]
    pub fn outer_order(&self) -> &[usize] {
        &self.outer_order
    }

    #[inline]
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// Counterclockwise order of the non-loop edges around `v`. The outer
    /// face lies between the last and the first entry.
    #[inline]
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    #[inline]
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    #[inline]
    pub fn outer_face(&self) -> usize {
        self.outer_face
    }

    pub fn inner_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| !f.is_outer)
    }

    /// Face to the left of a dart. Undefined for loops.
    #[inline]
    pub fn face_of(&self, d: Dart) -> usize {
        self.dart_face[d.index()]
    }

    /// The two faces an edge separates (equal for bridges).
    pub fn faces_of_edge(&self, e: usize) -> (usize, usize) {
        let d = Dart { edge: e, forward: true };
        (self.face_of(d), self.face_of(d.reversed()))
    }

    /// Dart leaving `v` along edge `e`.
    #[inline]
    pub fn dart_from(&self, v: usize, e: usize) -> Dart {
        Dart {
            edge: e,
            forward: self.graph.edge(e).0 == v,
        }
    }

    pub fn is_triangulation(&self, mode: TriangulationMode) -> bool {
        self.inner_faces().all(|f| match mode {
            TriangulationMode::Simple => f.len() == 3,
            TriangulationMode::Multigraph => f.len() <= 3,
        })
    }

    /// Whether edge `e` lies on the outer face.
    pub fn on_outer_face(&self, e: usize) -> bool {
        let (a, b) = self.faces_of_edge(e);
        a == self.outer_face || b == self.outer_face
    }
}

/// Faces of an embedding (inner faces counterclockwise, exactly one outer).
pub fn faces(e: &EmbeddedGraph) -> &[Face] {
    e.faces()
}

pub fn is_triangulation(e: &EmbeddedGraph, mode: TriangulationMode) -> bool {
    e.is_triangulation(mode)
}

/// A block of a multigraph. `graph` uses local vertex indices into
/// `vertices`; `edges[i]` is the original id of local edge `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub graph: MultiGraph,
}

impl Block {
    pub fn local_vertex(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }
}

/// Blocks (maximal 2-connected pieces and bridges) of a multigraph, loops
/// excluded. Blocks carry the original edge ids in increasing order.
pub fn blocks(g: &MultiGraph) -> Vec<Block> {
    let n = g.n();
    let adj = g.adjacency();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut out_edges: Vec<Vec<usize>> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, edge used to enter, next adjacency index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(top) = stack.last_mut() {
            let (u, parent_edge, i) = *top;
            if i < adj[u].len() {
                top.2 += 1;
                let (w, e) = adj[u][i];
                if e == parent_edge {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push(e);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, e, 0));
                } else if disc[w] < disc[u] {
                    edge_stack.push(e);
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut comp = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            comp.push(e);
                            if e == parent_edge {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        out_edges.push(comp);
                    }
                }
            }
        }
    }

    out_edges
        .into_iter()
        .map(|edges| {
            let mut vertices: Vec<usize> = edges
                .iter()
                .flat_map(|&e| {
                    let (u, v) = g.edge(e);
                    [u, v]
                })
                .collect();
            vertices.sort_unstable();
            vertices.dedup();
            let local = edges
                .iter()
                .map(|&e| {
                    let (u, v) = g.edge(e);
                    (vertices.binary_search(&u).unwrap(), vertices.binary_search(&v).unwrap())
                })
                .collect();
            let graph = MultiGraph::new(vertices.len(), local).unwrap();
            Block { vertices, edges, graph }
        })
        .collect()
}

impl fmt::Display for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} edges=[", self.n)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({u},{v})")?;
        }
        f.write_str("]")
    }
}

/// Small named graphs used throughout tests and the CLI examples.
pub mod named {
    use super::MultiGraph;

    /// Triangle 0-1-2, outer order (0,1,2).
    pub fn triangle() -> (MultiGraph, Vec<usize>) {
        (MultiGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap(), vec![0, 1, 2])
    }

    /// `k` parallel edges between two vertices.
    pub fn parallel(k: usize) -> (MultiGraph, Vec<usize>) {
        (MultiGraph::new(2, vec![(0, 1); k]).unwrap(), vec![0, 1])
    }

    /// Cycle on `n` vertices.
    pub fn cycle(n: usize) -> (MultiGraph, Vec<usize>) {
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        (MultiGraph::new(n, edges).unwrap(), (0..n).collect())
    }

    /// Fan `F_n`: hub 0 joined to every vertex of the path 1..n-1.
    /// Edges alternate spoke, path edge, spoke, ... so that edge id + 1 is
    /// the left-to-right label.
    pub fn fan(n: usize) -> (MultiGraph, Vec<usize>) {
        assert!(n >= 2);
        let mut edges = Vec::new();
        for i in 1..n {
            edges.push((0, i));
            if i + 1 < n {
                edges.push((i, i + 1));
            }
        }
        (MultiGraph::new(n, edges).unwrap(), (0..n).collect())
    }

    /// The diamond: two triangles sharing edge a-c. Vertices a=0, b=1, c=2,
    /// d=3; edges ab, bc, ac, ad, cd in that order.
    pub fn diamond() -> (MultiGraph, Vec<usize>) {
        (
            MultiGraph::new(4, vec![(0, 1), (1, 2), (0, 2), (0, 3), (2, 3)]).unwrap(),
            vec![0, 1, 2, 3],
        )
    }

    pub fn complete(n: usize) -> MultiGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        MultiGraph::new(n, edges).unwrap()
    }
}
