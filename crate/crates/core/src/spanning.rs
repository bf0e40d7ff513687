//! Spanning-tree predicates and tree walks on edge-id bit sets.

use crate::bits::BitSet;
use crate::embedgraph::MultiGraph;

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Whether the edges selected by `edges` (indexed by edge id) form a spanning
/// tree. Loops never qualify.
pub fn is_spanning_tree(g: &MultiGraph, edges: &BitSet) -> bool {
    if edges.len() != g.m() || edges.count_ones() + 1 != g.n() {
        return false;
    }
    let mut dsu = DisjointSets::new(g.n());
    edges.iter().all(|e| {
        let (u, v) = g.edge(e);
        dsu.union(u, v)
    })
}

/// Rooted view of a spanning tree for path queries.
#[derive(Clone, Debug)]
pub struct RootedTree {
    parent: Vec<usize>,
    parent_edge: Vec<usize>,
    depth: Vec<usize>,
}

impl RootedTree {
    /// `adj` is the adjacency of `g`; `edges` must be a spanning tree.
    pub fn new(g: &MultiGraph, adj: &[Vec<(usize, usize)>], edges: &BitSet) -> Self {
        let n = g.n();
        let mut parent = vec![usize::MAX; n];
        let mut parent_edge = vec![usize::MAX; n];
        let mut depth = vec![0; n];
        if n == 0 {
            return RootedTree {
                parent,
                parent_edge,
                depth,
            };
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            for &(w, e) in &adj[u] {
                if !seen[w] && edges.contains(e) {
                    seen[w] = true;
                    parent[w] = u;
                    parent_edge[w] = e;
                    depth[w] = depth[u] + 1;
                    stack.push(w);
                }
            }
        }
        RootedTree {
            parent,
            parent_edge,
            depth,
        }
    }

    /// Edge ids on the tree path between `a` and `b`.
    pub fn path(&self, mut a: usize, mut b: usize) -> Vec<usize> {
        let mut left = Vec::new();
        let mut right = Vec::new();
        while self.depth[a] > self.depth[b] {
            left.push(self.parent_edge[a]);
            a = self.parent[a];
        }
        while self.depth[b] > self.depth[a] {
            right.push(self.parent_edge[b]);
            b = self.parent[b];
        }
        while a != b {
            left.push(self.parent_edge[a]);
            a = self.parent[a];
            right.push(self.parent_edge[b]);
            b = self.parent[b];
        }
        right.reverse();
        left.extend(right);
        left
    }
}

/// Tree path between the endpoints of non-tree edge `f`: the fundamental
/// cycle of `tree + f` minus `f`.
pub fn fundamental_path(g: &MultiGraph, edges: &BitSet, f: usize) -> Vec<usize> {
    let adj = g.adjacency();
    let rt = RootedTree::new(g, &adj, edges);
    let (u, v) = g.edge(f);
    rt.path(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedgraph::named;

    #[test]
    fn triangle_trees() {
        let (g, _) = named::triangle();
        for pair in [[0, 1], [0, 2], [1, 2]] {
            assert!(is_spanning_tree(&g, &BitSet::from_positions(3, pair)));
        }
        assert!(!is_spanning_tree(&g, &BitSet::from_positions(3, [0, 1, 2])));
        assert!(!is_spanning_tree(&g, &BitSet::from_positions(3, [0])));
    }

    #[test]
    fn loops_never_qualify() {
        let g = MultiGraph::new(2, vec![(0, 0), (0, 1)]).unwrap();
        assert!(!is_spanning_tree(&g, &BitSet::from_positions(2, [0])));
        assert!(is_spanning_tree(&g, &BitSet::from_positions(2, [1])));
    }

    #[test]
    fn path_in_fan_tree() {
        // F_5 with tree {1,2,5,6} (edge ids 0,1,4,5): path between the
        // endpoints of p2-p3 (id 3) runs p2-p1-h-p3.
        let (g, _) = named::fan(5);
        let t = BitSet::from_positions(7, [0, 1, 4, 5]);
        let mut p = fundamental_path(&g, &t, 3);
        p.sort_unstable();
        assert_eq!(p, vec![0, 1, 4]);
    }
}
