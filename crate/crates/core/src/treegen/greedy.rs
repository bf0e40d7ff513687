use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{verify_genlex, ClassFilter, Classifier, Exchange, LabeledGraph, Listing, SpanningTree};
use crate::bits::BitSet;
use crate::counting::count_matrix_tree;
use crate::embedgraph::{EmbeddedGraph, MultiGraph};
use crate::labeling::EdgeLabeling;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("initial edge set is not a spanning tree")]
    NotSpanningTree,
    #[error("tie-break called with no candidates")]
    EmptyTie,
    #[error("step {step}: no {class} exchange among the ties {ties:?}")]
    ClassMissing {
        step: usize,
        class: ClassFilter,
        ties: Vec<Exchange>,
    },
    #[error("{class} tie-break needs an embedding")]
    NeedsEmbedding { class: ClassFilter },
    #[error("listing has {found} trees, the graph has {expected}")]
    Incomplete { found: usize, expected: BigUint },
    #[error("listing is not genlex")]
    NotGenlex,
}

/// Rule picking one exchange out of a tie set. All members of a tie share
/// the larger label and differ in the smaller one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieBreak {
    /// Maximize the smaller label.
    Closest,
    /// Minimize the smaller label.
    Farthest,
    /// Uniform choice from a seeded generator.
    Random { seed: u64 },
    /// Restrict to a class, then apply closest. Fails if the class is absent.
    Prefer(ClassFilter),
}

impl TieBreak {
    pub fn name(&self) -> String {
        match self {
            TieBreak::Closest => "closest".into(),
            TieBreak::Farthest => "farthest".into(),
            TieBreak::Random { seed } => format!("random:{seed}"),
            TieBreak::Prefer(c) => format!("prefer-{c}"),
        }
    }
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for TieBreak {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "closest" => Ok(TieBreak::Closest),
            "farthest" => Ok(TieBreak::Farthest),
            _ => {
                if let Some(seed) = s.strip_prefix("random:") {
                    seed.parse()
                        .map(|seed| TieBreak::Random { seed })
                        .map_err(|_| format!("bad seed in {s:?}"))
                } else if let Some(class) = s.strip_prefix("prefer-") {
                    class.parse().map(TieBreak::Prefer)
                } else {
                    Err(format!(
                        "unknown tie-break {s:?} (closest|farthest|random:<seed>|prefer-<class>)"
                    ))
                }
            }
        }
    }
}

/// The tie member with the largest smaller label.
pub fn tiebreak_closest(ties: &[Exchange]) -> Result<Exchange, GenError> {
    ties.iter()
        .copied()
        .max_by_key(|x| x.smaller())
        .ok_or(GenError::EmptyTie)
}

fn tiebreak_farthest(ties: &[Exchange]) -> Result<Exchange, GenError> {
    ties.iter()
        .copied()
        .min_by_key(|x| x.smaller())
        .ok_or(GenError::EmptyTie)
}

/// The rule that restricts ties to `class` and falls back to closest.
pub fn tiebreak_prefer(class: ClassFilter) -> TieBreak {
    TieBreak::Prefer(class)
}

/// Parent pointers and DFS intervals of the current tree.
struct TreeIndex {
    parent: Vec<usize>,
    parent_pos: Vec<usize>,
    depth: Vec<usize>,
    tin: Vec<usize>,
    tout: Vec<usize>,
    stack: Vec<(usize, usize)>,
}

impl TreeIndex {
    fn new(n: usize) -> Self {
        TreeIndex {
            parent: vec![usize::MAX; n],
            parent_pos: vec![usize::MAX; n],
            depth: vec![0; n],
            tin: vec![0; n],
            tout: vec![0; n],
            stack: Vec::with_capacity(n),
        }
    }

    fn rebuild(&mut self, lg: &LabeledGraph, bits: &BitSet) {
        let n = lg.graph.n();
        if n == 0 {
            return;
        }
        let adj = lg.adjacency();
        let mut clock = 0;
        self.parent[0] = usize::MAX;
        self.parent_pos[0] = usize::MAX;
        self.depth[0] = 0;
        self.tin[0] = clock;
        clock += 1;
        self.stack.clear();
        self.stack.push((0, 0));
        while let Some(top) = self.stack.last_mut() {
            let (u, i) = *top;
            if i == adj[u].len() {
                self.tout[u] = clock;
                self.stack.pop();
                continue;
            }
            top.1 += 1;
            let (w, pos) = adj[u][i];
            if bits.contains(pos) && pos != self.parent_pos[u] {
                self.parent[w] = u;
                self.parent_pos[w] = pos;
                self.depth[w] = self.depth[u] + 1;
                self.tin[w] = clock;
                clock += 1;
                self.stack.push((w, 0));
            }
        }
    }

    #[inline]
    fn in_subtree(&self, v: usize, root: usize) -> bool {
        self.tin[root] <= self.tin[v] && self.tin[v] < self.tout[root]
    }

    fn path_into(&self, mut a: usize, mut b: usize, out: &mut Vec<usize>) {
        while self.depth[a] > self.depth[b] {
            out.push(self.parent_pos[a]);
            a = self.parent[a];
        }
        while self.depth[b] > self.depth[a] {
            out.push(self.parent_pos[b]);
            b = self.parent[b];
        }
        while a != b {
            out.push(self.parent_pos[a]);
            out.push(self.parent_pos[b]);
            a = self.parent[a];
            b = self.parent[b];
        }
    }
}

/// Greedy exchange generator. Each step applies an exchange to an unvisited
/// tree whose larger label is as small as possible, choosing among ties with
/// the configured rule.
pub struct Generator {
    lg: LabeledGraph,
    classifier: Classifier,
    tiebreak: TieBreak,
    rng: Option<ChaCha8Rng>,
    limit: Option<usize>,
    check: bool,
}

impl Generator {
    pub fn new(g: &MultiGraph, labeling: &EdgeLabeling, tiebreak: TieBreak) -> Self {
        let lg = LabeledGraph::new(g, labeling);
        let classifier = Classifier::from_graph(g, labeling);
        let rng = match tiebreak {
            TieBreak::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        Generator {
            lg,
            classifier,
            tiebreak,
            rng,
            limit: None,
            check: true,
        }
    }

    /// Classify steps (and prefer classes) using faces of `e`.
    pub fn with_embedding(mut self, e: &EmbeddedGraph) -> Self {
        self.classifier = Classifier::from_embedding(e, &self.lg.labeling);
        self
    }

    /// Stop after `trees` trees. Truncated runs skip the final checks.
    pub fn limit(mut self, trees: usize) -> Self {
        self.limit = Some(trees);
        self
    }

    /// Skip the completeness and genlex checks at the end of a full run.
    pub fn unchecked(mut self) -> Self {
        self.check = false;
        self
    }

    pub fn labeled_graph(&self) -> &LabeledGraph {
        &self.lg
    }

    pub fn classifier(&self) -> &Classifier {
        &self.classifier
    }

    fn pick(&mut self, ties: &[Exchange], step: usize) -> Result<Exchange, GenError> {
        match self.tiebreak {
            TieBreak::Closest => tiebreak_closest(ties),
            TieBreak::Farthest => tiebreak_farthest(ties),
            TieBreak::Random { .. } => {
                if ties.is_empty() {
                    return Err(GenError::EmptyTie);
                }
                let rng = self.rng.as_mut().unwrap();
                Ok(ties[rng.gen_range(0..ties.len())])
            }
            TieBreak::Prefer(class) => {
                if class.needs_faces() && !self.classifier.has_faces() {
                    return Err(GenError::NeedsEmbedding { class });
                }
                let members: Vec<Exchange> = ties
                    .iter()
                    .copied()
                    .filter(|&x| class.admits(self.classifier.classify(x)))
                    .collect();
                if members.is_empty() {
                    return Err(GenError::ClassMissing {
                        step,
                        class,
                        ties: ties.to_vec(),
                    });
                }
                tiebreak_closest(&members)
            }
        }
    }

    /// Runs from `initial` (label space) until no unvisited neighbor exists.
    pub fn run(mut self, initial: &SpanningTree) -> Result<Listing, GenError> {
        let m = self.lg.m();
        let n = self.lg.graph.n();
        if initial.bits().len() != m || !crate::spanning::is_spanning_tree(&self.lg.graph, initial.bits()) {
            return Err(GenError::NotSpanningTree);
        }
        let mut visited: HashSet<BitSet> = HashSet::new();
        let mut trees = vec![initial.clone()];
        let mut steps = Vec::new();
        visited.insert(initial.bits().clone());
        let mut current = initial.bits().clone();
        let mut index = TreeIndex::new(n);
        let mut path = Vec::with_capacity(n);
        let mut ties: Vec<Exchange> = Vec::new();

        while self.limit.is_none_or(|l| trees.len() < l) {
            index.rebuild(&self.lg, &current);
            ties.clear();
            for pos in 0..m {
                let (u, v) = self.lg.graph.edge(pos);
                if u == v {
                    continue;
                }
                let larger = pos + 1;
                if current.contains(pos) {
                    let child = if index.parent_pos[u] == pos { u } else { v };
                    for q in 0..pos {
                        if current.contains(q) {
                            continue;
                        }
                        let (x, y) = self.lg.graph.edge(q);
                        if x != y && index.in_subtree(x, child) != index.in_subtree(y, child) {
                            ties.push(Exchange {
                                removed: larger,
                                added: q + 1,
                            });
                        }
                    }
                } else {
                    path.clear();
                    index.path_into(u, v, &mut path);
                    for &p in &path {
                        if p < pos {
                            ties.push(Exchange {
                                removed: p + 1,
                                added: larger,
                            });
                        }
                    }
                }
                ties.retain(|&x| !visited.contains(&apply(&current, x)));
                if !ties.is_empty() {
                    break;
                }
            }
            if ties.is_empty() {
                break;
            }
            debug_assert!(ties.iter().all(|x| x.larger() == ties[0].larger()));
            let ex = self.pick(&ties, steps.len())?;
            current = apply(&current, ex);
            visited.insert(current.clone());
            trees.push(SpanningTree::from_bits_unchecked(current.clone()));
            steps.push((ex, self.classifier.classify(ex)));
        }

        let listing = Listing {
            labeling: self.lg.labeling.clone(),
            initial: initial.clone(),
            trees,
            steps,
        };
        if self.check && self.limit.is_none() {
            let expected = count_matrix_tree(&self.lg.graph);
            if BigUint::from(listing.len()) != expected {
                return Err(GenError::Incomplete {
                    found: listing.len(),
                    expected,
                });
            }
            if !verify_genlex(&listing.bits()) {
                return Err(GenError::NotGenlex);
            }
        }
        Ok(listing)
    }
}

fn apply(bits: &BitSet, ex: Exchange) -> BitSet {
    let mut b = bits.clone();
    b.remove(ex.removed - 1);
    b.insert(ex.added - 1);
    b
}

/// Lists all spanning trees of `g` from `initial`, checking completeness
/// against the matrix-tree count and the genlex property.
pub fn algorithm_g(
    g: &MultiGraph,
    labeling: &EdgeLabeling,
    initial: &SpanningTree,
    tiebreak: TieBreak,
) -> Result<Listing, GenError> {
    Generator::new(g, labeling, tiebreak).run(initial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedgraph::{build_embedding, named};

    #[test]
    fn closest_picks_max_smaller() {
        let ties = [Exchange { removed: 1, added: 4 }, Exchange { removed: 2, added: 4 }];
        assert_eq!(tiebreak_closest(&ties).unwrap(), Exchange { removed: 2, added: 4 });
        let ties = [
            Exchange { removed: 3, added: 9 },
            Exchange { removed: 7, added: 9 },
            Exchange { removed: 9, added: 8 },
        ];
        assert_eq!(tiebreak_closest(&ties).unwrap().pair(), (8, 9));
        assert_eq!(tiebreak_closest(&ties[..1]).unwrap(), ties[0]);
        assert_eq!(tiebreak_closest(&[]), Err(GenError::EmptyTie));
    }

    #[test]
    fn fan_listing_is_complete_and_paf() {
        let (g, order) = named::fan(5);
        let e = build_embedding(&g, &order).unwrap();
        let l = EdgeLabeling::identity(7);
        let lg = LabeledGraph::new(&g, &l);
        let t = SpanningTree::from_labels(&lg, &[1, 2, 5, 6]).unwrap();
        let listing = Generator::new(&g, &l, TieBreak::Closest)
            .with_embedding(&e)
            .run(&t)
            .unwrap();
        assert_eq!(listing.len(), 21);
        assert!(listing.all_steps(ClassFilter::Paf));
        assert_eq!(listing.steps[0].0.pair(), (2, 3));
    }

    #[test]
    fn small_graphs_every_initial() {
        for (g, m) in [
            (named::triangle().0, 3),
            (named::diamond().0, 5),
            (named::parallel(3).0, 3),
        ] {
            let l = EdgeLabeling::identity(m);
            let lg = LabeledGraph::new(&g, &l);
            let all = crate::flipgraph::enumerate_spanning_trees(&g).unwrap();
            for t in &all {
                let t = lg.tree_from_edge_ids(t).unwrap();
                for tb in [TieBreak::Closest, TieBreak::Farthest, TieBreak::Random { seed: 7 }] {
                    let listing = algorithm_g(&g, &l, &t, tb).unwrap();
                    assert_eq!(listing.len(), all.len());
                }
            }
        }
    }

    #[test]
    fn rejects_non_tree() {
        let (g, _) = named::triangle();
        let l = EdgeLabeling::identity(3);
        let bad = SpanningTree::from_bits_unchecked(BitSet::from_positions(3, [0, 1, 2]));
        assert_eq!(
            algorithm_g(&g, &l, &bad, TieBreak::Closest).unwrap_err(),
            GenError::NotSpanningTree
        );
    }

    #[test]
    fn prefer_face_needs_embedding() {
        let (g, _) = named::triangle();
        let l = EdgeLabeling::identity(3);
        let lg = LabeledGraph::new(&g, &l);
        let t = SpanningTree::first(&lg).unwrap();
        let err = algorithm_g(&g, &l, &t, TieBreak::Prefer(ClassFilter::Pof)).unwrap_err();
        assert!(matches!(err, GenError::NeedsEmbedding { .. }));
    }

    #[test]
    fn tiebreak_names_parse() {
        for s in ["closest", "farthest", "random:42", "prefer-pivot", "prefer-pof"] {
            assert_eq!(s.parse::<TieBreak>().unwrap().name(), s);
        }
        assert!("random:x".parse::<TieBreak>().is_err());
        assert!("nearest".parse::<TieBreak>().is_err());
    }
}
