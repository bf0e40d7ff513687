//! Backtracking Hamilton path and cycle search.
//!
//! Paths are found as cycles through an extra vertex joined to the allowed
//! endpoints. The search keeps, for every unvisited node, the number of
//! neighbors still usable as cycle neighbors; a node with fewer than two
//! prunes the branch, and a neighbor of the path end with exactly two forces
//! the next move. The unvisited nodes must stay connected to the path end.
//!
//! The budget is spent over restarts with growing step limits, each trying
//! candidates in a different seeded order among equal counts. Every attempt
//! is exhaustive within its limit, so one that finishes early proves there
//! is no solution.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::FlipGraph;

/// Search limits. `steps` counts node extensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub steps: u64,
    pub time: Option<Duration>,
}

impl Budget {
    pub fn steps(steps: u64) -> Self {
        Budget { steps, time: None }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::steps(10_000_000)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HamiltonOutcome {
    Found(Vec<usize>),
    /// The search finished without finding one.
    None,
    /// The budget ran out first.
    Unknown,
}

impl HamiltonOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, HamiltonOutcome::Found(_))
    }
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    start: usize,
    visited: Vec<bool>,
    avail: Vec<usize>,
    path: Vec<usize>,
    queue: Vec<usize>,
    rank: Vec<usize>,
    mark: Vec<u32>,
    stamp: u32,
    steps: u64,
    limit: u64,
    time: Option<Duration>,
    began: Instant,
    exhausted: bool,
}

impl Search<'_> {
    fn out_of_budget(&mut self) -> bool {
        self.steps += 1;
        if self.steps > self.limit {
            self.exhausted = true;
        }
        if let Some(t) = self.time {
            if self.steps.is_multiple_of(1024) && self.began.elapsed() > t {
                self.exhausted = true;
            }
        }
        self.exhausted
    }

    /// Whether every unvisited node is reachable from `end` through
    /// unvisited nodes.
    fn connected_rest(&mut self, end: usize, remaining: usize) -> bool {
        if remaining == 0 {
            return true;
        }
        self.stamp += 1;
        self.queue.clear();
        self.queue.push(end);
        let mut reached = 0;
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            for &w in &self.adj[u] {
                if !self.visited[w] && self.mark[w] != self.stamp {
                    self.mark[w] = self.stamp;
                    reached += 1;
                    self.queue.push(w);
                }
            }
        }
        reached == remaining
    }

    fn extend(&mut self, remaining: usize) -> bool {
        let end = *self.path.last().unwrap();
        if remaining == 0 {
            return self.adj[end].contains(&self.start);
        }
        if self.out_of_budget() || !self.connected_rest(end, remaining) {
            return false;
        }
        let mut forced = None;
        for &w in &self.adj[end] {
            if end != self.start && !self.visited[w] && self.avail[w] == 2 && remaining > 1 {
                if forced.is_some_and(|f| f != w) {
                    return false;
                }
                forced = Some(w);
            }
        }
        let mut cands: Vec<usize> = match forced {
            Some(w) => vec![w],
            None => self.adj[end].iter().copied().filter(|&w| !self.visited[w]).collect(),
        };
        cands.sort_unstable_by_key(|&w| (self.avail[w], self.rank[w]));
        cands.dedup();
        for w in cands {
            if self.advance(end, w, remaining) {
                return true;
            }
            if self.exhausted {
                return false;
            }
        }
        false
    }

    /// Moves the path end from `end` to `w`.
    fn advance(&mut self, end: usize, w: usize, remaining: usize) -> bool {
        let interior = end != self.start;
        let mut ok = true;
        if interior {
            for &x in &self.adj[end] {
                if !self.visited[x] {
                    self.avail[x] -= 1;
                    if x != w && self.avail[x] < 2 {
                        ok = false;
                    }
                }
            }
        }
        self.visited[w] = true;
        self.path.push(w);
        let found = ok && self.extend(remaining - 1);
        if !found {
            self.path.pop();
            self.visited[w] = false;
            if interior {
                for &x in &self.adj[end] {
                    if !self.visited[x] {
                        self.avail[x] += 1;
                    }
                }
            }
        }
        found
    }
}

/// Searches for a Hamilton cycle (`cycle`) or path of `fg`. `endpoints`
/// optionally fixes the first and the last node of a path. Certificates are
/// re-checked edge by edge before being returned.
pub fn hamilton_path(
    fg: &FlipGraph,
    cycle: bool,
    endpoints: Option<(usize, Option<usize>)>,
    budget: Budget,
) -> HamiltonOutcome {
    let n = fg.node_count();
    if n == 0 {
        return HamiltonOutcome::None;
    }
    if n == 1 {
        return HamiltonOutcome::Found(vec![0]);
    }
    if n == 2 && (cycle || endpoints.is_none()) {
        let seq: Vec<usize> = (0..n).collect();
        return if is_hamilton(fg, &seq, false) {
            HamiltonOutcome::Found(seq)
        } else {
            HamiltonOutcome::None
        };
    }
    let mut adj: Vec<Vec<usize>> = (0..n).map(|v| fg.neighbors(v).to_vec()).collect();
    let start = if cycle {
        0
    } else {
        // extra node closing paths into cycles
        let ends: Vec<usize> = match endpoints {
            Some((s, Some(t))) => vec![s, t],
            Some((s, None)) => (0..n).filter(|&v| v != s).chain([s]).collect(),
            None => (0..n).collect(),
        };
        for &v in &ends {
            adj[v].push(n);
        }
        adj.push(ends);
        n
    };
    let total = adj.len();
    let avail: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    if (0..total).any(|v| avail[v] < 2) {
        return HamiltonOutcome::None;
    }
    let began = Instant::now();
    let mut spent = 0u64;
    let mut limit = FIRST_ATTEMPT_STEPS;
    for attempt in 0u64.. {
        let last = spent + 2 * limit > budget.steps;
        let this = if last { budget.steps - spent } else { limit };
        let mut rank: Vec<usize> = (0..total).collect();
        if attempt > 0 {
            rank.shuffle(&mut ChaCha8Rng::seed_from_u64(attempt));
        }
        let mut visited = vec![false; total];
        visited[start] = true;
        let mut s = Search {
            adj: &adj,
            start,
            visited,
            avail: avail.clone(),
            path: vec![start],
            queue: Vec::with_capacity(total),
            rank,
            mark: vec![0; total],
            stamp: 0,
            steps: 0,
            limit: this,
            time: budget.time.map(|t| t.saturating_sub(began.elapsed())),
            began: Instant::now(),
            exhausted: false,
        };
        // with fixed endpoints the first move is forced to the requested start
        let found = match endpoints {
            Some((first, _)) if !cycle => s.advance(start, first, total - 1),
            _ => s.extend(total - 1),
        };
        if found {
            return certify(fg, s.path, cycle, endpoints);
        }
        if !s.exhausted {
            return HamiltonOutcome::None;
        }
        spent += s.steps.min(this);
        let timed_out = budget.time.is_some_and(|t| began.elapsed() > t);
        if last || timed_out {
            break;
        }
        limit *= 2;
    }
    HamiltonOutcome::Unknown
}

const FIRST_ATTEMPT_STEPS: u64 = 10_000;

fn certify(
    fg: &FlipGraph,
    path: Vec<usize>,
    cycle: bool,
    endpoints: Option<(usize, Option<usize>)>,
) -> HamiltonOutcome {
    let mut seq = path;
    if !cycle {
        seq.remove(0);
    }
    assert!(is_hamilton(fg, &seq, cycle), "search produced an invalid certificate");
    if let Some((first, last)) = endpoints {
        assert!(cycle || seq[0] == first);
        assert!(cycle || last.is_none_or(|t| *seq.last().unwrap() == t));
    }
    HamiltonOutcome::Found(seq)
}

/// Whether `seq` visits every node once along flip-graph edges, closing up
/// when `cycle` is set. Cycles on at most two nodes need no closing edge.
pub fn is_hamilton(fg: &FlipGraph, seq: &[usize], cycle: bool) -> bool {
    let n = fg.node_count();
    if seq.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in seq {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    if !seq.windows(2).all(|w| fg.adjacent(w[0], w[1])) {
        return false;
    }
    !cycle || n <= 2 || fg.adjacent(seq[n - 1], seq[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitSet;
    use crate::embedgraph::{build_embedding, named};
    use crate::flipgraph::{build_flip_graph, Restriction};
    use crate::labeling::EdgeLabeling;
    use crate::treegen::ClassFilter;

    fn abstract_graph(n: usize, edges: &[(usize, usize)]) -> FlipGraph {
        let nodes = (0..n).map(|_| BitSet::new(0)).collect();
        let e = edges.iter().map(|&(a, b)| (a.min(b), a.max(b), (0, 0))).collect();
        FlipGraph::from_edges(nodes, e, Restriction::Class(ClassFilter::Any))
    }

    #[test]
    fn k5_pivot_cycle_within_default_budget() {
        let g = named::complete(5);
        let fg = build_flip_graph(&g, None, &EdgeLabeling::identity(10), ClassFilter::Pivot).unwrap();
        assert_eq!(fg.node_count(), 125);
        assert!(hamilton_path(&fg, true, None, Budget::default()).is_found());
    }

    #[test]
    fn tiny_budget_is_unknown_not_none() {
        let g = named::complete(5);
        let fg = build_flip_graph(&g, None, &EdgeLabeling::identity(10), ClassFilter::Pivot).unwrap();
        assert_eq!(
            hamilton_path(&fg, true, None, Budget::steps(3)),
            HamiltonOutcome::Unknown
        );
    }

    #[test]
    fn diamond_cycles() {
        let (g, order) = named::diamond();
        let e = build_embedding(&g, &order).unwrap();
        let l = EdgeLabeling::identity(5);
        for r in [ClassFilter::Any, ClassFilter::Pivot] {
            let fg = build_flip_graph(&g, Some(&e), &l, r).unwrap();
            assert!(hamilton_path(&fg, true, None, Budget::default()).is_found());
        }
    }

    #[test]
    fn trivial_and_impossible() {
        let one = abstract_graph(1, &[]);
        assert_eq!(
            hamilton_path(&one, false, None, Budget::default()),
            HamiltonOutcome::Found(vec![0])
        );
        // star K_{1,3}: no path, no cycle
        let star = abstract_graph(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(
            hamilton_path(&star, false, None, Budget::default()),
            HamiltonOutcome::None
        );
        assert_eq!(
            hamilton_path(&star, true, None, Budget::default()),
            HamiltonOutcome::None
        );
        // path graph: path yes, cycle no
        let p = abstract_graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(hamilton_path(&p, false, None, Budget::default()).is_found());
        assert_eq!(hamilton_path(&p, true, None, Budget::default()), HamiltonOutcome::None);
        assert_eq!(
            hamilton_path(&p, false, Some((1, None)), Budget::default()),
            HamiltonOutcome::None
        );
        assert_eq!(
            hamilton_path(&p, false, Some((3, Some(0))), Budget::default()),
            HamiltonOutcome::Found(vec![3, 2, 1, 0])
        );
    }

    #[test]
    fn petersen_has_path_but_no_cycle() {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        let g = abstract_graph(10, &e);
        assert_eq!(hamilton_path(&g, true, None, Budget::default()), HamiltonOutcome::None);
        assert!(hamilton_path(&g, false, None, Budget::default()).is_found());
        assert_eq!(
            hamilton_path(&g, true, None, Budget::steps(3)),
            HamiltonOutcome::Unknown
        );
    }

    #[test]
    fn certificates_validate() {
        let g = abstract_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert!(is_hamilton(&g, &[0, 1, 2, 3], true));
        assert!(!is_hamilton(&g, &[0, 2, 1, 3], false));
        assert!(!is_hamilton(&g, &[0, 1, 2], false));
    }
}
