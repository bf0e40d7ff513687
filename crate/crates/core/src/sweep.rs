//! Sweeps over families of graphs. With the `parallel` feature graphs are
//! processed on the rayon pool; without it, in order on the calling thread.
//! Results always come back in input order.

use crate::bits::BitSet;
use crate::counting::OuterplaneGraph;
use crate::dualtree::{
    alternative_pof_exchange, check_lemma_labels, check_lemma_neighbors, labeling_for_root, split_dual,
};
use crate::embedgraph::TriangulationMode;
use crate::flipgraph::enumerate_spanning_trees;
use crate::treegen::{verify_gray, ClassFilter, Classifier, Generator, LabeledGraph, TieBreak};

/// Maps `f` over `items`, in parallel when the feature is enabled.
#[cfg(feature = "parallel")]
pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    seq_map(items, f)
}

/// Maps `f` over `items` on the calling thread.
pub fn seq_map<T, R, F: Fn(&T) -> R>(items: &[T], f: F) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Totals from a sweep, with a description of each violation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepStats {
    pub graphs: usize,
    pub runs: usize,
    pub checks: usize,
    pub violations: Vec<String>,
}

impl SweepStats {
    fn merge(mut self, other: SweepStats) -> SweepStats {
        self.graphs += other.graphs;
        self.runs += other.runs;
        self.checks += other.checks;
        self.violations.extend(other.violations);
        self
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn combine(parts: Vec<SweepStats>) -> SweepStats {
    parts.into_iter().fold(SweepStats::default(), SweepStats::merge)
}

/// Runs the greedy generator preferring `class` from every split-dual root
/// and every initial tree of one graph, checking each listing for
/// completeness, genlex order and class membership of every step.
pub fn gray_code_runs(og: &OuterplaneGraph, class: ClassFilter) -> SweepStats {
    let e = og.embedding();
    let g = e.graph();
    let mut stats = SweepStats {
        graphs: 1,
        ..Default::default()
    };
    let trees = enumerate_spanning_trees(g).expect("sweep graphs are small");
    let leaves = split_dual(&e).expect("sweep graphs are 2-connected").leaf_count();
    for root in 0..leaves {
        let (_, labeling) = labeling_for_root(&e, root).expect("valid leaf");
        let lg = LabeledGraph::new(g, &labeling);
        let classifier = Classifier::from_embedding(&e, &labeling);
        for t in &trees {
            stats.runs += 1;
            let initial = lg.tree_from_edge_ids(t).expect("enumerated trees are spanning");
            let run = Generator::new(g, &labeling, TieBreak::Prefer(class))
                .with_embedding(&e)
                .run(&initial);
            match run {
                Err(err) => stats.violations.push(format!(
                    "{} root={root} initial={initial}: {err}",
                    g.to_text(None).trim()
                )),
                Ok(listing) => {
                    stats.checks += listing.len();
                    let report = verify_gray(&listing, class, Some((g, &classifier)), true);
                    if let Some(v) = report.violation {
                        stats
                            .violations
                            .push(format!("{} root={root} initial={initial}: {v}", g.to_text(None).trim()));
                    }
                }
            }
        }
    }
    stats
}

/// [`gray_code_runs`] over many graphs, in parallel when enabled.
pub fn gray_code_sweep(graphs: &[OuterplaneGraph], class: ClassFilter) -> SweepStats {
    combine(par_map(graphs, |og| gray_code_runs(og, class)))
}

/// [`gray_code_runs`] over many graphs on the calling thread.
pub fn gray_code_sweep_sequential(graphs: &[OuterplaneGraph], class: ClassFilter) -> SweepStats {
    combine(seq_map(graphs, |og| gray_code_runs(og, class)))
}

/// Checks the label-order conditions for every root of one graph and, when
/// `exchanges` is set, that every valid exchange of every tree has a pivot
/// or face alternative with a smaller partner (a pivot one on
/// triangulations).
pub fn lemma_runs(og: &OuterplaneGraph, exchanges: bool) -> SweepStats {
    let e = og.embedding();
    let g = e.graph();
    let name = g.to_text(None);
    let mut stats = SweepStats {
        graphs: 1,
        ..Default::default()
    };
    let triangulation = e.is_triangulation(TriangulationMode::Multigraph);
    let trees = if exchanges {
        enumerate_spanning_trees(g).expect("sweep graphs are small")
    } else {
        Vec::new()
    };
    let leaves = split_dual(&e).expect("sweep graphs are 2-connected").leaf_count();
    for root in 0..leaves {
        stats.runs += 1;
        let (o, labeling) = labeling_for_root(&e, root).expect("valid leaf");
        for report in [
            check_lemma_labels(&e, &o, &labeling),
            check_lemma_neighbors(&e, &o, &labeling),
        ] {
            stats.checks += report.checked;
            for v in report.violations {
                stats.violations.push(format!("{} root={root}: {v}", name.trim()));
            }
        }
        let lg = LabeledGraph::new(g, &labeling);
        let classifier = Classifier::from_embedding(&e, &labeling);
        let mut buf = Vec::new();
        for t in &trees {
            let tree = lg.tree_from_edge_ids(t).expect("enumerated trees are spanning");
            buf.clear();
            lg.exchanges_into(&tree, &mut buf);
            for &ex in &buf {
                stats.checks += 1;
                let fail = |why: String| format!("{} root={root} tree={tree} {ex}: {why}", name.trim());
                let alt = match alternative_pof_exchange(&e, &o, &labeling, tree.bits(), ex) {
                    Ok(alt) => alt,
                    Err(err) => {
                        stats.violations.push(fail(err.to_string()));
                        continue;
                    }
                };
                let class = classifier.classify(alt);
                let next: BitSet = tree.apply(alt).into_bits();
                let ok = alt.larger() == ex.larger()
                    && alt.smaller() < alt.larger()
                    && tree.contains_label(alt.removed)
                    && !tree.contains_label(alt.added)
                    && crate::spanning::is_spanning_tree(&lg.graph, &next)
                    && class.pof()
                    && (!triangulation || class.pivot);
                if !ok {
                    stats
                        .violations
                        .push(fail(format!("alternative {alt} {class} rejected")));
                }
            }
        }
    }
    stats
}

/// [`lemma_runs`] over many graphs, in parallel when enabled.
pub fn lemma_sweep(graphs: &[OuterplaneGraph], exchanges: bool) -> SweepStats {
    combine(par_map(graphs, |og| lemma_runs(og, exchanges)))
}
