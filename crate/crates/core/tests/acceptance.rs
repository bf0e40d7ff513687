//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use opgray::bits::BitSet;
use opgray::counting::{
    block_joins, check_fib_bound, check_fib_product, count_del_contract, count_matrix_tree, enumerate_outerplane,
    extremal_family, OuterplaneGraph, OuterplaneSpec,
};
use opgray::dualtree::labeling_for_root;
use opgray::embedgraph::{build_embedding, named, MultiGraph};
use opgray::flipgraph::{enumerate_spanning_trees, experiment_open_problems, Budget, Experiment, Outcome, Scope};
use opgray::labeling::EdgeLabeling;
use opgray::spanning::is_spanning_tree;
use opgray::sweep::{gray_code_sweep, lemma_sweep, par_map};
use opgray::treegen::{
    tiebreak_closest, valid_exchanges, verify_gray, ClassFilter, Classifier, Exchange, Generator, LabeledGraph,
    SpanningTree, TieBreak,
};

const FAN_TIME_LIMIT: Duration = Duration::from_secs(1);
const SWEEP_TIME_TARGET: Duration = Duration::from_secs(600);
const MAX_SWEEP_EDGES: usize = 9;
const MAX_COUNT_EDGES: usize = 10;
const MAX_EXCHANGE_EDGES: usize = 8;
const RANDOM_TRIPLES: usize = 1000;
const FIB_PRODUCT_MAX: usize = 30;
const MIN_TREES_PER_SECOND: f64 = 1e4;
const THROUGHPUT_EDGES: usize = 50;
const THROUGHPUT_TREES: usize = 200_000;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn sweep_graphs(max_edges: usize, spec: fn(usize) -> OuterplaneSpec) -> Vec<OuterplaneGraph> {
    enumerate_outerplane(spec(max_edges))
}

fn fan_regression() -> Verdict {
    let began = Instant::now();
    let path = data("fan5.txt");
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = [
        "opgray",
        "gen",
        "--input",
        path.to_str().unwrap(),
        "--tiebreak",
        "closest",
        "--restriction",
        "paf",
    ];
    let code = opgray::cli::run(args, &mut out, &mut err);
    let elapsed = began.elapsed();
    let text = String::from_utf8_lossy(&out);
    let trees = text
        .lines()
        .filter(|l| !l.is_empty() && l.bytes().all(|b| b == b'0' || b == b'1'))
        .count();
    let summary = text.lines().last().unwrap_or("");
    let pass = code == 0 && trees == 21 && summary == "# trees=21 genlex=yes class=paf:yes" && elapsed < FAN_TIME_LIMIT;
    verdict(
        pass,
        format!("exit={code} trees={trees} summary={summary:?} in {elapsed:.2?}"),
    )
}

fn fan_exchange_set() -> Verdict {
    let (g, order) = named::fan(5);
    let e = build_embedding(&g, &order).unwrap();
    let (_, labeling) = labeling_for_root(&e, 0).unwrap();
    // edge ids of the fan are in left-to-right order
    if labeling != EdgeLabeling::identity(7) {
        return verdict(
            false,
            format!("default labeling {:?} is not left-to-right", labeling.labels()),
        );
    }
    let lg = LabeledGraph::new(&g, &labeling);
    let t = SpanningTree::from_labels(&lg, &[1, 2, 5, 6]).unwrap();
    let got: BTreeSet<(usize, usize)> = valid_exchanges(&g, &labeling, &t)
        .into_iter()
        .map(Exchange::pair)
        .collect();
    let want: BTreeSet<(usize, usize)> = [(1, 3), (2, 3), (1, 4), (2, 4), (4, 5), (5, 7), (6, 7)].into();
    let ties: Vec<Exchange> = valid_exchanges(&g, &labeling, &t)
        .into_iter()
        .filter(|x| x.larger() == 4)
        .collect();
    let pick = tiebreak_closest(&ties).map(Exchange::pair);
    let pass = got == want && ties.len() == 2 && pick == Ok((2, 4));
    verdict(pass, format!("exchanges={got:?} ties={} closest={pick:?}", ties.len()))
}

fn gray_sweep(spec: fn(usize) -> OuterplaneSpec, class: ClassFilter) -> Verdict {
    let began = Instant::now();
    let graphs = sweep_graphs(MAX_SWEEP_EDGES, spec);
    let stats = gray_code_sweep(&graphs, class);
    let elapsed = began.elapsed();
    let first = stats.violations.first().cloned().unwrap_or_default();
    verdict(
        stats.passed() && elapsed < SWEEP_TIME_TARGET,
        format!(
            "graphs={} runs={} trees={} violations={} in {elapsed:.1?} {first}",
            stats.graphs,
            stats.runs,
            stats.checks,
            stats.violations.len()
        ),
    )
}

fn triangulations(m: usize) -> OuterplaneSpec {
    OuterplaneSpec::triangulations(m, true)
}

fn robustness_pool() -> Vec<MultiGraph> {
    let mg = |n, e: &[(usize, usize)]| MultiGraph::new(n, e.to_vec()).unwrap();
    let k4 = named::complete(4);
    let k5_minus = mg(
        5,
        &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4)],
    );
    let k33 = mg(
        6,
        &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
    );
    let prism = mg(
        6,
        &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
    );
    let wheel = mg(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)]);
    let k23 = mg(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
    let multi = mg(4, &[(0, 1), (0, 1), (1, 2), (1, 2), (2, 3), (3, 0), (0, 2), (3, 3)]);
    let cut = mg(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (3, 4)]);
    vec![
        named::fan(5).0,
        named::diamond().0,
        k4,
        k5_minus,
        k33,
        prism,
        wheel,
        k23,
        multi,
        cut,
    ]
}

fn robustness() -> Verdict {
    let pool = robustness_pool();
    let indexed: Vec<(usize, MultiGraph)> = pool.into_iter().enumerate().collect();
    let results = par_map(&indexed, |(i, g)| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed + *i as u64);
        let trees = enumerate_spanning_trees(g).unwrap();
        let mut failures = Vec::new();
        for _ in 0..RANDOM_TRIPLES {
            let labeling = EdgeLabeling::random(g.m(), &mut rng);
            let lg = LabeledGraph::new(g, &labeling);
            let initial = lg.tree_from_edge_ids(trees.choose(&mut rng).unwrap()).unwrap();
            let tiebreak = match rng.gen_range(0..3) {
                0 => TieBreak::Closest,
                1 => TieBreak::Farthest,
                _ => TieBreak::Random { seed: rng.gen() },
            };
            match Generator::new(g, &labeling, tiebreak).run(&initial) {
                Ok(listing) => {
                    let report = verify_gray(
                        &listing,
                        ClassFilter::Any,
                        Some((g, &Classifier::from_graph(g, &labeling))),
                        true,
                    );
                    if !report.passed() || listing.len() != trees.len() {
                        failures.push(format!("graph {i}: {:?}", report.violation));
                    }
                }
                Err(e) => failures.push(format!("graph {i}: {e}")),
            }
        }
        failures
    });
    let failures: Vec<String> = results.into_iter().flatten().collect();
    verdict(
        failures.is_empty(),
        format!(
            "{} graphs x {RANDOM_TRIPLES} triples, violations={} {}",
            indexed.len(),
            failures.len(),
            failures.first().cloned().unwrap_or_default()
        ),
    )
}

fn brute_force_count(g: &MultiGraph) -> usize {
    let n = g.n();
    let m = g.m();
    if n == 0 {
        return 0;
    }
    (0u32..1 << m)
        .filter(|mask| mask.count_ones() as usize + 1 == n)
        .filter(|&mask| is_spanning_tree(g, &BitSet::from_positions(m, (0..m).filter(|&i| mask >> i & 1 == 1))))
        .count()
}

fn counting_oracles() -> Verdict {
    let mut graphs: Vec<MultiGraph> = enumerate_outerplane(OuterplaneSpec::all(MAX_COUNT_EDGES))
        .into_iter()
        .map(|g| g.graph)
        .collect();
    let pieces = enumerate_outerplane(OuterplaneSpec::all(MAX_COUNT_EDGES - 1));
    graphs.extend(block_joins(&pieces, MAX_COUNT_EDGES).into_iter().map(|g| g.graph));
    graphs.extend(robustness_pool());
    graphs.extend((1..=MAX_COUNT_EDGES).map(|k| named::parallel(k).0));
    let results = par_map(&graphs, |g| {
        let a = count_matrix_tree(g);
        let b = count_del_contract(g);
        let c = BigUint::from(brute_force_count(g));
        (a == b && b == c)
            .then_some(())
            .ok_or_else(|| format!("{}: {a} {b} {c}", g.to_text(None).replace('\n', " ")))
    });
    let mismatches: Vec<String> = results.into_iter().filter_map(Result::err).collect();
    let known = [
        (named::diamond().0, 8u32),
        (named::fan(5).0, 21),
        (named::parallel(7).0, 7),
        (named::parallel(2).0, 2),
        (named::triangle().0, 3),
    ];
    let known_ok = known
        .iter()
        .all(|(g, t)| count_matrix_tree(g) == BigUint::from(*t) && count_del_contract(g) == BigUint::from(*t));
    verdict(
        mismatches.is_empty() && known_ok,
        format!(
            "graphs={} mismatches={} named={} {}",
            graphs.len(),
            mismatches.len(),
            if known_ok { "ok" } else { "wrong" },
            mismatches.first().cloned().unwrap_or_default()
        ),
    )
}

fn fibonacci_bound() -> Verdict {
    let graphs = enumerate_outerplane(OuterplaneSpec::all(MAX_SWEEP_EDGES));
    let pieces = enumerate_outerplane(OuterplaneSpec::all(MAX_SWEEP_EDGES - 1));
    let joins = block_joins(&pieces, MAX_SWEEP_EDGES);
    let all: Vec<&OuterplaneGraph> = graphs.iter().chain(&joins).collect();
    let reports = par_map(&all, |og| check_fib_bound(&og.embedding()));
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| !r.consistent())
        .map(|r| r.to_string())
        .collect();
    let tight = reports.iter().filter(|r| r.equality).count();
    let family_ok = (1..=6).all(|k| (0..=2).all(|d| check_fib_bound(&extremal_family(k, d).unwrap()).equality));
    let products_ok = (1..=FIB_PRODUCT_MAX).all(|i| (1..=FIB_PRODUCT_MAX).all(|j| check_fib_product(i, j)));
    verdict(
        bad.is_empty() && family_ok && products_ok,
        format!(
            "graphs={} tight={tight} violations={} family={} products(i,j<={FIB_PRODUCT_MAX})={} {}",
            all.len(),
            bad.len(),
            if family_ok { "ok" } else { "wrong" },
            if products_ok { "ok" } else { "wrong" },
            bad.first().cloned().unwrap_or_default()
        ),
    )
}

fn lemma_suite() -> Verdict {
    let graphs: Vec<OuterplaneGraph> = enumerate_outerplane(OuterplaneSpec::all(MAX_SWEEP_EDGES))
        .into_iter()
        .filter(|g| g.graph.m() >= 2)
        .collect();
    let labels = lemma_sweep(&graphs, false);
    let small: Vec<OuterplaneGraph> = graphs
        .iter()
        .filter(|g| g.graph.m() <= MAX_EXCHANGE_EDGES)
        .cloned()
        .collect();
    let exchanges = lemma_sweep(&small, true);
    let first = labels
        .violations
        .first()
        .or(exchanges.violations.first())
        .cloned()
        .unwrap_or_default();
    verdict(
        labels.passed() && exchanges.passed(),
        format!(
            "labelings={} checks={} violations={}; exchange graphs={} checks={} violations={} {first}",
            labels.runs,
            labels.checks,
            labels.violations.len(),
            exchanges.graphs,
            exchanges.checks,
            exchanges.violations.len()
        ),
    )
}

fn experiments() -> Verdict {
    let mut parts = Vec::new();
    let mut pass = true;
    for (experiment, max_n) in [
        (Experiment::Pivot, 5),
        (Experiment::Paf, 5),
        (Experiment::Arborescence, 4),
    ] {
        let report = experiment_open_problems(Scope {
            experiment,
            max_n,
            budget: Budget::default(),
        });
        let unknown = report.count(Outcome::Unknown);
        let none = report.count(Outcome::None);
        pass &= report.all_expected() && unknown == 0 && none == 0 && !report.records.is_empty();
        parts.push(format!(
            "{}<={max_n}: {} graphs cyclic={} path={} none={none} unknown={unknown}",
            experiment.name(),
            report.records.len(),
            report.count(Outcome::Cyclic),
            report.count(Outcome::Path)
        ));
    }
    verdict(pass, parts.join("; "))
}

fn throughput() -> Verdict {
    let digons = 1 - THROUGHPUT_EDGES % 2;
    let triangles = (THROUGHPUT_EDGES - digons - 1) / 2;
    let e = extremal_family(triangles, digons).unwrap();
    let g = e.graph();
    if g.m() != THROUGHPUT_EDGES {
        return verdict(false, format!("strip has {} edges", g.m()));
    }
    let (_, labeling) = labeling_for_root(&e, 0).unwrap();
    let lg = LabeledGraph::new(g, &labeling);
    let initial = SpanningTree::first(&lg).unwrap();
    let began = Instant::now();
    let listing = Generator::new(g, &labeling, TieBreak::Closest)
        .limit(THROUGHPUT_TREES)
        .run(&initial);
    let elapsed = began.elapsed().as_secs_f64();
    match listing {
        Ok(l) => {
            let rate = l.len() as f64 / elapsed;
            verdict(
                rate >= MIN_TREES_PER_SECOND && l.len() == THROUGHPUT_TREES,
                format!(
                    "m={} trees={} in {elapsed:.2}s = {rate:.0} trees/s (min {MIN_TREES_PER_SECOND:.0})",
                    g.m(),
                    l.len()
                ),
            )
        }
        Err(err) => verdict(false, err.to_string()),
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("fan regression", fan_regression),
        ("fan exchange set and closest tie-break", fan_exchange_set),
        ("pivot Gray codes on triangulations", || {
            gray_sweep(triangulations, ClassFilter::Pivot)
        }),
        ("pof Gray codes on outerplane graphs", || {
            gray_sweep(OuterplaneSpec::all, ClassFilter::Pof)
        }),
        ("greedy robustness on random triples", robustness),
        ("counting oracle equivalence", counting_oracles),
        ("Fibonacci bound and equality cases", fibonacci_bound),
        ("labeling lemmas and alternative exchanges", lemma_suite),
        ("Hamilton experiments at desk scale", experiments),
        ("greedy throughput", throughput),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let began = Instant::now();
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {} [{:.1?}]",
            if v.pass { "PASS" } else { "FAIL" },
            i + 1,
            v.detail,
            began.elapsed()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
