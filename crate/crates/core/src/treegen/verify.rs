use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;

use super::{ClassFilter, Classifier, Exchange, ExchangeClass, Listing};
use crate::bits::BitSet;
use crate::counting::count_matrix_tree;
use crate::embedgraph::MultiGraph;
use crate::labeling::EdgeLabeling;
use crate::treegen::LabeledGraph;

/// Whether all strings sharing a suffix appear consecutively. The last
/// coordinate must read `0^a 1^b` or `1^a 0^b`, and each of the two blocks
/// must be genlex on the remaining prefix.
pub fn verify_genlex(strings: &[BitSet]) -> bool {
    let Some(first) = strings.first() else {
        return true;
    };
    let len = first.len();
    if strings.iter().any(|s| s.len() != len) {
        return false;
    }
    let mut work = vec![(0, strings.len(), len)];
    while let Some((lo, hi, k)) = work.pop() {
        if k == 0 || hi - lo <= 1 {
            continue;
        }
        let c = k - 1;
        let head = strings[lo].contains(c);
        let split = (lo..hi).find(|&i| strings[i].contains(c) != head).unwrap_or(hi);
        if (split..hi).any(|i| strings[i].contains(c) == head) {
            return false;
        }
        work.push((lo, split, c));
        work.push((split, hi, c));
    }
    true
}

/// Reference check: for every suffix length, the positions holding each
/// suffix form one contiguous run.
pub fn verify_genlex_brute_force(strings: &[BitSet]) -> bool {
    let Some(first) = strings.first() else {
        return true;
    };
    let len = first.len();
    for s in 1..=len {
        let mut last_seen: HashMap<Vec<bool>, usize> = HashMap::new();
        for (i, x) in strings.iter().enumerate() {
            let suffix: Vec<bool> = (len - s..len).map(|p| x.contains(p)).collect();
            if let Some(&j) = last_seen.get(&suffix) {
                if j + 1 != i {
                    return false;
                }
            }
            last_seen.insert(suffix, i);
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrayViolation {
    NotSpanning {
        index: usize,
    },
    Repeat {
        index: usize,
        first: usize,
    },
    Distance {
        index: usize,
        distance: usize,
    },
    StepMismatch {
        index: usize,
        recorded: Exchange,
    },
    Class {
        index: usize,
        exchange: Exchange,
        class: ExchangeClass,
    },
    Incomplete {
        found: usize,
        expected: BigUint,
    },
    NotGenlex,
}

impl fmt::Display for GrayViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrayViolation::NotSpanning { index } => write!(f, "tree {index} is not a spanning tree"),
            GrayViolation::Repeat { index, first } => write!(f, "tree {index} repeats tree {first}"),
            GrayViolation::Distance { index, distance } => {
                write!(f, "trees {} and {index} are at distance {distance}", index - 1)
            }
            GrayViolation::StepMismatch { index, recorded } => {
                write!(f, "step into tree {index} is recorded as {recorded} but differs")
            }
            GrayViolation::Class { index, exchange, class } => {
                write!(
                    f,
                    "step into tree {index} ({exchange} {class}) is outside the required class"
                )
            }
            GrayViolation::Incomplete { found, expected } => {
                write!(f, "listing has {found} trees, the graph has {expected}")
            }
            GrayViolation::NotGenlex => f.write_str("listing is not genlex"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayReport {
    pub trees: usize,
    pub genlex: bool,
    /// Whether the count was compared against an independent count.
    pub completeness_checked: bool,
    pub violation: Option<GrayViolation>,
}

impl GrayReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks a listing as a Gray code in the required class. With a graph the
/// trees are checked to be spanning, the classes are recomputed and the
/// length is compared to the matrix-tree count; without one the recorded
/// classes are trusted. Genlex failure counts as a violation only when
/// `require_genlex` is set. Reports the first violation.
pub fn verify_gray(
    listing: &Listing,
    required: ClassFilter,
    graph: Option<(&MultiGraph, &Classifier)>,
    require_genlex: bool,
) -> GrayReport {
    let bits = listing.bits();
    let genlex = verify_genlex(&bits);
    let mut report = GrayReport {
        trees: bits.len(),
        genlex,
        completeness_checked: graph.is_some(),
        violation: None,
    };
    report.violation = first_violation(listing, &bits, required, graph, &listing.labeling);
    if report.violation.is_none() && require_genlex && !genlex {
        report.violation = Some(GrayViolation::NotGenlex);
    }
    report
}

fn first_violation(
    listing: &Listing,
    bits: &[BitSet],
    required: ClassFilter,
    graph: Option<(&MultiGraph, &Classifier)>,
    labeling: &EdgeLabeling,
) -> Option<GrayViolation> {
    let lg = graph.map(|(g, _)| LabeledGraph::new(g, labeling));
    let mut seen: HashMap<&BitSet, usize> = HashMap::new();
    for (i, t) in bits.iter().enumerate() {
        if let Some(lg) = &lg {
            if !crate::spanning::is_spanning_tree(&lg.graph, t) {
                return Some(GrayViolation::NotSpanning { index: i });
            }
        }
        if let Some(&first) = seen.get(t) {
            return Some(GrayViolation::Repeat { index: i, first });
        }
        seen.insert(t, i);
        if i == 0 {
            continue;
        }
        let diff = bits[i - 1].symmetric_difference(t);
        if diff.len() != 2 {
            return Some(GrayViolation::Distance {
                index: i,
                distance: diff.len(),
            });
        }
        let (ex, recorded_class) = listing.steps[i - 1];
        let removed_ok = ex.removed >= 1 && ex.removed <= t.len() && bits[i - 1].contains(ex.removed - 1);
        let added_ok = ex.added >= 1 && ex.added <= t.len() && t.contains(ex.added - 1);
        if !removed_ok || !added_ok || !diff.contains(&(ex.removed - 1)) || !diff.contains(&(ex.added - 1)) {
            return Some(GrayViolation::StepMismatch { index: i, recorded: ex });
        }
        let class = match graph {
            Some((_, c)) => c.classify(ex),
            None => recorded_class,
        };
        if !required.admits(class) {
            return Some(GrayViolation::Class {
                index: i,
                exchange: ex,
                class,
            });
        }
    }
    if let Some((g, _)) = graph {
        let expected = count_matrix_tree(g);
        if BigUint::from(bits.len()) != expected {
            return Some(GrayViolation::Incomplete {
                found: bits.len(),
                expected,
            });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn strs(v: &[&str]) -> Vec<BitSet> {
        v.iter().map(|s| BitSet::parse_bits(s).unwrap()).collect()
    }

    #[test]
    fn genlex_examples() {
        assert!(verify_genlex(&strs(&["00", "10", "01", "11"])));
        assert!(!verify_genlex(&strs(&["00", "01", "10", "11"])));
        assert!(verify_genlex(&[]));
        assert!(verify_genlex(&strs(&["101"])));
    }

    proptest! {
        #[test]
        fn genlex_matches_brute_force(
            len in 1usize..6,
            raw in prop::collection::vec(any::<u8>(), 0..64),
        ) {
            let strings: Vec<BitSet> = raw
                .iter()
                .map(|&x| BitSet::from_positions(len, (0..len).filter(|&p| x >> p & 1 == 1)))
                .collect();
            prop_assert_eq!(verify_genlex(&strings), verify_genlex_brute_force(&strings));
        }

        #[test]
        fn sorted_by_reversed_string_is_genlex(
            len in 1usize..7,
            raw in prop::collection::btree_set(any::<u8>(), 0..64),
        ) {
            let mask = (1u16 << len) - 1;
            let mut vals: Vec<u16> = raw.iter().map(|&x| x as u16 & mask).collect();
            vals.sort_unstable_by_key(|&x| (0..len).rev().map(|p| x >> p & 1).collect::<Vec<_>>());
            vals.dedup();
            let strings: Vec<BitSet> = vals
                .iter()
                .map(|&x| BitSet::from_positions(len, (0..len).filter(|&p| x >> p & 1 == 1)))
                .collect();
            prop_assert!(verify_genlex(&strings));
        }
    }
}
