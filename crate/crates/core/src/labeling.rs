//! Edge labelings: bijections from edge ids onto `1..=m`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabelingError {
    #[error("label {label} of edge {edge} is outside 1..={m}")]
    OutOfRange { edge: usize, label: usize, m: usize },
    #[error("label {0} is used twice")]
    Duplicate(usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeLabeling {
    label: Vec<usize>,
    edge: Vec<usize>,
}

impl EdgeLabeling {
    /// `labels[e]` is the label of edge `e`.
    pub fn new(labels: Vec<usize>) -> Result<Self, LabelingError> {
        let m = labels.len();
        let mut edge = vec![usize::MAX; m];
        for (e, &l) in labels.iter().enumerate() {
            if l == 0 || l > m {
                return Err(LabelingError::OutOfRange { edge: e, label: l, m });
            }
            if edge[l - 1] != usize::MAX {
                return Err(LabelingError::Duplicate(l));
            }
            edge[l - 1] = e;
        }
        Ok(EdgeLabeling { label: labels, edge })
    }

    /// Labels edges in the given order: `order[k]` receives label `k + 1`.
    pub fn from_order(order: &[usize]) -> Result<Self, LabelingError> {
        let m = order.len();
        let mut labels = vec![0; m];
        for (k, &e) in order.iter().enumerate() {
            if e >= m {
                return Err(LabelingError::OutOfRange {
                    edge: e,
                    label: k + 1,
                    m,
                });
            }
            if labels[e] != 0 {
                return Err(LabelingError::Duplicate(labels[e]));
            }
            labels[e] = k + 1;
        }
        Self::new(labels)
    }

    pub fn identity(m: usize) -> Self {
        EdgeLabeling {
            label: (1..=m).collect(),
            edge: (0..m).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(rng);
        Self::from_order(&order).expect("a permutation is a valid order")
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.label.len()
    }

    #[inline]
    pub fn label(&self, edge: usize) -> usize {
        self.label[edge]
    }

    #[inline]
    pub fn edge(&self, label: usize) -> usize {
        self.edge[label - 1]
    }

    pub fn labels(&self) -> &[usize] {
        &self.label
    }

    /// Swaps the labels of two edges.
    pub fn swapped(&self, a: usize, b: usize) -> Self {
        let mut labels = self.label.clone();
        labels.swap(a, b);
        Self::new(labels).unwrap()
    }
}

impl fmt::Debug for EdgeLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeLabeling{:?}", self.label)
    }
}
