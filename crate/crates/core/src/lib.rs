//! Gray codes for the spanning trees of outerplane (multi)graphs.
//!
//! The greedy generator in [`treegen`] lists every spanning tree of a graph so
//! that consecutive trees differ in a single edge exchange. Driven by the
//! labelings from [`dualtree`], the exchanges can always be chosen to share an
//! end vertex (triangulations) or to share an end vertex or a face (general
//! outerplane graphs). [`counting`] and [`flipgraph`] provide independent
//! brute-force oracles for all of this.

pub mod bits;
pub mod cli;
pub mod counting;
pub mod dualtree;
pub mod embedgraph;
pub mod flipgraph;
pub mod labeling;
pub mod spanning;
pub mod sweep;
pub mod treegen;
