//! Proper conflict-free colorings of planar graphs with maximum degree 4.
//!
//! A coloring is *h-PCF* when it is proper and every vertex `v` sees at
//! least `min(h, d(v))` colors exactly once in its neighborhood. The crate
//! provides a verifier, a reduction-based solver producing 2-PCF colorings
//! with at most nine colors, an exact backtracking oracle for small graphs,
//! a discharging auditor for plane embeddings, and a seeded generator of
//! planar test graphs.

pub mod discharging;
pub mod generator;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod pcf;
pub mod reduction;

pub use graph::{Color, Coloring, Embedding, Graph, GraphError};
pub use pcf::{is_h_pcf, PcfReport};
pub use reduction::{solve, Solution};
