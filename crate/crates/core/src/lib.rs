//! Dual-cube interconnection networks.
//!
//! The dual cube `D_n` is an `n`-regular graph on `2^{2n-1}` bit-string
//! vertices, assembled from `2^n` hypercube clusters (half of each class)
//! joined by a perfect matching of cross edges. This crate builds the
//! topology, routes internally disjoint Steiner trees for 3- and 4-vertex
//! terminal sets, constructs minimum multi-component vertex cuts, and ships
//! brute-force oracles that certify every constructed object.

pub mod compcut;
pub mod export;
pub mod graph;
pub mod label;
pub mod menger;
pub mod oracle;
pub mod sampler;
pub mod steiner;
pub mod topology;

pub use graph::{AdjacencyGraph, Graph, Subgraph};
pub use label::Label;
pub use menger::{Fan, Path};
pub use steiner::{TerminalSet, TreeSet};
pub use topology::{ClusterRef, DualCube, Hypercube};
