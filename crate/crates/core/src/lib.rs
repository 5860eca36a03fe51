//! A laboratory for edge contraction on small graphs.
//!
//! The central object is the transparency matrix, the all-pairs hop
//! distance matrix of a graph, maintained incrementally as edges are
//! contracted. Around it sit a greedy contraction procedure that drives a
//! graph toward a complete graph, exact chromatic-number and
//! Hadwiger-number oracles, and corpus sweeps that compare them.

pub mod chromatic;
pub mod cli;
pub mod contraction;
pub mod error;
pub mod graph;
pub mod lab;
pub mod minor;
pub mod transparency;

pub use error::{LabError, Result};
pub use graph::{Graph, VertexId};
pub use transparency::{Distance, TransparencyMatrix};
