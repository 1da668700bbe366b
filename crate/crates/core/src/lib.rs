//! Similarity-based link prediction on undirected simple graphs, with
//! degree-preserving rewiring to control the averaged clustering coefficient.
//!
//! The pipeline is: build or generate a [`Graph`], optionally raise its
//! clustering with [`rewire::rewire_to_target`], split its edges into
//! train/test sets, score candidate pairs on the training graph with one of
//! the [`PredictorSpec`] indices, and evaluate precision on the held-out
//! edges.
//!
//! Data-parallel kernels use rayon when the `parallel` feature is enabled
//! (the default) and fall back to plain iterators otherwise. Results are
//! identical either way.

pub mod error;
pub mod eval;
pub mod experiment;
pub mod graph;
pub mod ingest;
mod par;
pub mod predict;
pub mod rewire;
pub mod seed;

pub use error::{Error, Result};
pub use graph::{graph_stats, local_clustering, triangle_count, Graph, GraphStats, NodeId};
pub use par::backend;
pub use predict::{score_all, PredictorSpec, ScoreTable, ScoredPair};
