//! Monotone paths, polygon flips and the flip graph.

mod graph;
mod nu;
mod paths;
mod subset;

pub use graph::{build_flip_graph, check_distance_bound, verify_flip_walk, DistanceBoundReport, FlipEdge, FlipGraph, EXHAUSTIVE_LIMIT, SAMPLE_PAIRS};
pub use nu::{nu, positions, Position};
pub use paths::{enumerate_paths, face_chains, flip_across, MonotonePath};
pub use subset::{xn_subset_model, SubsetModel, SubsetNode};
