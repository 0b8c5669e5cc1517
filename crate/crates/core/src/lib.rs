//! Locality-aware sequential graph rewiring.
//!
//! The crate builds a nested sequence of snapshots `G_0 ⊆ G_1 ⊆ … ⊆ G_L` on
//! top of an input graph. Level `l` connects every node to a fraction of the
//! nodes at distance exactly `l + 1`, choosing those that are reachable by
//! the fewest walks. Around the rewiring sit the metrics used to judge it
//! (effective resistance, spectral gap, distance-matrix deviation), graph
//! generators, a relational GCN forward pass with Jacobian instrumentation,
//! and the experiment drivers behind the `laser` command-line tool.

pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod io;
pub mod measures;
pub mod rewire;
pub mod rng;
pub mod sensitivity;
pub mod snapshot;
pub mod traversal;
pub mod walks;

pub use error::{Error, Result};
pub use generators::{generate, GeneratorSpec};
pub use graph::Graph;
pub use measures::{MeasurePair, MetricsReport};
pub use rewire::{laser_rewire, RewireConfig, SelectionMode};
pub use snapshot::{flatten_snapshots, RelationalEdgeSet, SnapshotSequence};
pub use traversal::{bfs_distances, distance_matrix, is_connected, DistanceMatrix, UNREACHED};
pub use walks::{walk_count_matrix, ConnectivityMatrix};
