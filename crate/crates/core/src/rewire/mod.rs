//! Locality-aware sequential rewiring and the spectral baseline.
//!
//! Level `l` of a rewiring connects each node `v` to a `ρ`-fraction of the
//! nodes at distance exactly `l + 1` from it in the input graph, preferring
//! the ones with the fewest walks to `v`. Distances and walk counts are
//! measured once on the input graph and reused for every level.

mod config;
mod greedy;
pub(crate) mod laser;
mod orbit;

pub use config::{RewireConfig, SelectionMode};
pub use greedy::{spectral_greedy_add, spectral_greedy_edges};
pub use laser::{
    laser_rewire, laser_rewire_via, rewire_level, MeasureRoute, OrbitTable, DENSE_NODE_LIMIT,
};
pub use orbit::{orbit_of, select_from_orbit, selection_count, Orbit, TieBreaker};
