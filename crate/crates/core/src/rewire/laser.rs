use log::warn;
use rayon::prelude::*;

use super::config::{RewireConfig, SelectionMode};
use super::orbit::{orbit_of, select_from_orbit, Orbit, TieBreaker};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measures::{compute_mu_nu, MeasurePair};
use crate::snapshot::{RelationalEdgeSet, SnapshotSequence};
use crate::traversal::{bfs_distances, is_connected};
use crate::walks::walk_count_row;

/// Graphs up to this size use the dense measure matrices; larger graphs
/// stream one row at a time.
pub const DENSE_NODE_LIMIT: usize = 2048;

/// How the measures feeding the selection are materialized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureRoute {
    /// Dense clipped-power locality and walk-count matrices.
    Dense,
    /// Per-node BFS and walk-count rows; memory stays linear in `n` per row.
    Streaming,
    Auto,
}

/// Orbit members and their walk-count scores for every center and radius
/// `2..=max_radius`, all measured on the input graph.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitTable {
    max_radius: u32,
    // rows[v][r - 2] = (members, scores)
    rows: Vec<Vec<(Vec<usize>, Vec<f64>)>>,
}

impl OrbitTable {
    /// Reads orbits for radii `min_radius..=max_radius` out of dense measures.
    pub fn from_pair(pair: &MeasurePair, min_radius: u32, max_radius: u32) -> Result<Self> {
        if max_radius > pair.horizon {
            return Err(Error::InvalidParameter(format!(
                "radius {max_radius} exceeds measure horizon {}",
                pair.horizon
            )));
        }
        let n = pair.locality.dim();
        let rows = (0..n)
            .into_par_iter()
            .map(|v| {
                (2..=max_radius)
                    .map(|r| {
                        if r < min_radius {
                            return (Vec::new(), Vec::new());
                        }
                        let Orbit { members, .. } = orbit_of(&pair.locality, v, r);
                        let scores = members
                            .iter()
                            .map(|&u| pair.connectivity.get(v, u))
                            .collect();
                        (members, scores)
                    })
                    .collect()
            })
            .collect();
        Ok(OrbitTable { max_radius, rows })
    }

    /// Builds the table one center at a time: a BFS bounded by `max_radius`
    /// and, when `with_scores`, one row of `(A + I)^walk_k`.
    pub fn streaming(g: &Graph, max_radius: u32, walk_k: u32, with_scores: bool) -> Self {
        let rows = (0..g.node_count())
            .into_par_iter()
            .map(|v| {
                let dist = bfs_distances(g, v, Some(max_radius));
                let mut orbits: Vec<(Vec<usize>, Vec<f64>)> =
                    vec![(Vec::new(), Vec::new()); max_radius.saturating_sub(1) as usize];
                for (u, &d) in dist.iter().enumerate() {
                    if (2..=max_radius).contains(&d) {
                        orbits[(d - 2) as usize].0.push(u);
                    }
                }
                let any = orbits.iter().any(|(m, _)| !m.is_empty());
                if with_scores && any {
                    let walks = walk_count_row(g, v, walk_k);
                    for (members, scores) in &mut orbits {
                        *scores = members.iter().map(|&u| walks[u]).collect();
                    }
                } else {
                    for (members, scores) in &mut orbits {
                        *scores = vec![0.0; members.len()];
                    }
                }
                orbits
            })
            .collect();
        OrbitTable { max_radius, rows }
    }

    pub fn max_radius(&self) -> u32 {
        self.max_radius
    }

    pub fn orbit(&self, v: usize, r: u32) -> (&[usize], &[f64]) {
        let (m, s) = &self.rows[v][(r - 2) as usize];
        (m, s)
    }

    /// Selects the level `r - 1` relational edges.
    pub fn select(&self, r: u32, config: &RewireConfig) -> Result<RelationalEdgeSet> {
        if r < 2 || r > self.max_radius {
            return Err(Error::InvalidParameter(format!(
                "radius {r} outside 2..={}",
                self.max_radius
            )));
        }
        let level = (r - 1) as usize;
        let tie = TieBreaker {
            seed: config.seed,
            level,
            sigma: config.tie_sigma,
        };
        let targets = (0..self.rows.len())
            .into_par_iter()
            .map(|v| {
                let (members, scores) = self.orbit(v, r);
                let orbit = Orbit {
                    center: v,
                    radius: r,
                    members: members.to_vec(),
                };
                let uniform;
                let scores = match config.mode {
                    SelectionMode::MuGuided => scores,
                    SelectionMode::UniformRandom => {
                        uniform = vec![0.0; members.len()];
                        &uniform[..]
                    }
                };
                select_from_orbit(&orbit, scores, config.rho_density, config.min_one, &tie)
                    .into_iter()
                    .map(|u| u as u32)
                    .collect()
            })
            .collect();
        RelationalEdgeSet::new(level, targets)
    }
}

/// Relational edges at radius `r` (level `r - 1`) from measures computed on
/// the input graph.
pub fn rewire_level(
    g: &Graph,
    measures: &MeasurePair,
    r: u32,
    config: &RewireConfig,
) -> Result<RelationalEdgeSet> {
    config.validate()?;
    if measures.locality.dim() != g.node_count() {
        return Err(Error::DimensionMismatch(
            measures.locality.dim(),
            g.node_count(),
        ));
    }
    if r < 2 {
        return Err(Error::InvalidParameter(format!(
            "radius must be >= 2, got {r}"
        )));
    }
    OrbitTable::from_pair(measures, r, r)?.select(r, config)
}

/// Full snapshot sequence with levels `1..=L` at radii `2..=L + 1`.
pub fn laser_rewire(g: &Graph, config: &RewireConfig) -> Result<SnapshotSequence> {
    laser_rewire_via(g, config, MeasureRoute::Auto)
}

pub fn laser_rewire_via(
    g: &Graph,
    config: &RewireConfig,
    route: MeasureRoute,
) -> Result<SnapshotSequence> {
    config.validate()?;
    if config.is_disabled() {
        return Ok(SnapshotSequence::identity(g.clone(), config.clone()));
    }
    if !is_connected(g) {
        warn!("input graph is disconnected; orbits stay within components");
    }
    let max_radius = config.snapshots as u32 + 1;
    let table = build_table(g, config, route, max_radius)?;
    let levels = (2..=max_radius)
        .map(|r| table.select(r, config))
        .collect::<Result<Vec<_>>>()?;
    SnapshotSequence::new(g.clone(), levels, config.clone())
}

pub(crate) fn build_table(
    g: &Graph,
    config: &RewireConfig,
    route: MeasureRoute,
    max_radius: u32,
) -> Result<OrbitTable> {
    let dense = match route {
        MeasureRoute::Dense => true,
        MeasureRoute::Streaming => false,
        MeasureRoute::Auto => g.node_count() <= DENSE_NODE_LIMIT,
    };
    if dense {
        let pair = compute_mu_nu(g, max_radius, config.walk_k)?;
        OrbitTable::from_pair(&pair, 2, max_radius)
    } else {
        let with_scores = config.mode == SelectionMode::MuGuided;
        Ok(OrbitTable::streaming(
            g,
            max_radius,
            config.walk_k,
            with_scores,
        ))
    }
}
