//! Relational edge sets and the nested snapshot sequence `G_0 ⊆ G_1 ⊆ … ⊆ G_L`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rewire::RewireConfig;

/// Edges added at one snapshot level, stored per source node.
///
/// A record `v -> u` at level `l` means `u` was selected from the orbit of
/// `v` at distance `l + 1`. The relation is directed; [`symmetrized`]
/// gives the undirected view used for metrics.
///
/// [`symmetrized`]: RelationalEdgeSet::symmetrized
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationalEdgeSet {
    level: usize,
    targets: Vec<Vec<u32>>,
}

impl RelationalEdgeSet {
    /// `targets[v]` lists the nodes selected by `v`; lists are sorted and
    /// must not contain `v` or duplicates.
    pub fn new(level: usize, mut targets: Vec<Vec<u32>>) -> Result<Self> {
        if level == 0 {
            return Err(Error::Snapshot("relational levels start at 1".into()));
        }
        let n = targets.len();
        for (v, list) in targets.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Snapshot(format!(
                    "duplicate target for source {v} at level {level}"
                )));
            }
            if let Some(&bad) = list.iter().find(|&&u| u as usize >= n || u as usize == v) {
                return Err(Error::Snapshot(format!(
                    "invalid target {bad} for source {v} at level {level}"
                )));
            }
        }
        Ok(RelationalEdgeSet { level, targets })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn node_count(&self) -> usize {
        self.targets.len()
    }

    pub fn targets(&self, v: usize) -> &[u32] {
        &self.targets[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.targets[v].len()
    }

    pub fn directed_count(&self) -> usize {
        self.targets.iter().map(Vec::len).sum()
    }

    /// `(source, target)` records in source order.
    pub fn directed_records(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.targets
            .iter()
            .enumerate()
            .flat_map(|(v, ts)| ts.iter().map(move |&u| (v, u as usize)))
    }

    /// Undirected pairs `(a, b)` with `a < b`, sorted and deduplicated.
    pub fn symmetrized(&self) -> Vec<(usize, usize)> {
        let set: BTreeSet<(usize, usize)> = self
            .directed_records()
            .map(|(v, u)| (v.min(u), v.max(u)))
            .collect();
        set.into_iter().collect()
    }

    pub fn undirected_count(&self) -> usize {
        self.symmetrized().len()
    }
}

/// Base graph plus the relational edge sets of levels `1..=L`.
#[derive(Clone, Debug, PartialEq)]
pub struct SnapshotSequence {
    base: Graph,
    levels: Vec<RelationalEdgeSet>,
    config: RewireConfig,
}

impl SnapshotSequence {
    pub fn new(base: Graph, levels: Vec<RelationalEdgeSet>, config: RewireConfig) -> Result<Self> {
        for (i, set) in levels.iter().enumerate() {
            if set.level() != i + 1 {
                return Err(Error::Snapshot(format!(
                    "level {} found at position {}",
                    set.level(),
                    i + 1
                )));
            }
            if set.node_count() != base.node_count() {
                return Err(Error::DimensionMismatch(
                    set.node_count(),
                    base.node_count(),
                ));
            }
        }
        Ok(SnapshotSequence {
            base,
            levels,
            config,
        })
    }

    /// Sequence with no relational levels; message passing reduces to the
    /// base graph.
    pub fn identity(base: Graph, config: RewireConfig) -> Self {
        SnapshotSequence {
            base,
            levels: Vec::new(),
            config,
        }
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn levels(&self) -> &[RelationalEdgeSet] {
        &self.levels
    }

    /// Relational edge set of level `l` (1-based).
    pub fn level(&self, l: usize) -> Option<&RelationalEdgeSet> {
        l.checked_sub(1).and_then(|i| self.levels.get(i))
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn config(&self) -> &RewireConfig {
        &self.config
    }

    /// Undirected snapshot `G_l`: base edges plus symmetrized additions of
    /// levels `1..=l`.
    pub fn flatten(&self, up_to: usize) -> Result<Graph> {
        if up_to > self.levels.len() {
            return Err(Error::InvalidParameter(format!(
                "level {up_to} exceeds the {} available",
                self.levels.len()
            )));
        }
        self.base.with_added_edges(
            self.levels[..up_to]
                .iter()
                .flat_map(|set| set.directed_records()),
        )
    }

    /// Undirected edges first added at each level, counting an edge once even
    /// when both endpoints selected each other.
    pub fn undirected_added_per_level(&self) -> Vec<usize> {
        self.levels.iter().map(|s| s.undirected_count()).collect()
    }
}

/// Free-function form of [`SnapshotSequence::flatten`].
pub fn flatten_snapshots(seq: &SnapshotSequence, up_to: usize) -> Result<Graph> {
    seq.flatten(up_to)
}
