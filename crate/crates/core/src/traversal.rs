//! Breadth-first distances and the all-pairs distance matrix.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Distance sentinel for pairs beyond the horizon or in another component.
pub const UNREACHED: u32 = u32::MAX;

/// Shortest-walk distances from `source`, stopping at `horizon` hops when set.
pub fn bfs_distances(g: &Graph, source: usize, horizon: Option<u32>) -> Vec<u32> {
    let n = g.node_count();
    let mut dist = vec![UNREACHED; n];
    dist[source] = 0;
    let limit = horizon.unwrap_or(UNREACHED - 1);
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v];
        if d >= limit {
            continue;
        }
        for &w in g.neighbors(v) {
            let w = w as usize;
            if dist[w] == UNREACHED {
                dist[w] = d + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Number of distinct shortest paths from `source` to every node.
pub fn shortest_path_counts(g: &Graph, source: usize) -> (Vec<u32>, Vec<u64>) {
    let n = g.node_count();
    let mut dist = vec![UNREACHED; n];
    let mut count = vec![0u64; n];
    dist[source] = 0;
    count[source] = 1;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            let w = w as usize;
            if dist[w] == UNREACHED {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                count[w] = count[w].saturating_add(count[v]);
            }
        }
    }
    (dist, count)
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.node_count();
    n <= 1 || bfs_distances(g, 0, None).iter().all(|&d| d != UNREACHED)
}

/// Dense `n x n` matrix of hop distances with [`UNREACHED`] for missing pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(row.len(), n));
            }
            data.extend(row);
        }
        Ok(DistanceMatrix { n, data })
    }

    pub(crate) fn from_raw(n: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        DistanceMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_fully_finite(&self) -> bool {
        self.data.iter().all(|&d| d != UNREACHED)
    }

    /// Row-major view, [`UNREACHED`] mapped to `-1`.
    pub fn to_signed_rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|&d| if d == UNREACHED { -1 } else { d as i64 })
                    .collect()
            })
            .collect()
    }
}

/// All-pairs distances; row `v` is exactly `bfs_distances(g, v, horizon)`.
pub fn distance_matrix(g: &Graph, horizon: Option<u32>) -> DistanceMatrix {
    let n = g.node_count();
    let rows: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|v| bfs_distances(g, v, horizon))
        .collect();
    DistanceMatrix::from_raw(n, rows.into_iter().flatten().collect())
}
