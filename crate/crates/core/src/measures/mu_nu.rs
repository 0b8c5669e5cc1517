use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::traversal::{DistanceMatrix, UNREACHED};
use crate::walks::{walk_count_matrix, ConnectivityMatrix};

/// Walk length used for the connectivity measure unless configured.
pub const DEFAULT_WALK_K: u32 = 8;

/// Locality (`ν`, hop distance up to a horizon) and connectivity (`μ`, walk
/// counts) computed once on the input graph.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurePair {
    pub locality: DistanceMatrix,
    pub connectivity: ConnectivityMatrix,
    pub horizon: u32,
    pub walk_k: u32,
}

/// Fast measure computation via clipped powers of the reachability matrix.
///
/// Starting from `R_1 = clip(A + I)`, each step forms `R_r = clip(R_{r-1} (A + I))`
/// and stamps distance `r` on the entries that switch on, i.e.
/// `D += r (R_r - R_{r-1})`. Entries never switched on within `horizon`
/// steps stay [`UNREACHED`]. Connectivity is `(A + I)^walk_k`.
pub fn compute_mu_nu(g: &Graph, horizon: u32, walk_k: u32) -> Result<MeasurePair> {
    if horizon < 1 || walk_k < 1 {
        return Err(Error::InvalidParameter(format!(
            "horizon and walk length must be >= 1, got {horizon} and {walk_k}"
        )));
    }
    let n = g.node_count();
    let rows: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|v| clipped_power_row(g, v, horizon))
        .collect();
    Ok(MeasurePair {
        locality: DistanceMatrix::from_raw(n, rows.into_iter().flatten().collect()),
        connectivity: walk_count_matrix(g, walk_k),
        horizon,
        walk_k,
    })
}

/// Row `v` of the locality matrix.
fn clipped_power_row(g: &Graph, v: usize, horizon: u32) -> Vec<u32> {
    let n = g.node_count();
    let mut dist = vec![UNREACHED; n];
    let mut cur = vec![false; n];
    dist[v] = 0;
    cur[v] = true;
    for &u in g.neighbors(v) {
        dist[u as usize] = 1;
        cur[u as usize] = true;
    }
    let mut next = vec![false; n];
    for r in 2..=horizon {
        // next = clip(cur * (A + I))
        let mut changed = false;
        for u in 0..n {
            let on = cur[u] || g.neighbors(u).iter().any(|&w| cur[w as usize]);
            next[u] = on;
            if on && !cur[u] {
                dist[u] = r;
                changed = true;
            }
        }
        std::mem::swap(&mut cur, &mut next);
        if !changed {
            break;
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::traversal::distance_matrix;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn horizon_cutoff_on_path() {
        let m = compute_mu_nu(&path(6), 3, 2).unwrap();
        assert_eq!(m.locality.get(0, 3), 3);
        assert_eq!(m.locality.get(0, 4), UNREACHED);
        assert_eq!(m.locality.get(2, 2), 0);
    }

    #[test]
    fn connectivity_entry() {
        let m = compute_mu_nu(&path(3), 1, 2).unwrap();
        assert_eq!(m.connectivity.get(0, 2), 1.0);
    }

    #[test]
    fn full_horizon_matches_bfs() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (5, 6)]).unwrap();
        let m = compute_mu_nu(&g, 10, 1).unwrap();
        assert_eq!(m.locality, distance_matrix(&g, None));
    }

    #[test]
    fn rejects_zero_parameters() {
        assert!(compute_mu_nu(&path(3), 0, 8).is_err());
        assert!(compute_mu_nu(&path(3), 2, 0).is_err());
    }
}
